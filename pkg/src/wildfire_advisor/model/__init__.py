"""Shared domain types, validation, and canonical serialization."""

from wildfire_advisor.model.types import (
    ALLOWED_STAGE_TRANSITIONS,
    DATASET_DISPLAY,
    DONT_KNOW,
    PERIOD_LABELS,
    PROFILE_FIELDS,
    WILDFIRE_DATASETS,
    ActionPlan,
    AgentStage,
    Dataset,
    GeoPoint,
    Period,
    PlanStep,
    PlanStepKind,
    RiskClass,
    Role,
    Season,
    StepStatus,
    Timeframe,
    Transcript,
    TranscriptEvent,
    UserProfile,
    can_transition,
    planning_ready,
    validate_profile,
)
from wildfire_advisor.model.serialize import (
    canonical_dumps,
    canonical_deserialize,
    canonical_loads,
    canonical_serialize,
    canonical_type,
)

__all__ = [
    "ALLOWED_STAGE_TRANSITIONS",
    "DATASET_DISPLAY",
    "DONT_KNOW",
    "PERIOD_LABELS",
    "PROFILE_FIELDS",
    "WILDFIRE_DATASETS",
    "ActionPlan",
    "AgentStage",
    "Dataset",
    "GeoPoint",
    "Period",
    "PlanStep",
    "PlanStepKind",
    "RiskClass",
    "Role",
    "Season",
    "StepStatus",
    "Timeframe",
    "Transcript",
    "TranscriptEvent",
    "UserProfile",
    "can_transition",
    "canonical_deserialize",
    "canonical_dumps",
    "canonical_loads",
    "canonical_serialize",
    "canonical_type",
    "planning_ready",
    "validate_profile",
]
