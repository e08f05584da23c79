"""The three specialized agents: profile intake, planning, and analysis."""

from wildfire_advisor.agents.profile import (
    Awaiting,
    ChecklistState,
    ConfirmOutcome,
    IngestOutcome,
    ProfileAgent,
    QUESTION_ORDER,
    parse_timeframe,
)
from wildfire_advisor.agents.planning import (
    DATASET_LIMITATION_MESSAGE,
    AlreadyFinalizedError,
    FeedbackOutcome,
    FinalizeOutcome,
    PlanDraft,
    PlanParseError,
    PlanningAgent,
    parse_plan_block,
)
from wildfire_advisor.agents.analyst import (
    AnalysisContext,
    AnalystAgent,
    StepOutcome,
    build_literature_query,
)

__all__ = [
    "AlreadyFinalizedError",
    "AnalysisContext",
    "AnalystAgent",
    "Awaiting",
    "ChecklistState",
    "ConfirmOutcome",
    "DATASET_LIMITATION_MESSAGE",
    "FeedbackOutcome",
    "FinalizeOutcome",
    "IngestOutcome",
    "PlanDraft",
    "PlanParseError",
    "PlanningAgent",
    "ProfileAgent",
    "QUESTION_ORDER",
    "StepOutcome",
    "build_literature_query",
    "parse_plan_block",
    "parse_timeframe",
]
