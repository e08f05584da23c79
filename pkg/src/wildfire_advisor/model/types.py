"""Core domain types shared by every stage of the consultation pipeline.

All types here are immutable values: mutation happens by constructing new
values, so they are freely shareable across sessions and threads.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from enum import Enum
from functools import total_ordering
from typing import Any, Optional

from wildfire_advisor.model.serialize import canonical_enum, canonical_type


class Season(Enum):
    """Meteorological seasons: DJF, MAM, JJA, SON."""

    WINTER = "winter"
    SPRING = "spring"
    SUMMER = "summer"
    AUTUMN = "autumn"


class Period(Enum):
    """The three projection windows carried by the fire-weather grid."""

    HISTORICAL = "historical"
    MID_CENTURY = "mid_century"
    END_CENTURY = "end_century"


PERIOD_LABELS = {
    Period.HISTORICAL: "historical (1995-2004)",
    Period.MID_CENTURY: "mid-century (2045-2054)",
    Period.END_CENTURY: "end-of-century (2085-2094)",
}


@total_ordering
class RiskClass(Enum):
    """Six fire-danger classes, totally ordered from Low to VeryExtreme."""

    LOW = "low"
    MEDIUM = "medium"
    HIGH = "high"
    VERY_HIGH = "very_high"
    EXTREME = "extreme"
    VERY_EXTREME = "very_extreme"

    @property
    def rank(self) -> int:
        return _RISK_ORDER[self]

    def __lt__(self, other: object) -> bool:
        if not isinstance(other, RiskClass):
            return NotImplemented
        return self.rank < other.rank

    @property
    def label(self) -> str:
        return _RISK_LABELS[self]


_RISK_ORDER = {
    RiskClass.LOW: 0,
    RiskClass.MEDIUM: 1,
    RiskClass.HIGH: 2,
    RiskClass.VERY_HIGH: 3,
    RiskClass.EXTREME: 4,
    RiskClass.VERY_EXTREME: 5,
}

_RISK_LABELS = {
    RiskClass.LOW: "Low",
    RiskClass.MEDIUM: "Medium",
    RiskClass.HIGH: "High",
    RiskClass.VERY_HIGH: "Very High",
    RiskClass.EXTREME: "Extreme",
    RiskClass.VERY_EXTREME: "Very Extreme",
}


class Timeframe(Enum):
    """The six timeframe ranges offered during profile collection."""

    SHORT_TERM_1_10 = "short_term_1_10"
    MEDIUM_TERM_10_30 = "medium_term_10_30"
    LONG_TERM_30_80_PLUS = "long_term_30_80_plus"
    HIST_RECENT_1_10 = "hist_recent_1_10"
    HIST_PAST_10_50 = "hist_past_10_50"
    HIST_LONG_50_PLUS = "hist_long_50_plus"

    @property
    def is_historical(self) -> bool:
        return self in (Timeframe.HIST_RECENT_1_10, Timeframe.HIST_PAST_10_50,
                        Timeframe.HIST_LONG_50_PLUS)


class Role(Enum):
    USER = "user"
    ASSISTANT = "assistant"
    SYSTEM = "system"
    TOOL = "tool"


class AgentStage(Enum):
    """Position of a session in the profile -> plan -> analysis pipeline."""

    PROFILE_COLLECTION = "profile_collection"
    PROFILE_CONFIRMATION = "profile_confirmation"
    PLANNING = "planning"
    PLAN_CONFIRMATION = "plan_confirmation"
    ANALYSIS = "analysis"
    CLOSED = "closed"


# Forward edges plus the two revision loops. Self-transitions are not
# transitions and are deliberately absent.
ALLOWED_STAGE_TRANSITIONS: frozenset[tuple[AgentStage, AgentStage]] = frozenset({
    (AgentStage.PROFILE_COLLECTION, AgentStage.PROFILE_CONFIRMATION),
    (AgentStage.PROFILE_CONFIRMATION, AgentStage.PROFILE_COLLECTION),
    (AgentStage.PROFILE_CONFIRMATION, AgentStage.PLANNING),
    (AgentStage.PLANNING, AgentStage.PLAN_CONFIRMATION),
    (AgentStage.PLAN_CONFIRMATION, AgentStage.PLANNING),
    (AgentStage.PLAN_CONFIRMATION, AgentStage.ANALYSIS),
    (AgentStage.ANALYSIS, AgentStage.CLOSED),
})


def can_transition(current: AgentStage, target: AgentStage) -> bool:
    """True iff the stage machine allows moving from current to target."""
    return (current, target) in ALLOWED_STAGE_TRANSITIONS


@canonical_type("geo_point")
@dataclass(frozen=True)
class GeoPoint:
    """A WGS84 coordinate. Out-of-range or non-finite values are rejected."""

    latitude: float
    longitude: float

    def __post_init__(self) -> None:
        lat, lon = self.latitude, self.longitude
        if not (isinstance(lat, (int, float)) and isinstance(lon, (int, float))):
            raise ValueError("coordinates must be numeric")
        if not (math.isfinite(lat) and math.isfinite(lon)):
            raise ValueError("coordinates must be finite")
        if not -90.0 <= lat <= 90.0:
            raise ValueError(f"latitude {lat} outside [-90, 90]")
        if not -180.0 <= lon <= 180.0:
            raise ValueError(f"longitude {lon} outside [-180, 180]")
        object.__setattr__(self, "latitude", float(lat))
        object.__setattr__(self, "longitude", float(lon))

    def to_payload(self) -> dict[str, float]:
        return {"latitude": self.latitude, "longitude": self.longitude}

    @classmethod
    def from_payload(cls, payload: dict[str, Any]) -> "GeoPoint":
        return cls(latitude=payload["latitude"], longitude=payload["longitude"])


DONT_KNOW = "I don't know"

PROFILE_FIELDS = ("profession", "concern", "location", "timeframe", "scope")


@canonical_type("user_profile")
@dataclass(frozen=True)
class UserProfile:
    """The five-question checklist plus the user's confirmation flag.

    ``timeframe`` is the mapped enum; ``timeframe_answer`` keeps the raw
    answer text so "I don't know" counts as answered even when no enum
    value applies.
    """

    profession: str = ""
    concern: str = ""
    location: Optional[GeoPoint] = None
    place_name: str = ""
    timeframe: Optional[Timeframe] = None
    timeframe_answer: str = ""
    scope: str = ""
    confirmed: bool = False

    def to_payload(self) -> dict[str, Any]:
        return {
            "profession": self.profession,
            "concern": self.concern,
            "location": self.location.to_payload() if self.location else None,
            "place_name": self.place_name,
            "timeframe": self.timeframe.value if self.timeframe else None,
            "timeframe_answer": self.timeframe_answer,
            "scope": self.scope,
            "confirmed": self.confirmed,
        }

    @classmethod
    def from_payload(cls, payload: dict[str, Any]) -> "UserProfile":
        return cls(
            profession=payload["profession"],
            concern=payload["concern"],
            location=GeoPoint.from_payload(payload["location"]) if payload.get("location") else None,
            place_name=payload.get("place_name", ""),
            timeframe=Timeframe(payload["timeframe"]) if payload.get("timeframe") else None,
            timeframe_answer=payload.get("timeframe_answer", ""),
            scope=payload["scope"],
            confirmed=payload["confirmed"],
        )


def validate_profile(profile: UserProfile) -> list[str]:
    """Report missing or invalid checklist fields; empty means planning-ready.

    Validation reports, it never throws. "I don't know" is a valid answer
    for every question except location, which downstream retrieval requires.
    """
    missing: list[str] = []
    if not profile.profession.strip():
        missing.append("profession")
    if not profile.concern.strip():
        missing.append("concern")
    if profile.location is None:
        missing.append("location")
    if profile.timeframe is None and not profile.timeframe_answer.strip():
        missing.append("timeframe")
    if not profile.scope.strip():
        missing.append("scope")
    return missing


def planning_ready(profile: UserProfile) -> bool:
    """A profile enters planning only when complete and user-confirmed."""
    return not validate_profile(profile) and profile.confirmed


class PlanStepKind(Enum):
    DATA_RETRIEVAL = "data_retrieval"
    LITERATURE_REVIEW = "literature_review"
    RECOMMENDATION_DEVELOPMENT = "recommendation_development"


class Dataset(Enum):
    """The retrievable datasets: three wildfire sources plus census augmentation."""

    FWI = "fwi"
    RECENT_INCIDENTS = "recent_incidents"
    PALEOFIRE_HISTORY = "paleofire_history"
    CENSUS = "census"


DATASET_DISPLAY = {
    Dataset.FWI: "Fire Weather Index projections",
    Dataset.RECENT_INCIDENTS: "Recent fire incident records",
    Dataset.PALEOFIRE_HISTORY: "Long-term fire history records",
    Dataset.CENSUS: "Census socioeconomic data",
}

WILDFIRE_DATASETS = (Dataset.FWI, Dataset.RECENT_INCIDENTS, Dataset.PALEOFIRE_HISTORY)


class StepStatus(Enum):
    PENDING = "pending"
    DONE = "done"


@canonical_type("plan_step")
@dataclass(frozen=True)
class PlanStep:
    """One step of an action plan.

    Data-retrieval steps must name a dataset; other kinds may carry at most
    a census augmentation.
    """

    kind: PlanStepKind
    rationale: str
    dataset: Optional[Dataset] = None
    status: StepStatus = StepStatus.PENDING

    def __post_init__(self) -> None:
        if self.kind is PlanStepKind.DATA_RETRIEVAL:
            if self.dataset is None:
                raise ValueError("data retrieval step requires a dataset")
        elif self.dataset not in (None, Dataset.CENSUS):
            raise ValueError(f"{self.kind.value} step cannot target {self.dataset.value}")

    def done(self) -> "PlanStep":
        return replace(self, status=StepStatus.DONE)

    def to_payload(self) -> dict[str, Any]:
        return {
            "kind": self.kind.value,
            "dataset": self.dataset.value if self.dataset else None,
            "rationale": self.rationale,
            "status": self.status.value,
        }

    @classmethod
    def from_payload(cls, payload: dict[str, Any]) -> "PlanStep":
        return cls(
            kind=PlanStepKind(payload["kind"]),
            dataset=Dataset(payload["dataset"]) if payload.get("dataset") else None,
            rationale=payload["rationale"],
            status=StepStatus(payload.get("status", "pending")),
        )


@canonical_type("action_plan")
@dataclass(frozen=True)
class ActionPlan:
    """An ordered plan: data retrieval first-class, recommendations last."""

    steps: tuple[PlanStep, ...]
    finalized: bool = False

    def __post_init__(self) -> None:
        steps = tuple(self.steps)
        object.__setattr__(self, "steps", steps)
        if not any(s.kind is PlanStepKind.DATA_RETRIEVAL for s in steps):
            raise ValueError("plan requires at least one data retrieval step")
        rec_indexes = [i for i, s in enumerate(steps)
                       if s.kind is PlanStepKind.RECOMMENDATION_DEVELOPMENT]
        if len(rec_indexes) > 1:
            raise ValueError("plan allows at most one recommendation development step")
        if rec_indexes and rec_indexes[0] != len(steps) - 1:
            raise ValueError("recommendation development must be the last step")

    @property
    def datasets(self) -> tuple[Dataset, ...]:
        seen: list[Dataset] = []
        for step in self.steps:
            if step.dataset is not None and step.dataset not in seen:
                seen.append(step.dataset)
        return tuple(seen)

    def with_step_done(self, index: int) -> "ActionPlan":
        steps = list(self.steps)
        steps[index] = steps[index].done()
        return replace(self, steps=tuple(steps))

    def to_payload(self) -> dict[str, Any]:
        return {"steps": [s.to_payload() for s in self.steps], "finalized": self.finalized}

    @classmethod
    def from_payload(cls, payload: dict[str, Any]) -> "ActionPlan":
        return cls(
            steps=tuple(PlanStep.from_payload(p) for p in payload["steps"]),
            finalized=payload["finalized"],
        )


@canonical_type("transcript_event")
@dataclass(frozen=True)
class TranscriptEvent:
    role: Role
    content: str
    ordinal: int
    stage: AgentStage

    def __post_init__(self) -> None:
        if self.ordinal < 0:
            raise ValueError("ordinal must be non-negative")

    def to_payload(self) -> dict[str, Any]:
        return {
            "role": self.role.value,
            "content": self.content,
            "ordinal": self.ordinal,
            "stage": self.stage.value,
        }

    @classmethod
    def from_payload(cls, payload: dict[str, Any]) -> "TranscriptEvent":
        return cls(
            role=Role(payload["role"]),
            content=payload["content"],
            ordinal=payload["ordinal"],
            stage=AgentStage(payload["stage"]),
        )


@canonical_type("transcript")
@dataclass(frozen=True)
class Transcript:
    """Append-only event sequence with strictly increasing ordinals."""

    events: tuple[TranscriptEvent, ...] = field(default_factory=tuple)

    def __post_init__(self) -> None:
        events = tuple(self.events)
        object.__setattr__(self, "events", events)
        for prev, cur in zip(events, events[1:]):
            if cur.ordinal <= prev.ordinal:
                raise ValueError("transcript ordinals must be strictly increasing")

    @property
    def next_ordinal(self) -> int:
        return self.events[-1].ordinal + 1 if self.events else 0

    def append(self, role: Role, content: str, stage: AgentStage) -> "Transcript":
        event = TranscriptEvent(role=role, content=content,
                                ordinal=self.next_ordinal, stage=stage)
        return Transcript(events=self.events + (event,))

    def to_payload(self) -> list[dict[str, Any]]:
        return [e.to_payload() for e in self.events]

    @classmethod
    def from_payload(cls, payload: list[dict[str, Any]]) -> "Transcript":
        return cls(events=tuple(TranscriptEvent.from_payload(p) for p in payload))


for _name, _enum in (("season", Season), ("period", Period),
                     ("risk_class", RiskClass), ("timeframe", Timeframe),
                     ("role", Role), ("agent_stage", AgentStage),
                     ("plan_step_kind", PlanStepKind), ("dataset", Dataset),
                     ("step_status", StepStatus)):
    canonical_enum(_name, _enum)
