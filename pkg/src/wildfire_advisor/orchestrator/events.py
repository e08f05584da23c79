"""Event vocabulary for session logs and console payloads.

The per-session event log is append-only, one canonical JSON record per
line. Scripts fed to the replay CLI use the same format, so replays and
resumes share one reader.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Mapping

from wildfire_advisor.model import AgentStage
from wildfire_advisor.model.serialize import canonical_dumps


class EventKind(Enum):
    USER_INPUT = "user_input"
    SYSTEM_TEXT = "system_text"
    ASSISTANT_TEXT = "assistant_text"
    MAP_LAYER = "map_layer"
    CHART = "chart"
    RETRIEVAL_PAYLOAD = "retrieval_payload"
    PROVIDER_RESPONSE = "provider_response"
    TOOL_EVENT = "tool_event"
    STAGE_CHANGE = "stage_change"
    CHECKLIST_UPDATE = "checklist_update"
    PROFILE_UPDATE = "profile_update"
    PLAN_UPDATE = "plan_update"
    CONTEXT_UPDATE = "context_update"
    GUARD_VIOLATION = "guard_violation"


class ToolEventName(Enum):
    PROFILE_READY = "profile_ready"
    PROFILE_REVISE = "profile_revise"
    PROFILE_COMPLETE = "profile_complete"
    PLAN_READY = "plan_ready"
    PLAN_REVISE = "plan_revise"
    PLAN_COMPLETE = "plan_complete"
    SESSION_CLOSE = "session_close"


# Tool event -> (stage it is legal in, stage it advances to).
TOOL_EVENT_TRANSITIONS: dict[ToolEventName, tuple[AgentStage, AgentStage]] = {
    ToolEventName.PROFILE_READY: (AgentStage.PROFILE_COLLECTION,
                                  AgentStage.PROFILE_CONFIRMATION),
    ToolEventName.PROFILE_REVISE: (AgentStage.PROFILE_CONFIRMATION,
                                   AgentStage.PROFILE_COLLECTION),
    ToolEventName.PROFILE_COMPLETE: (AgentStage.PROFILE_CONFIRMATION,
                                     AgentStage.PLANNING),
    ToolEventName.PLAN_READY: (AgentStage.PLANNING, AgentStage.PLAN_CONFIRMATION),
    ToolEventName.PLAN_REVISE: (AgentStage.PLAN_CONFIRMATION, AgentStage.PLANNING),
    ToolEventName.PLAN_COMPLETE: (AgentStage.PLAN_CONFIRMATION, AgentStage.ANALYSIS),
    ToolEventName.SESSION_CLOSE: (AgentStage.ANALYSIS, AgentStage.CLOSED),
}


@dataclass(frozen=True)
class LogRecord:
    """One line of the append-only session log."""

    ordinal: int
    kind: EventKind
    stage: AgentStage
    payload: Mapping[str, Any] = field(default_factory=dict)

    def to_payload(self) -> dict[str, Any]:
        return {
            "ordinal": self.ordinal,
            "kind": self.kind.value,
            "stage": self.stage.value,
            "payload": dict(self.payload),
        }

    def to_line(self) -> str:
        return canonical_dumps({"event": self.to_payload()})

    @classmethod
    def from_payload(cls, payload: Mapping[str, Any]) -> "LogRecord":
        return cls(
            ordinal=payload["ordinal"],
            kind=EventKind(payload["kind"]),
            stage=AgentStage(payload["stage"]),
            payload=dict(payload.get("payload", {})),
        )


# Console-visible event kinds, in the tagged shape the service returns.
CONSOLE_KINDS = {
    EventKind.ASSISTANT_TEXT: "text",
    EventKind.SYSTEM_TEXT: "text",
    EventKind.MAP_LAYER: "map_layer",
    EventKind.CHART: "chart",
    EventKind.STAGE_CHANGE: "stage",
}


@dataclass(frozen=True)
class AssistantEvent:
    """A console-facing event: {kind, payload} in transcript order."""

    kind: str
    payload: Mapping[str, Any]

    def to_payload(self) -> dict[str, Any]:
        return {"kind": self.kind, "payload": dict(self.payload)}


def console_event(record: LogRecord) -> AssistantEvent | None:
    """Project a log record onto the console event shape, if visible."""
    tag = CONSOLE_KINDS.get(record.kind)
    if tag is None:
        return None
    return AssistantEvent(kind=tag, payload=dict(record.payload))
