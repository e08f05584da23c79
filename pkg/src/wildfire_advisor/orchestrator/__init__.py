"""Session orchestration: routing, stage transitions, persistence, resume."""

from wildfire_advisor.orchestrator.events import (
    AssistantEvent,
    EventKind,
    LogRecord,
    ToolEventName,
)
from wildfire_advisor.orchestrator.session import (
    GuardViolationError,
    Orchestrator,
    ReplayReport,
    Session,
    SessionStore,
    replay_state,
)

__all__ = [
    "AssistantEvent",
    "EventKind",
    "GuardViolationError",
    "LogRecord",
    "Orchestrator",
    "ReplayReport",
    "Session",
    "SessionStore",
    "ToolEventName",
    "replay_state",
]
