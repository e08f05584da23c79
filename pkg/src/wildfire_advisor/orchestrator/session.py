"""The task orchestrator: stage routing, guarded transitions, log replay.

Every session mutation flows through an append-only event log; replaying a
log is a pure function that reconstructs the session state, which is how
resume works and why scripts and persisted sessions share one format.
"""

from __future__ import annotations

import json
import logging
import secrets
import threading
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Mapping, Optional

from wildfire_advisor.model import (
    ActionPlan,
    AgentStage,
    Role,
    Transcript,
    TranscriptEvent,
    UserProfile,
    can_transition,
)
from wildfire_advisor.agents.analyst import (
    AnalysisContext,
    AnalystAgent,
    StepOutcome,
    profile_summary_text,
)
from wildfire_advisor.agents.planning import (
    AlreadyFinalizedError,
    PlanDraft,
    PlanningAgent,
    PlanParseError,
)
from wildfire_advisor.agents.profile import (
    Awaiting,
    ChecklistState,
    ConfirmOutcome,
    IngestOutcome,
    ProfileAgent,
)
from wildfire_advisor.geo.engine import GeodataEngine
from wildfire_advisor.literature.doi import MetadataLookup
from wildfire_advisor.literature.embedder import Embedder
from wildfire_advisor.literature.index import VectorIndex
from wildfire_advisor.llm.gateway import (
    ChatRequest,
    ChatResponse,
    Provider,
    SchemaViolationError,
    ScriptExhaustedError,
    TransportError,
)
from wildfire_advisor.orchestrator.events import (
    AssistantEvent,
    EventKind,
    LogRecord,
    TOOL_EVENT_TRANSITIONS,
    ToolEventName,
    console_event,
)
from wildfire_advisor.prompts_loader import PromptSet

logger = logging.getLogger(__name__)

GREETING = ("Welcome to the wildfire hazard consultation service. I will ask a "
            "few questions to understand your needs, draft an analysis plan "
            "with you, and then walk through the data.")

APOLOGY = ("Sorry, something went wrong while handling that. Nothing was lost; "
           "please try again.")

OPERATOR_ERROR = ("The assistant could not complete that action after a retry; "
                  "an operator needs to look at this session.")


def new_session_id() -> str:
    """128-bit random, URL-safe token; the prefix keeps it shell/CLI-safe."""
    return "s" + secrets.token_urlsafe(16)


class GuardViolationError(Exception):
    """A tool event fired in a stage where it is not legal."""


class ClosedSessionError(Exception):
    pass


class UnknownSessionError(KeyError):
    pass


@dataclass
class ReplayReport:
    records_applied: int = 0
    truncated: bool = False
    error_line: Optional[int] = None
    reason: str = ""


@dataclass
class Session:
    """Mutable per-session state; strictly single-writer via its lock."""

    id: str
    stage: AgentStage = AgentStage.PROFILE_COLLECTION
    profile: Optional[UserProfile] = None
    plan: Optional[ActionPlan] = None
    transcript: Transcript = field(default_factory=Transcript)
    checklist: ChecklistState = field(default_factory=ChecklistState)
    draft: Optional[PlanDraft] = None
    context: Optional[AnalysisContext] = None
    log: list[LogRecord] = field(default_factory=list)
    resumed_from: Optional[str] = None
    replay_report: Optional[ReplayReport] = None
    lock: threading.Lock = field(default_factory=threading.Lock, repr=False)

    @property
    def next_ordinal(self) -> int:
        return self.log[-1].ordinal + 1 if self.log else 0


_TRANSCRIPT_ROLES = {
    EventKind.USER_INPUT: Role.USER,
    EventKind.ASSISTANT_TEXT: Role.ASSISTANT,
    EventKind.SYSTEM_TEXT: Role.SYSTEM,
    EventKind.TOOL_EVENT: Role.TOOL,
}


def _transcript_content(record: LogRecord) -> Optional[str]:
    role = _TRANSCRIPT_ROLES.get(record.kind)
    if role is None:
        return None
    if record.kind is EventKind.TOOL_EVENT:
        return str(record.payload.get("name", ""))
    return str(record.payload.get("text", ""))


class SessionStore:
    """One append-only log file per session, canonical JSON per line."""

    def __init__(self, directory: str | Path) -> None:
        self._dir = Path(directory)
        self._dir.mkdir(parents=True, exist_ok=True)

    def path(self, session_id: str) -> Path:
        return self._dir / f"{session_id}.log"

    def exists(self, session_id: str) -> bool:
        return self.path(session_id).exists()

    def list_ids(self) -> list[str]:
        return sorted(p.stem for p in self._dir.glob("*.log"))

    def append_meta(self, session_id: str, meta: Mapping[str, Any]) -> None:
        from wildfire_advisor.model.serialize import canonical_dumps
        with open(self.path(session_id), "a", encoding="utf-8") as fh:
            fh.write(canonical_dumps({"meta": dict(meta)}) + "\n")

    def append(self, session_id: str, record: LogRecord) -> None:
        with open(self.path(session_id), "a", encoding="utf-8") as fh:
            fh.write(record.to_line() + "\n")

    def read(self, session_id: str) -> tuple[dict[str, Any], list[LogRecord], ReplayReport]:
        """Parse a log; stop at the first corrupt line and report it."""
        path = self.path(session_id)
        if not path.exists():
            raise UnknownSessionError(session_id)
        return read_log_file(path)


def read_log_file(path: str | Path) -> tuple[dict[str, Any], list[LogRecord], ReplayReport]:
    """Parse an event-log (or script) file into meta, records, and a report."""
    meta: dict[str, Any] = {}
    records: list[LogRecord] = []
    report = ReplayReport()
    with open(path, encoding="utf-8") as fh:
        for line_no, line in enumerate(fh, start=1):
            line = line.strip()
            if not line:
                continue
            try:
                entry = json.loads(line)
                if "meta" in entry:
                    meta.update(entry["meta"])
                    continue
                record = LogRecord.from_payload(entry["event"])
                if records and record.ordinal <= records[-1].ordinal:
                    raise ValueError("ordinals must increase")
            except (ValueError, KeyError, TypeError) as exc:
                report.truncated = True
                report.error_line = line_no
                report.reason = f"corrupt log line: {exc}"
                break
            records.append(record)
    report.records_applied = len(records)
    return meta, records, report


def replay_state(records: list[LogRecord],
                 session_id: str = "") -> tuple[Session, ReplayReport]:
    """Pure reducer: fold log records into a session state."""
    session = Session(id=session_id)
    report = ReplayReport()
    events: list[TranscriptEvent] = []
    for record in records:
        content = _transcript_content(record)
        if content is not None:
            events.append(TranscriptEvent(role=_TRANSCRIPT_ROLES[record.kind],
                                          content=content,
                                          ordinal=record.ordinal,
                                          stage=record.stage))
        try:
            _apply_state(session, record)
        except (ValueError, KeyError) as exc:
            report.truncated = True
            report.reason = f"replay diverged at ordinal {record.ordinal}: {exc}"
            break
        report.records_applied += 1
    session.transcript = Transcript(events=tuple(events))
    session.log = records[:report.records_applied]
    return session, report


def _apply_state(session: Session, record: LogRecord) -> None:
    payload = record.payload
    if record.kind is EventKind.STAGE_CHANGE:
        source = AgentStage(payload["from"])
        target = AgentStage(payload["to"])
        if source is not session.stage or not can_transition(source, target):
            raise ValueError(f"illegal stage change {source.value} -> {target.value}")
        session.stage = target
    elif record.kind is EventKind.CHECKLIST_UPDATE:
        session.checklist = ChecklistState.from_payload(payload["state"])
    elif record.kind is EventKind.PROFILE_UPDATE:
        session.profile = UserProfile.from_payload(payload["profile"])
    elif record.kind is EventKind.PLAN_UPDATE:
        plan = ActionPlan.from_payload(payload["plan"])
        if plan.finalized:
            session.plan = plan
            session.draft = None
        else:
            session.draft = PlanDraft(plan=plan,
                                      presentation=payload.get("presentation", ""),
                                      finalized=False)
    elif record.kind is EventKind.CONTEXT_UPDATE:
        session.context = AnalysisContext.from_payload(payload["context"])


class RecordingProvider:
    """Wraps a provider, appending every response to the session log."""

    def __init__(self, inner: Provider, recorder) -> None:
        self._inner = inner
        self._recorder = recorder

    def send(self, request: ChatRequest) -> ChatResponse:
        response = self._inner.send(request)
        self._recorder(response)
        return response


class Orchestrator:
    """Routes user inputs to the active agent and applies stage transitions."""

    def __init__(
        self,
        provider: Provider,
        engine: GeodataEngine,
        index: VectorIndex,
        embedder: Embedder,
        prompts: PromptSet,
        store: Optional[SessionStore] = None,
        metadata_client: Optional[MetadataLookup] = None,
    ) -> None:
        self.provider = provider
        self.engine = engine
        self.prompts = prompts
        self.store = store
        self.profile_agent = ProfileAgent(prompts)
        self.planning_agent = PlanningAgent(prompts)
        self.analyst = AnalystAgent(prompts, engine, index, embedder, metadata_client)
        self.sessions: dict[str, Session] = {}

    # -- session lifecycle ---------------------------------------------------

    def create_session(self) -> Session:
        session = Session(id=new_session_id())
        self.sessions[session.id] = session
        self._append(session, EventKind.SYSTEM_TEXT, {"text": GREETING})
        return session

    def get_session(self, session_id: str) -> Session:
        try:
            return self.sessions[session_id]
        except KeyError:
            raise UnknownSessionError(session_id) from None

    # -- event plumbing --------------------------------------------------------

    def _append(self, session: Session, kind: EventKind,
                payload: Mapping[str, Any]) -> LogRecord:
        record = LogRecord(ordinal=session.next_ordinal, kind=kind,
                           stage=session.stage, payload=dict(payload))
        session.log.append(record)
        content = _transcript_content(record)
        if content is not None:
            event = TranscriptEvent(role=_TRANSCRIPT_ROLES[kind], content=content,
                                    ordinal=record.ordinal, stage=record.stage)
            session.transcript = Transcript(events=session.transcript.events + (event,))
        if self.store is not None:
            self.store.append(session.id, record)
        return record

    def _recording_provider(self, session: Session) -> Provider:
        def record(response: ChatResponse) -> None:
            self._append(session, EventKind.PROVIDER_RESPONSE,
                         {"response": response.to_payload()})
        return RecordingProvider(self.provider, record)

    # -- stage transitions -----------------------------------------------------

    def update_assistant(self, session: Session, event: ToolEventName,
                         payload: Optional[Mapping[str, Any]] = None) -> None:
        """Apply a tool event; illegal events are rejected and logged."""
        legal_stage, target = TOOL_EVENT_TRANSITIONS[event]
        if session.stage is not legal_stage:
            self._append(session, EventKind.GUARD_VIOLATION,
                         {"event": event.value, "stage": session.stage.value})
            logger.warning("guard: tool event %s rejected in stage %s",
                           event.value, session.stage.value)
            raise GuardViolationError(
                f"tool event {event.value} is not legal in stage {session.stage.value}")
        self._append(session, EventKind.TOOL_EVENT,
                     {"name": event.value, **(dict(payload or {}))})
        self._append(session, EventKind.STAGE_CHANGE,
                     {"from": session.stage.value, "to": target.value})
        session.stage = target

    # -- main entry ------------------------------------------------------------

    def get_response(self, session: Session,
                     text: str) -> list[AssistantEvent]:
        """Process one user input; returns the console-visible events."""
        with session.lock:
            if session.stage is AgentStage.CLOSED:
                raise ClosedSessionError(session.id)
            start = len(session.log)
            self._append(session, EventKind.USER_INPUT, {"text": text})
            try:
                self._route(session, text)
            except SchemaViolationError:
                try:
                    self._route(session, text)
                except SchemaViolationError as exc:
                    logger.error("schema violation persisted after retry: %s", exc)
                    self._append(session, EventKind.ASSISTANT_TEXT,
                                 {"text": OPERATOR_ERROR})
            except (ScriptExhaustedError, TransportError):
                raise
            except (PlanParseError, AlreadyFinalizedError, GuardViolationError,
                    ValueError) as exc:
                logger.warning("agent error in stage %s: %s", session.stage.value, exc)
                self._append(session, EventKind.ASSISTANT_TEXT, {"text": APOLOGY})
            out = []
            for record in session.log[start:]:
                event = console_event(record)
                if event is not None:
                    out.append(event)
            return out

    # -- routing ----------------------------------------------------------------

    def _route(self, session: Session, text: str) -> None:
        stage = session.stage
        if stage in (AgentStage.PROFILE_COLLECTION, AgentStage.PROFILE_CONFIRMATION):
            self._handle_profile(session, text)
        elif stage is AgentStage.PLANNING:
            # Normally transient; reaching here means a previous draft failed.
            self._draft_plan(session)
        elif stage is AgentStage.PLAN_CONFIRMATION:
            self._handle_plan_feedback(session, text)
        elif stage is AgentStage.ANALYSIS:
            self._handle_analysis(session, text)

    def _emit_texts(self, session: Session, texts) -> None:
        for message in texts:
            self._append(session, EventKind.ASSISTANT_TEXT, {"text": message})

    def _handle_profile(self, session: Session, text: str) -> None:
        provider = self._recording_provider(session)
        outcome = self.profile_agent.handle_input(session.checklist, text, provider)
        if isinstance(outcome, IngestOutcome):
            if outcome.map_pin is not None:
                self._append(session, EventKind.MAP_LAYER, {
                    "layer": "location_pin",
                    "data": outcome.map_pin.to_payload(),
                })
            self._update_checklist(session, outcome.state)
            self._emit_texts(session, outcome.messages)
            if (session.stage is AgentStage.PROFILE_COLLECTION
                    and outcome.state.awaiting is Awaiting.SUMMARY_CONFIRM):
                self.update_assistant(session, ToolEventName.PROFILE_READY)
            return
        # ConfirmOutcome
        self._handle_profile_confirmation(session, outcome)

    def _handle_profile_confirmation(self, session: Session,
                                     outcome: ConfirmOutcome) -> None:
        self._update_checklist(session, outcome.state)
        if outcome.reopened is not None:
            self.update_assistant(session, ToolEventName.PROFILE_REVISE,
                                  {"field": outcome.reopened})
            self._emit_texts(session, outcome.messages)
            return
        if outcome.profile is None:
            self._emit_texts(session, outcome.messages)
            return
        session.profile = outcome.profile
        self._append(session, EventKind.PROFILE_UPDATE,
                     {"profile": outcome.profile.to_payload()})
        self.update_assistant(session, ToolEventName.PROFILE_COMPLETE,
                              {"profile": outcome.profile.to_payload()})
        self._draft_plan(session)

    def _update_checklist(self, session: Session, state: ChecklistState) -> None:
        if state is not session.checklist:
            session.checklist = state
            self._append(session, EventKind.CHECKLIST_UPDATE,
                         {"state": state.to_payload()})

    def _draft_plan(self, session: Session) -> None:
        provider = self._recording_provider(session)
        draft = self.planning_agent.draft_plan(session.profile, provider)
        session.draft = draft
        self._append(session, EventKind.PLAN_UPDATE,
                     {"plan": draft.plan.to_payload(),
                      "presentation": draft.presentation})
        self._emit_texts(session, (draft.presentation,))
        self.update_assistant(session, ToolEventName.PLAN_READY)

    def _handle_plan_feedback(self, session: Session, text: str) -> None:
        provider = self._recording_provider(session)
        outcome = self.planning_agent.apply_feedback(session.draft, text, provider)
        if outcome.approved:
            finalized = self.planning_agent.finalize(outcome.draft)
            session.plan = finalized.plan
            session.draft = finalized.draft
            self._append(session, EventKind.PLAN_UPDATE,
                         {"plan": finalized.plan.to_payload(),
                          "presentation": finalized.draft.presentation})
            self.update_assistant(session, ToolEventName.PLAN_COMPLETE,
                                  {"plan": finalized.plan.to_payload()})
            session.context = AnalysisContext(
                profile_summary=profile_summary_text(session.profile),
                plan=finalized.plan)
            self._append(session, EventKind.CONTEXT_UPDATE,
                         {"context": session.context.to_payload()})
            self._run_analyst_step(session)
            return
        if outcome.revised:
            self.update_assistant(session, ToolEventName.PLAN_REVISE)
            session.draft = outcome.draft
            self._append(session, EventKind.PLAN_UPDATE,
                         {"plan": outcome.draft.plan.to_payload(),
                          "presentation": outcome.draft.presentation})
            self._emit_texts(session, outcome.messages)
            self.update_assistant(session, ToolEventName.PLAN_READY)
            return
        self._emit_texts(session, outcome.messages)

    def _apply_step_outcome(self, session: Session, outcome: StepOutcome) -> None:
        for payload in outcome.retrieval_payloads:
            self._append(session, EventKind.RETRIEVAL_PAYLOAD, {"data": payload})
        for layer in outcome.map_layers:
            self._append(session, EventKind.MAP_LAYER,
                         {"layer": layer.get("type", "data"), "data": layer})
        for chart in outcome.charts:
            self._append(session, EventKind.CHART,
                         {"chart": chart.get("type", "data"), "data": chart})
        self._emit_texts(session, outcome.texts)
        if outcome.context is not session.context:
            session.context = outcome.context
            self._append(session, EventKind.CONTEXT_UPDATE,
                         {"context": outcome.context.to_payload()})

    def _run_analyst_step(self, session: Session) -> None:
        provider = self._recording_provider(session)
        outcome = self.analyst.execute_next_step(session.context, session.profile,
                                                 provider)
        self._apply_step_outcome(session, outcome)

    def _handle_analysis(self, session: Session, text: str) -> None:
        provider = self._recording_provider(session)
        outcome = self.analyst.answer_followup(session.context, session.profile,
                                               text, provider)
        self._apply_step_outcome(session, outcome)

    # -- resume ------------------------------------------------------------------

    def resume_conversation(self, store: SessionStore, session_id: str) -> Session:
        """Replicate a persisted session's log into a new session."""
        _, records, read_report = store.read(session_id)
        session, replay_report = replay_state(records, new_session_id())
        report = ReplayReport(
            records_applied=replay_report.records_applied,
            truncated=read_report.truncated or replay_report.truncated,
            error_line=read_report.error_line,
            reason=read_report.reason or replay_report.reason,
        )
        session.resumed_from = session_id
        session.replay_report = report
        if report.truncated:
            logger.warning("resume of %s diverged: %s", session_id, report.reason)
        store.append_meta(session.id, {
            "resumed_from": session_id,
            "truncated": report.truncated,
            "records_applied": report.records_applied,
        })
        for record in session.log:
            store.append(session.id, record)
        self.sessions[session.id] = session
        return session
