"""Profile intake: the five-question checklist with geocode and summary confirmation.

Questions are asked one at a time in a fixed order. A location answer is
converted to coordinates by the language model and must be visually
confirmed before the checklist can complete; the final summary must be
accepted before a confirmed profile is emitted.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field, replace
from enum import Enum
from typing import Any, Mapping, Optional

from wildfire_advisor.model import (
    DONT_KNOW,
    GeoPoint,
    Timeframe,
    UserProfile,
    validate_profile,
)
from wildfire_advisor.model.serialize import canonical_type
from wildfire_advisor.llm.gateway import (
    ChatMessage,
    ChatRequest,
    GatewayError,
    Provider,
    ToolParam,
    ToolSpec,
    complete,
)
from wildfire_advisor.model import Role
from wildfire_advisor.prompts_loader import PromptSet

QUESTION_ORDER = ("profession", "concern", "location", "time", "scope")

QUESTION_PROMPTS = {
    "profession": "profile_profession",
    "concern": "profile_concern",
    "location": "profile_location",
    "time": "profile_time",
    "scope": "profile_scope",
}

MAX_GEOCODE_ATTEMPTS = 3

GEOCODE_TOOL = ToolSpec(
    name="geocode",
    description="Resolve a location description to coordinates.",
    parameters={
        "latitude": ToolParam(type="number"),
        "longitude": ToolParam(type="number"),
        "place_name": ToolParam(type="string", required=False),
    },
)

_DONT_KNOW_RE = re.compile(r"^\s*i\s+don'?t\s+know\s*\.?\s*$", re.IGNORECASE)

_COORDINATE_RE = re.compile(
    r"(-?\d{1,2}(?:\.\d+)?)\s*,\s*(-?\d{1,3}(?:\.\d+)?)")

_ACCEPT_RE = re.compile(
    r"^\s*(accept|yes|confirm|correct|looks good|that's right|ok|okay)\b",
    re.IGNORECASE)

_REVISE_RE = re.compile(
    r"\b(?:revise|change|update|fix|redo)\s+(profession|concern|location|time(?:frame)?|scope)\b",
    re.IGNORECASE)


class Awaiting(Enum):
    ANSWER = "answer"
    GEOCODE_CONFIRM = "geocode_confirm"
    SUMMARY_CONFIRM = "summary_confirm"


@canonical_type("checklist_state")
@dataclass(frozen=True)
class ChecklistState:
    """Progress through the checklist; immutable, snapshotted into the log."""

    answered: Mapping[str, str] = field(default_factory=dict)
    current_question: str = "profession"
    awaiting: Awaiting = Awaiting.ANSWER
    geocode_candidate: Optional[GeoPoint] = None
    geocode_place: str = ""
    geocode_attempts: int = 0
    timeframe: Optional[Timeframe] = None
    intake_started: bool = False  # the opener elicits the first question

    def __post_init__(self) -> None:
        answered = dict(self.answered)
        unknown = set(answered) - set(QUESTION_ORDER)
        if unknown:
            raise ValueError(f"unknown checklist answers: {sorted(unknown)}")
        if self.current_question not in QUESTION_ORDER:
            raise ValueError(f"unknown question {self.current_question!r}")
        object.__setattr__(self, "answered", answered)

    @property
    def complete(self) -> bool:
        return all(q in self.answered for q in QUESTION_ORDER)

    def next_unanswered(self) -> Optional[str]:
        for question in QUESTION_ORDER:
            if question not in self.answered:
                return question
        return None

    def to_payload(self) -> dict[str, Any]:
        return {
            "answered": dict(self.answered),
            "current_question": self.current_question,
            "awaiting": self.awaiting.value,
            "geocode_candidate": (self.geocode_candidate.to_payload()
                                  if self.geocode_candidate else None),
            "geocode_place": self.geocode_place,
            "geocode_attempts": self.geocode_attempts,
            "timeframe": self.timeframe.value if self.timeframe else None,
            "intake_started": self.intake_started,
        }

    @classmethod
    def from_payload(cls, payload: Mapping[str, Any]) -> "ChecklistState":
        candidate = payload.get("geocode_candidate")
        return cls(
            answered=dict(payload.get("answered", {})),
            current_question=payload.get("current_question", "profession"),
            awaiting=Awaiting(payload.get("awaiting", "answer")),
            geocode_candidate=GeoPoint.from_payload(candidate) if candidate else None,
            geocode_place=payload.get("geocode_place", ""),
            geocode_attempts=payload.get("geocode_attempts", 0),
            timeframe=Timeframe(payload["timeframe"]) if payload.get("timeframe") else None,
            intake_started=payload.get("intake_started", False),
        )


def parse_timeframe(text: str) -> Optional[Timeframe]:
    """Map free text to the nearest timeframe range; None when ambiguous."""
    lowered = text.lower()
    historical = any(kw in lowered for kw in ("histor", "past", " ago", "last "))
    numbers = [int(n) for n in re.findall(r"\d+", lowered)]
    horizon = max(numbers) if numbers else None
    if horizon is None:
        if "short" in lowered or "recent" in lowered:
            return Timeframe.HIST_RECENT_1_10 if historical else Timeframe.SHORT_TERM_1_10
        if "medium" in lowered or "mid" in lowered:
            return Timeframe.HIST_PAST_10_50 if historical else Timeframe.MEDIUM_TERM_10_30
        if "long" in lowered:
            return Timeframe.HIST_LONG_50_PLUS if historical else Timeframe.LONG_TERM_30_80_PLUS
        return None
    if historical:
        if horizon <= 10:
            return Timeframe.HIST_RECENT_1_10
        if horizon <= 50:
            return Timeframe.HIST_PAST_10_50
        return Timeframe.HIST_LONG_50_PLUS
    if horizon <= 10:
        return Timeframe.SHORT_TERM_1_10
    if horizon <= 30:
        return Timeframe.MEDIUM_TERM_10_30
    return Timeframe.LONG_TERM_30_80_PLUS


@dataclass(frozen=True)
class IngestOutcome:
    state: ChecklistState
    messages: tuple[str, ...]
    map_pin: Optional[GeoPoint] = None


@dataclass(frozen=True)
class ConfirmOutcome:
    state: ChecklistState
    messages: tuple[str, ...]
    profile: Optional[UserProfile] = None
    reopened: Optional[str] = None


class ProfileAgent:
    def __init__(self, prompts: PromptSet) -> None:
        self._prompts = prompts

    # -- prompts -----------------------------------------------------------

    def next_prompt(self, state: ChecklistState) -> str:
        if state.awaiting is Awaiting.GEOCODE_CONFIRM:
            return self._geocode_confirm_text(state)
        if state.awaiting is Awaiting.SUMMARY_CONFIRM:
            return self.summary_text(state)
        return self._prompts.get(QUESTION_PROMPTS[state.current_question]).strip()

    def _geocode_confirm_text(self, state: ChecklistState) -> str:
        candidate = state.geocode_candidate
        template = self._prompts.get("profile_geocode_confirm").strip()
        return template.format(
            latitude=candidate.latitude if candidate else "?",
            longitude=candidate.longitude if candidate else "?",
            place_name=state.geocode_place or "unnamed location",
        )

    def summary_text(self, state: ChecklistState) -> str:
        rows = []
        for question in QUESTION_ORDER:
            rows.append(f"- {question}: {state.answered.get(question, '(missing)')}")
        template = self._prompts.get("profile_summary").strip()
        return template.format(summary_rows="\n".join(rows))

    # -- input handling ----------------------------------------------------

    def handle_input(self, state: ChecklistState, text: str,
                     llm: Provider) -> IngestOutcome | ConfirmOutcome:
        if state.awaiting is Awaiting.ANSWER:
            if not state.intake_started:
                opened = replace(state, intake_started=True)
                return IngestOutcome(state=opened,
                                     messages=(self.next_prompt(opened),))
            return self.ingest_answer(state, text, llm)
        if state.awaiting is Awaiting.GEOCODE_CONFIRM:
            return self._handle_geocode_confirm(state, text, llm)
        return self.confirm_summary(state, text)

    def ingest_answer(self, state: ChecklistState, text: str,
                      llm: Provider) -> IngestOutcome:
        if state.awaiting is not Awaiting.ANSWER:
            raise ValueError("not awaiting an answer")
        question = state.current_question
        answer = text.strip()
        if not answer:
            return IngestOutcome(state=state, messages=(self.next_prompt(state),))
        if question == "location":
            return self._ingest_location(state, answer, llm)
        if question == "time":
            return self._ingest_time(state, answer)
        return self._store_answer(state, question, answer)

    def _store_answer(self, state: ChecklistState, question: str, answer: str,
                      **updates: Any) -> IngestOutcome:
        answered = dict(state.answered)
        answered[question] = answer
        new_state = replace(state, answered=answered, **updates)
        next_question = new_state.next_unanswered()
        if next_question is None:
            new_state = replace(new_state, awaiting=Awaiting.SUMMARY_CONFIRM)
            return IngestOutcome(state=new_state,
                                 messages=(self.summary_text(new_state),))
        new_state = replace(new_state, current_question=next_question,
                            awaiting=Awaiting.ANSWER)
        return IngestOutcome(state=new_state,
                             messages=(self.next_prompt(new_state),))

    def _ingest_time(self, state: ChecklistState, answer: str) -> IngestOutcome:
        if _DONT_KNOW_RE.match(answer):
            return self._store_answer(state, "time", DONT_KNOW, timeframe=None)
        timeframe = parse_timeframe(answer)
        if timeframe is None:
            hint = ("I could not match that to one of the offered ranges. "
                    + self._prompts.get("profile_time").strip())
            return IngestOutcome(state=state, messages=(hint,))
        return self._store_answer(state, "time", answer, timeframe=timeframe)

    def _ingest_location(self, state: ChecklistState, answer: str,
                         llm: Provider) -> IngestOutcome:
        if _DONT_KNOW_RE.match(answer):
            message = ("A location is required: every retrieval in the analysis is "
                       "keyed to coordinates, so I cannot proceed without one. "
                       + self._prompts.get("profile_location").strip())
            return IngestOutcome(state=state, messages=(message,))
        # Explicit "latitude, longitude" input needs no model round-trip;
        # this is also the escape hatch after repeated geocode failures.
        explicit = _COORDINATE_RE.search(answer)
        if explicit:
            try:
                candidate = GeoPoint(latitude=float(explicit.group(1)),
                                     longitude=float(explicit.group(2)))
            except ValueError:
                candidate = None
            if candidate is not None:
                new_state = replace(state, awaiting=Awaiting.GEOCODE_CONFIRM,
                                    geocode_candidate=candidate,
                                    geocode_place=answer, geocode_attempts=0)
                return IngestOutcome(state=new_state,
                                     messages=(self._geocode_confirm_text(new_state),),
                                     map_pin=candidate)
        request = ChatRequest(
            system_prompt=self._prompts.get("profile_geocode_system").strip(),
            messages=(ChatMessage(role=Role.USER, content=answer),),
            tools=(GEOCODE_TOOL,),
        )
        candidate: Optional[GeoPoint] = None
        place = ""
        try:
            response = complete(llm, request)
            if response.tool_call is not None:
                args = response.tool_call.arguments
                candidate = GeoPoint(latitude=args["latitude"],
                                     longitude=args["longitude"])
                place = args.get("place_name", "") or answer
        except (GatewayError, ValueError, KeyError):
            candidate = None
        if candidate is None:
            attempts = state.geocode_attempts + 1
            if attempts >= MAX_GEOCODE_ATTEMPTS:
                message = ("I could not resolve that location. Please provide "
                           "explicit coordinates as 'latitude, longitude' "
                           "(for example: 37.7935, -79.9939).")
            else:
                message = ("I could not parse that into coordinates. Could you "
                           "rephrase the location, or give explicit "
                           "'latitude, longitude' values?")
            return IngestOutcome(state=replace(state, geocode_attempts=attempts),
                                 messages=(message,))
        new_state = replace(state, awaiting=Awaiting.GEOCODE_CONFIRM,
                            geocode_candidate=candidate, geocode_place=place,
                            geocode_attempts=0)
        return IngestOutcome(state=new_state,
                             messages=(self._geocode_confirm_text(new_state),),
                             map_pin=candidate)

    def _handle_geocode_confirm(self, state: ChecklistState, text: str,
                                llm: Provider) -> IngestOutcome:
        if _ACCEPT_RE.match(text):
            candidate = state.geocode_candidate
            answer = (f"{state.geocode_place} "
                      f"({candidate.latitude}, {candidate.longitude})").strip()
            return self._store_answer(state, "location", answer)
        # Anything else is treated as a corrected location description.
        retry_state = replace(state, awaiting=Awaiting.ANSWER,
                              geocode_candidate=None, geocode_place="")
        return self._ingest_location(retry_state, text.strip(), llm)

    # -- summary confirmation ----------------------------------------------

    def confirm_summary(self, state: ChecklistState, text: str) -> ConfirmOutcome:
        if state.awaiting is not Awaiting.SUMMARY_CONFIRM:
            raise ValueError("not awaiting summary confirmation")
        revise = _REVISE_RE.search(text)
        if revise:
            question = revise.group(1).lower()
            question = "time" if question.startswith("time") else question
            answered = {q: a for q, a in state.answered.items() if q != question}
            updates: dict[str, Any] = {}
            if question == "time":
                updates["timeframe"] = None
            if question == "location":
                updates.update(geocode_candidate=None, geocode_place="")
            new_state = replace(state, answered=answered, current_question=question,
                                awaiting=Awaiting.ANSWER, **updates)
            return ConfirmOutcome(state=new_state,
                                  messages=(self.next_prompt(new_state),),
                                  reopened=question)
        if _ACCEPT_RE.match(text):
            profile = self.build_profile(state, confirmed=True)
            problems = validate_profile(profile)
            if problems:
                gaps = ", ".join(problems)
                message = (f"The checklist still has gaps ({gaps}), so I cannot "
                           "confirm it yet.\n" + self.summary_text(state))
                return ConfirmOutcome(state=state, messages=(message,))
            return ConfirmOutcome(state=state, messages=(), profile=profile)
        return ConfirmOutcome(
            state=state,
            messages=("Please reply \"accept\" to confirm, or \"revise <field>\" "
                      "to change an answer.",))

    def build_profile(self, state: ChecklistState, confirmed: bool = False) -> UserProfile:
        return UserProfile(
            profession=state.answered.get("profession", ""),
            concern=state.answered.get("concern", ""),
            location=state.geocode_candidate,
            place_name=state.geocode_place,
            timeframe=state.timeframe,
            timeframe_answer=state.answered.get("time", ""),
            scope=state.answered.get("scope", ""),
            confirmed=confirmed,
        )
