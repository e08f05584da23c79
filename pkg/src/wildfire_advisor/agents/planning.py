"""Planning: one-shot-prompted plan drafting, feedback loop, and finalization."""

from __future__ import annotations

import re
from dataclasses import dataclass, replace
from typing import Optional

from wildfire_advisor.model import (
    DATASET_DISPLAY,
    ActionPlan,
    Dataset,
    PlanStep,
    PlanStepKind,
    Role,
    Timeframe,
    UserProfile,
    planning_ready,
)
from wildfire_advisor.llm.gateway import ChatMessage, ChatRequest, Provider, complete
from wildfire_advisor.prompts_loader import PromptSet

DATASET_LIMITATION_MESSAGE = (
    "Wildfire analysis here is limited to the three available datasets - "
    "Fire Weather Index projections, recent fire incident records, and "
    "long-term fire history records - optionally augmented with census "
    "socioeconomic data, so I cannot add that source.")

# Dataset preferences by timeframe: historical windows lean on fire history,
# forward windows on projections; the model may override within the allowed set.
TIMEFRAME_DATASET_PREFERENCE: dict[Optional[Timeframe], tuple[Dataset, ...]] = {
    None: (Dataset.FWI, Dataset.RECENT_INCIDENTS),
    Timeframe.SHORT_TERM_1_10: (Dataset.FWI, Dataset.RECENT_INCIDENTS),
    Timeframe.MEDIUM_TERM_10_30: (Dataset.FWI, Dataset.RECENT_INCIDENTS),
    Timeframe.LONG_TERM_30_80_PLUS: (Dataset.FWI, Dataset.RECENT_INCIDENTS),
    Timeframe.HIST_RECENT_1_10: (Dataset.RECENT_INCIDENTS, Dataset.PALEOFIRE_HISTORY),
    Timeframe.HIST_PAST_10_50: (Dataset.PALEOFIRE_HISTORY, Dataset.RECENT_INCIDENTS),
    Timeframe.HIST_LONG_50_PLUS: (Dataset.PALEOFIRE_HISTORY, Dataset.RECENT_INCIDENTS),
}

_PLAN_BLOCK_RE = re.compile(r"\[\[plan\]\](.*?)\[\[/plan\]\]", re.DOTALL)
_APPROVE_RE = re.compile(
    r"^\s*(looks good|proceed|approve[d]?|yes|sounds good|go ahead|perfect|great)\b[.!]?",
    re.IGNORECASE)
_CENSUS_RE = re.compile(r"\b(census|demographic|socio-?economic|poverty|housing)\b",
                        re.IGNORECASE)
_UNAVAILABLE_RE = re.compile(
    r"\b(satellite|imagery|radar|lidar|drone|soil moisture|land cover|fuel map)\b",
    re.IGNORECASE)


class PlanParseError(Exception):
    """The model output carried no parseable plan block after a reprompt."""


class AlreadyFinalizedError(Exception):
    pass


def parse_plan_block(text: str) -> ActionPlan:
    """Parse the fenced, field-labeled plan block the one-shot example shows."""
    match = _PLAN_BLOCK_RE.search(text)
    if not match:
        raise PlanParseError("no [[plan]] block found")
    steps: list[PlanStep] = []
    for raw_line in match.group(1).strip().splitlines():
        line = raw_line.strip()
        if not line:
            continue
        fields: dict[str, str] = {}
        for part in line.split("|"):
            key, _, value = part.partition(":")
            fields[key.strip().lower()] = value.strip()
        if "step" not in fields:
            raise PlanParseError(f"plan line without step kind: {line!r}")
        try:
            kind = PlanStepKind(fields["step"])
        except ValueError:
            raise PlanParseError(f"unknown step kind {fields['step']!r}") from None
        dataset = None
        if fields.get("dataset"):
            try:
                dataset = Dataset(fields["dataset"])
            except ValueError:
                raise PlanParseError(f"unknown dataset {fields['dataset']!r}") from None
        try:
            steps.append(PlanStep(kind=kind, dataset=dataset,
                                  rationale=fields.get("rationale", "")))
        except ValueError as exc:
            raise PlanParseError(str(exc)) from None
    try:
        return ActionPlan(steps=tuple(steps), finalized=False)
    except ValueError as exc:
        raise PlanParseError(str(exc)) from None


def render_presentation(plan: ActionPlan, datasets_blurb: str) -> str:
    """Draft text shown to the user: dataset mentions once each, then steps.

    Canonical dataset display names inside model-written rationales are
    masked so the exactly-once mention invariant cannot be broken by free text.
    """
    chosen = plan.datasets
    lines = [datasets_blurb.strip(), ""]
    if chosen:
        lines.append("Datasets selected for this plan: "
                     + "; ".join(DATASET_DISPLAY[d] for d in chosen) + ".")
        lines.append("")
    for number, step in enumerate(plan.steps, start=1):
        rationale = step.rationale
        for display in DATASET_DISPLAY.values():
            rationale = rationale.replace(display, "this dataset")
        label = step.kind.value.replace("_", " ")
        lines.append(f"Step {number} ({label}): {rationale}")
    lines.append("")
    lines.append("Would you like to include anything else, or shall we proceed "
                 "with this plan?")
    return "\n".join(lines)


@dataclass(frozen=True)
class PlanDraft:
    """An unfinalized plan plus the presentation text shown to the user.

    ``finalized`` seals the draft once plan_complete has fired; the plan
    value itself stays unfinalized inside drafts.
    """

    plan: ActionPlan
    presentation: str
    finalized: bool = False

    def __post_init__(self) -> None:
        if self.plan.finalized:
            raise ValueError("drafts carry unfinalized plans")
        for dataset in self.plan.datasets:
            display = DATASET_DISPLAY[dataset]
            count = self.presentation.count(display)
            if count != 1:
                raise ValueError(
                    f"presentation must mention {display!r} exactly once, found {count}")


@dataclass(frozen=True)
class FeedbackOutcome:
    draft: PlanDraft
    messages: tuple[str, ...]
    approved: bool = False
    revised: bool = False


@dataclass(frozen=True)
class FinalizeOutcome:
    plan: ActionPlan
    draft: "PlanDraft"


class PlanningAgent:
    def __init__(self, prompts: PromptSet) -> None:
        self._prompts = prompts

    def _system_prompt(self) -> str:
        return "\n\n".join([
            self._prompts.get("planning_system").strip(),
            self._prompts.get("planning_datasets").strip(),
            self._prompts.get("planning_example").strip(),
        ])

    def _profile_brief(self, profile: UserProfile) -> str:
        location = profile.place_name
        if profile.location is not None:
            location += f" ({profile.location.latitude}, {profile.location.longitude})"
        preferred = TIMEFRAME_DATASET_PREFERENCE[profile.timeframe]
        return "\n".join([
            f"Profession: {profile.profession}",
            f"Concern: {profile.concern}",
            f"Location: {location.strip()}",
            f"Timeframe: {profile.timeframe_answer}",
            f"Scope: {profile.scope}",
            "Suggested datasets for this timeframe: "
            + ", ".join(d.value for d in preferred),
        ])

    def draft_plan(self, profile: UserProfile, llm: Provider) -> PlanDraft:
        """Draft a plan from a confirmed profile; one reprompt, then hard failure."""
        if not planning_ready(profile):
            raise ValueError("profile must be complete and confirmed before planning")
        request = ChatRequest(
            system_prompt=self._system_prompt(),
            messages=(ChatMessage(role=Role.USER,
                                  content=self._profile_brief(profile)),),
        )
        plan = self._request_plan(llm, request)
        return self._make_draft(plan)

    def _request_plan(self, llm: Provider, request: ChatRequest) -> ActionPlan:
        response = complete(llm, request)
        try:
            return parse_plan_block(response.text or "")
        except PlanParseError:
            reminder = ChatMessage(
                role=Role.USER,
                content=("The previous reply had no valid [[plan]] block. Reply "
                         "again with the plan inside [[plan]] ... [[/plan]], one "
                         "step per line as the example shows."))
            retry = ChatRequest(system_prompt=request.system_prompt,
                                messages=request.messages + (reminder,),
                                tools=request.tools,
                                temperature=request.temperature)
            second = complete(llm, retry)
            return parse_plan_block(second.text or "")

    def _make_draft(self, plan: ActionPlan) -> PlanDraft:
        presentation = render_presentation(
            plan, self._prompts.get("planning_datasets"))
        return PlanDraft(plan=plan, presentation=presentation)

    def apply_feedback(self, draft: PlanDraft, text: str,
                       llm: Provider) -> FeedbackOutcome:
        if draft.finalized:
            raise AlreadyFinalizedError("plan already finalized")
        if _APPROVE_RE.match(text):
            return FeedbackOutcome(draft=draft, messages=(), approved=True)
        if _UNAVAILABLE_RE.search(text):
            return FeedbackOutcome(draft=draft,
                                   messages=(DATASET_LIMITATION_MESSAGE,))
        if _CENSUS_RE.search(text) and Dataset.CENSUS not in draft.plan.datasets:
            return self._append_census(draft)
        request = ChatRequest(
            system_prompt=self._system_prompt(),
            messages=(
                ChatMessage(role=Role.ASSISTANT, content=draft.presentation),
                ChatMessage(role=Role.USER,
                            content=(f"Revise the plan per this feedback: {text}. "
                                     "Reply with the full updated [[plan]] block.")),
            ),
        )
        plan = self._request_plan(llm, request)
        new_draft = self._make_draft(plan)
        return FeedbackOutcome(draft=new_draft,
                               messages=(new_draft.presentation,), revised=True)

    def _append_census(self, draft: PlanDraft) -> FeedbackOutcome:
        steps = list(draft.plan.steps)
        census_step = PlanStep(
            kind=PlanStepKind.DATA_RETRIEVAL, dataset=Dataset.CENSUS,
            rationale="Augment the wildfire analysis with a census-based "
                      "socioeconomic vulnerability summary.")
        if steps and steps[-1].kind is PlanStepKind.RECOMMENDATION_DEVELOPMENT:
            steps.insert(len(steps) - 1, census_step)
        else:
            steps.append(census_step)
        plan = ActionPlan(steps=tuple(steps), finalized=False)
        new_draft = self._make_draft(plan)
        return FeedbackOutcome(draft=new_draft,
                               messages=(new_draft.presentation,), revised=True)

    def finalize(self, draft: PlanDraft) -> FinalizeOutcome:
        """Freeze the plan; repeated finalization is rejected."""
        if draft.finalized:
            raise AlreadyFinalizedError("plan already finalized")
        finalized = replace(draft.plan, finalized=True)
        return FinalizeOutcome(plan=finalized,
                               draft=replace(draft, finalized=True))
