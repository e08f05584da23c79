"""Analysis: plan execution over the data engines, literature, and follow-ups.

The analyst keeps the profile summary and plan in its prompt context, runs
each plan step in order, offers the census augmentation after a successful
wildfire retrieval, and grounds every answer in the accumulated findings.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, replace
from typing import Any, Mapping, Optional

from wildfire_advisor.model import (
    ActionPlan,
    DATASET_DISPLAY,
    Dataset,
    PlanStepKind,
    Role,
    StepStatus,
    UserProfile,
    WILDFIRE_DATASETS,
)
from wildfire_advisor.model.serialize import canonical_serialize, canonical_type
from wildfire_advisor.geo.engine import GeodataEngine
from wildfire_advisor.geo.reports import render_data_report
from wildfire_advisor.literature.embedder import Embedder
from wildfire_advisor.literature.index import (
    LiteratureQueryResult,
    VectorIndex,
    search,
)
from wildfire_advisor.literature.doi import MetadataLookup
from wildfire_advisor.literature.render import render_literature_block
from wildfire_advisor.llm.gateway import ChatMessage, ChatRequest, Provider, complete
from wildfire_advisor.prompts_loader import PromptSet

MAX_FOLLOWUP_RETRIEVALS = 5

EXPLORE_OR_PROCEED = ("Would you like to explore this further, or shall we "
                      "proceed to the next step?")

CENSUS_OFFER = ("An additional analysis is available: a census-based demographic "
                "and socioeconomic summary of this area. Say \"census\" to "
                "include it, or \"proceed\" to continue with the plan.")

_PROCEED_RE = re.compile(r"^\s*(proceed|continue|next|go on|next step)\b", re.IGNORECASE)
_CENSUS_RE = re.compile(r"\b(census|demographic|socio-?economic|poverty|housing)\b",
                        re.IGNORECASE)
_UNAVAILABLE_RE = re.compile(
    r"\b(rcp\s*\d|scenario|satellite|imagery|radar|lidar|soil moisture|fuel map)\b",
    re.IGNORECASE)


def build_literature_query(profile: UserProfile) -> str:
    """Deterministic profile-conditioned search query."""
    place = profile.place_name.strip()
    if not place and profile.location is not None:
        place = f"{profile.location.latitude}, {profile.location.longitude}"
    parts = [profile.concern.strip().rstrip("."), profile.scope.strip().rstrip(".")]
    query = "; ".join(p for p in parts if p)
    if place:
        query += f"; near {place}"
    return query


@canonical_type("analysis_context")
@dataclass(frozen=True)
class AnalysisContext:
    """Profile summary, plan, findings, and step cursor of one session."""

    profile_summary: str
    plan: ActionPlan
    findings: tuple[Mapping[str, Any], ...] = ()
    current_step_index: int = 0
    census_offer_pending: bool = False
    followup_retrievals: int = 0

    def __post_init__(self) -> None:
        object.__setattr__(self, "findings", tuple(dict(f) for f in self.findings))
        done = sum(1 for s in self.plan.steps if s.status is StepStatus.DONE)
        if len(self.findings) > done + self.followup_retrievals:
            raise ValueError("findings cannot outnumber completed steps")

    @property
    def next_step_index(self) -> Optional[int]:
        for i, step in enumerate(self.plan.steps):
            if step.status is StepStatus.PENDING:
                return i
        return None

    def to_payload(self) -> dict[str, Any]:
        return {
            "profile_summary": self.profile_summary,
            "plan": self.plan.to_payload(),
            "findings": [dict(f) for f in self.findings],
            "current_step_index": self.current_step_index,
            "census_offer_pending": self.census_offer_pending,
            "followup_retrievals": self.followup_retrievals,
        }

    @classmethod
    def from_payload(cls, payload: Mapping[str, Any]) -> "AnalysisContext":
        return cls(
            profile_summary=payload["profile_summary"],
            plan=ActionPlan.from_payload(payload["plan"]),
            findings=tuple(payload.get("findings", ())),
            current_step_index=payload.get("current_step_index", 0),
            census_offer_pending=payload.get("census_offer_pending", False),
            followup_retrievals=payload.get("followup_retrievals", 0),
        )


@dataclass(frozen=True)
class StepOutcome:
    """New context plus ordered console events from one analyst action."""

    context: AnalysisContext
    texts: tuple[str, ...] = ()
    map_layers: tuple[dict[str, Any], ...] = ()
    charts: tuple[dict[str, Any], ...] = ()
    retrieval_payloads: tuple[dict[str, Any], ...] = ()


def profile_summary_text(profile: UserProfile) -> str:
    location = profile.place_name
    if profile.location is not None:
        location = (f"{profile.place_name} ({profile.location.latitude}, "
                    f"{profile.location.longitude})").strip()
    return (f"Profession: {profile.profession}. Concern: {profile.concern}. "
            f"Location: {location}. Timeframe: {profile.timeframe_answer}. "
            f"Scope: {profile.scope}.")


def _envelope(value: Any) -> dict[str, Any]:
    import json
    return json.loads(canonical_serialize(value))


class AnalystAgent:
    def __init__(self, prompts: PromptSet, engine: GeodataEngine,
                 index: VectorIndex, embedder: Embedder,
                 metadata_client: Optional[MetadataLookup] = None) -> None:
        self._prompts = prompts
        self._engine = engine
        self._index = index
        self._embedder = embedder
        self._metadata_client = metadata_client

    # -- plan execution ------------------------------------------------------

    def execute_next_step(self, ctx: AnalysisContext, profile: UserProfile,
                          llm: Provider) -> StepOutcome:
        index = ctx.next_step_index
        if index is None:
            return StepOutcome(context=ctx, texts=(
                "The plan is complete. " + EXPLORE_OR_PROCEED,))
        step = ctx.plan.steps[index]
        # Mark the step done up front so it can never execute twice, then
        # record its finding against the advanced context.
        advanced = replace(ctx, plan=ctx.plan.with_step_done(index),
                           current_step_index=index + 1)
        if step.kind is PlanStepKind.DATA_RETRIEVAL:
            return self._run_retrieval(advanced, profile, step.dataset,
                                       step_index=index)
        if step.kind is PlanStepKind.LITERATURE_REVIEW:
            return self._run_literature(advanced, profile, step_index=index)
        return self._run_recommendations(advanced, llm, step_index=index)

    def _record_finding(self, ctx: AnalysisContext, kind: str, report_text: str,
                        step_index: Optional[int],
                        payload: Optional[dict[str, Any]] = None) -> AnalysisContext:
        finding = {
            "step_index": step_index,
            "kind": kind,
            "report": report_text,
            "payload": payload,
        }
        return replace(ctx, findings=ctx.findings + (finding,))

    def _run_retrieval(self, ctx: AnalysisContext, profile: UserProfile,
                       dataset: Dataset, step_index: Optional[int],
                       followup: bool = False) -> StepOutcome:
        center = profile.location
        if center is None:
            raise ValueError("analysis requires a profile location")
        texts: list[str] = []
        map_layers: list[dict[str, Any]] = []
        charts: list[dict[str, Any]] = []
        if dataset is Dataset.FWI:
            result = self._engine.query_fwi(center)
            map_layers.append(_envelope(result))
            charts.append(_envelope(result))  # seasonal comparison series
        elif dataset is Dataset.RECENT_INCIDENTS:
            result = self._engine.query_incidents(center)
            map_layers.append(_envelope(result))
            charts.append(_envelope(result))
        elif dataset is Dataset.PALEOFIRE_HISTORY:
            result = self._engine.query_paleofire(center)
            map_layers.append(_envelope(result))
        elif dataset is Dataset.CENSUS:
            result = self._engine.query_census(center)
            map_layers.append(_envelope(result))
        else:
            raise ValueError(f"unknown dataset {dataset!r}")
        report = render_data_report(dataset, result)
        texts.insert(0, report.text)
        census_pending = ctx.census_offer_pending
        if report.cautionary:
            texts.append(self._alternatives_text(dataset))
        elif dataset in WILDFIRE_DATASETS and not followup:
            texts.append(CENSUS_OFFER)
            census_pending = True
        new_ctx = self._record_finding(ctx, dataset.value, report.text, step_index,
                                       payload=_envelope(result))
        new_ctx = replace(new_ctx, census_offer_pending=census_pending)
        return StepOutcome(context=new_ctx, texts=tuple(texts),
                           map_layers=tuple(map_layers), charts=tuple(charts),
                           retrieval_payloads=(_envelope(result),))

    def _alternatives_text(self, failed: Dataset) -> str:
        others = [DATASET_DISPLAY[d] for d in WILDFIRE_DATASETS if d is not failed]
        return ("I can explore alternative resources instead: "
                + " or ".join(others) + ". " + EXPLORE_OR_PROCEED)

    def _run_literature(self, ctx: AnalysisContext, profile: UserProfile,
                        step_index: Optional[int]) -> StepOutcome:
        query = build_literature_query(profile)
        hits = search(self._index, query, self._embedder, k=3,
                      metadata_client=self._metadata_client)
        block = render_literature_block(hits)
        payload = _envelope(LiteratureQueryResult.from_hits(query, 3, hits))
        text = f"Literature search: {query}\n\n{block}"
        new_ctx = self._record_finding(ctx, "literature", text, step_index,
                                       payload=payload)
        return StepOutcome(context=new_ctx, texts=(text,),
                           retrieval_payloads=(payload,))

    def _run_recommendations(self, ctx: AnalysisContext, llm: Provider,
                             step_index: Optional[int]) -> StepOutcome:
        prompt_parts = ["User profile:", ctx.profile_summary, "", "Findings:"]
        for finding in ctx.findings:
            prompt_parts.append(str(finding["report"]))
        request = ChatRequest(
            system_prompt=self._prompts.get("analyst_recommendation").strip(),
            messages=(ChatMessage(role=Role.USER,
                                  content="\n".join(prompt_parts)),),
        )
        response = complete(llm, request)
        text = response.text or ""
        new_ctx = self._record_finding(ctx, "recommendations", text, step_index)
        return StepOutcome(context=new_ctx, texts=(text,))

    # -- follow-ups ----------------------------------------------------------

    def answer_followup(self, ctx: AnalysisContext, profile: UserProfile,
                        text: str, llm: Provider) -> StepOutcome:
        if not any(s.status is StepStatus.DONE for s in ctx.plan.steps):
            raise ValueError("follow-ups require at least one completed step")
        if _PROCEED_RE.match(text):
            outcome = self.execute_next_step(
                replace(ctx, census_offer_pending=False), profile, llm)
            return outcome
        if _CENSUS_RE.search(text):
            return self._followup_retrieval(ctx, profile, Dataset.CENSUS)
        if _UNAVAILABLE_RE.search(text):
            message = ("That information is not available in the datasets this "
                       "service can query (fire weather projections, recent "
                       "incidents, fire history sites, census summaries), so I "
                       "will not speculate about it. " + EXPLORE_OR_PROCEED)
            return StepOutcome(context=ctx, texts=(message,))
        return self._grounded_answer(ctx, text, llm)

    def _followup_retrieval(self, ctx: AnalysisContext, profile: UserProfile,
                            dataset: Dataset) -> StepOutcome:
        if ctx.followup_retrievals >= MAX_FOLLOWUP_RETRIEVALS:
            return StepOutcome(context=ctx, texts=(
                "The follow-up retrieval budget for this session is exhausted; "
                "I can still discuss the findings already gathered. "
                + EXPLORE_OR_PROCEED,))
        bumped = replace(ctx, followup_retrievals=ctx.followup_retrievals + 1,
                         census_offer_pending=False)
        outcome = self._run_retrieval(bumped, profile, dataset, step_index=None,
                                      followup=True)
        return replace(outcome, texts=outcome.texts + (EXPLORE_OR_PROCEED,))

    def _grounded_answer(self, ctx: AnalysisContext, text: str,
                         llm: Provider) -> StepOutcome:
        parts = [self._prompts.get("analyst_followup").strip(), "",
                 "User profile:", ctx.profile_summary, "", "Findings:"]
        for finding in ctx.findings:
            parts.append(str(finding["report"]))
        parts += ["", f"Question: {text}"]
        request = ChatRequest(
            system_prompt=self._prompts.get("analyst_followup").strip(),
            messages=(ChatMessage(role=Role.USER, content="\n".join(parts)),),
        )
        response = complete(llm, request)
        answer = (response.text or "") + "\n\n" + EXPLORE_OR_PROCEED
        return StepOutcome(context=ctx, texts=(answer,))
