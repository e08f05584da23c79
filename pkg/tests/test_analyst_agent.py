"""Analyst behavior: step execution, query templates, follow-up routing."""

from __future__ import annotations

import pytest

from wildfire_advisor.agents import AnalysisContext, AnalystAgent, build_literature_query
from wildfire_advisor.agents.analyst import (
    CENSUS_OFFER,
    EXPLORE_OR_PROCEED,
    MAX_FOLLOWUP_RETRIEVALS,
    profile_summary_text,
)
from wildfire_advisor.geo import GeodataEngine
from wildfire_advisor.llm.gateway import ChatResponse
from wildfire_advisor.llm.scripted import ScriptedProvider
from wildfire_advisor.model import (
    ActionPlan,
    Dataset,
    PlanStep,
    PlanStepKind,
    StepStatus,
    Timeframe,
    UserProfile,
)
from wildfire_advisor.evalharness import collect_numeric_values, extract_statistics
from wildfire_advisor.prompts_loader import default_prompts

from tests.conftest import COVINGTON

HOMEOWNER = UserProfile(
    profession="Homeowner in Virginia",
    concern="Managing the forest, keeping it healthy, while maximizing "
            "marketable species, and protecting properties from potential wildfires",
    location=COVINGTON, place_name="Covington, VA",
    timeframe=Timeframe.SHORT_TERM_1_10,
    timeframe_answer="within the next 5 to 10 years",
    scope="Management of the forest and properties to maximize marketable "
          "species, and protect against potential wildfires",
    confirmed=True)

ECOLOGIST = UserProfile(
    profession="Ecologist in Virginia",
    concern="Maintaining biodiversity and ecosystem services",
    location=COVINGTON, place_name="Covington, VA",
    timeframe=Timeframe.SHORT_TERM_1_10,
    timeframe_answer="within the next 5 to 10 years",
    scope="Wildfire management and ecological resilience in forest ecosystems",
    confirmed=True)


def plan(*kinds):
    return ActionPlan(steps=tuple(
        PlanStep(kind=k, dataset=d, rationale="r") for k, d in kinds))


def fresh_context(profile, the_plan) -> AnalysisContext:
    return AnalysisContext(profile_summary=profile_summary_text(profile),
                           plan=the_plan)


@pytest.fixture
def analyst(engine, index, embedder, metadata_client):
    return AnalystAgent(default_prompts(), engine, index, embedder, metadata_client)


FULL_PLAN = plan((PlanStepKind.DATA_RETRIEVAL, Dataset.FWI),
                 (PlanStepKind.LITERATURE_REVIEW, None),
                 (PlanStepKind.RECOMMENDATION_DEVELOPMENT, None))


# -- literature query templates ----------------------------------------------------

def test_homeowner_query_mentions_species_and_place():
    query = build_literature_query(HOMEOWNER)
    assert "maximize marketable species" in query
    assert "Covington, VA" in query


def test_ecologist_query_mentions_ecological_resilience():
    query = build_literature_query(ECOLOGIST)
    assert "ecological resilience" in query


def test_identical_profiles_identical_queries():
    twin = UserProfile(**HOMEOWNER.__dict__)
    assert build_literature_query(HOMEOWNER) == build_literature_query(twin)


# -- step execution -------------------------------------------------------------------

def test_fwi_step_reports_all_twelve_means(analyst):
    ctx = fresh_context(HOMEOWNER, FULL_PLAN)
    outcome = analyst.execute_next_step(ctx, HOMEOWNER, ScriptedProvider([]))
    report = outcome.texts[0]
    for token in ("6.98", "13.1", "17.04", "19.31", "8.49", "17.31", "18.26",
                  "16.25", "11.52", "20.43", "20.5", "23.82"):
        assert token in report
    for label in ("Low", "Medium", "High"):
        assert label in report
    assert outcome.map_layers and outcome.charts
    assert outcome.context.plan.steps[0].status is StepStatus.DONE
    assert CENSUS_OFFER in outcome.texts[-1]
    assert outcome.context.census_offer_pending


def test_paleofire_empty_region_cautionary_with_alternatives(embedder, index):
    empty_engine = GeodataEngine()  # no datasets at all
    analyst = AnalystAgent(default_prompts(), empty_engine, index, embedder)
    the_plan = plan((PlanStepKind.DATA_RETRIEVAL, Dataset.PALEOFIRE_HISTORY))
    ctx = fresh_context(HOMEOWNER, the_plan)
    outcome = analyst.execute_next_step(ctx, HOMEOWNER, ScriptedProvider([]))
    assert "preliminary" in outcome.texts[0]
    assert "alternative resources" in outcome.texts[1]
    assert not outcome.context.census_offer_pending


def test_literature_step_uses_profile_conditioned_template(analyst):
    ctx = fresh_context(HOMEOWNER, FULL_PLAN)
    after_fwi = analyst.execute_next_step(ctx, HOMEOWNER, ScriptedProvider([]))
    outcome = analyst.execute_next_step(after_fwi.context, HOMEOWNER,
                                        ScriptedProvider([]))
    block = outcome.texts[0]
    assert build_literature_query(HOMEOWNER) in block
    assert outcome.retrieval_payloads


def test_recommendation_prompt_contains_profile_and_all_reports(analyst):
    provider = ScriptedProvider([ChatResponse(text="Do the sensible things.")])
    ctx = fresh_context(HOMEOWNER, FULL_PLAN)
    ctx = analyst.execute_next_step(ctx, HOMEOWNER, ScriptedProvider([])).context
    ctx = analyst.execute_next_step(ctx, HOMEOWNER, ScriptedProvider([])).context
    outcome = analyst.execute_next_step(ctx, HOMEOWNER, provider)
    assert outcome.texts == ("Do the sensible things.",)
    sent = provider.requests[0].messages[0].content
    assert ctx.profile_summary in sent
    for finding in ctx.findings:
        assert str(finding["report"]) in sent


def test_steps_complete_in_order_never_twice(analyst):
    ctx = fresh_context(HOMEOWNER, FULL_PLAN)
    seen = []
    provider = ScriptedProvider([ChatResponse(text="recs")])
    for _ in range(3):
        index_before = ctx.next_step_index
        seen.append(index_before)
        ctx = analyst.execute_next_step(ctx, HOMEOWNER, provider).context
    assert seen == [0, 1, 2]
    assert ctx.next_step_index is None
    done = analyst.execute_next_step(ctx, HOMEOWNER, ScriptedProvider([]))
    assert "plan is complete" in done.texts[0].lower()


def test_report_numerics_subset_of_payload(analyst):
    ctx = fresh_context(HOMEOWNER, FULL_PLAN)
    outcome = analyst.execute_next_step(ctx, HOMEOWNER, ScriptedProvider([]))
    sources = collect_numeric_values(list(outcome.retrieval_payloads))
    for token in extract_statistics(outcome.texts[0]):
        assert token.value in sources


# -- follow-ups ------------------------------------------------------------------------

def advanced_context(analyst):
    ctx = fresh_context(HOMEOWNER, FULL_PLAN)
    return analyst.execute_next_step(ctx, HOMEOWNER, ScriptedProvider([])).context


def test_followup_requires_completed_step(analyst):
    ctx = fresh_context(HOMEOWNER, FULL_PLAN)
    with pytest.raises(ValueError):
        analyst.answer_followup(ctx, HOMEOWNER, "census?", ScriptedProvider([]))


def test_census_followup_invokes_census_summary(analyst):
    ctx = advanced_context(analyst)
    outcome = analyst.answer_followup(ctx, HOMEOWNER,
                                      "what about poverty in the area?",
                                      ScriptedProvider([]))
    assert "Census profile" in outcome.texts[0]
    assert "Below poverty line" in outcome.texts[0]
    assert outcome.context.followup_retrievals == 1


def test_unavailable_scenario_is_refused(analyst):
    ctx = advanced_context(analyst)
    outcome = analyst.answer_followup(ctx, HOMEOWNER, "show RCP 8.5 instead",
                                      ScriptedProvider([]))
    assert "not available" in outcome.texts[0]
    assert outcome.context is ctx


def test_proceed_executes_next_step(analyst):
    ctx = advanced_context(analyst)
    outcome = analyst.answer_followup(ctx, HOMEOWNER, "proceed",
                                      ScriptedProvider([]))
    assert outcome.context.next_step_index == 2
    assert "Literature search" in outcome.texts[0]


def test_followups_always_offer_explore_or_proceed(analyst):
    ctx = advanced_context(analyst)
    grounded = analyst.answer_followup(
        ctx, HOMEOWNER, "tell me more about the spring values",
        ScriptedProvider([ChatResponse(text="Spring values rise.")]))
    assert EXPLORE_OR_PROCEED in grounded.texts[-1]
    census = analyst.answer_followup(ctx, HOMEOWNER, "census please",
                                     ScriptedProvider([]))
    assert EXPLORE_OR_PROCEED in census.texts[-1]


def test_followup_retrievals_bounded(analyst):
    ctx = advanced_context(analyst)
    for _ in range(MAX_FOLLOWUP_RETRIEVALS):
        ctx = analyst.answer_followup(ctx, HOMEOWNER, "census again",
                                      ScriptedProvider([])).context
    outcome = analyst.answer_followup(ctx, HOMEOWNER, "census once more",
                                      ScriptedProvider([]))
    assert "budget" in outcome.texts[0]
    assert outcome.context.followup_retrievals == MAX_FOLLOWUP_RETRIEVALS
