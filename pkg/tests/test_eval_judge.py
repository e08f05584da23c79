"""Judge prompting and parsing, plus the similarity report."""

from __future__ import annotations

import numpy as np
import pytest

from wildfire_advisor.evalharness import (
    JUDGE_QUESTIONS,
    Criterion,
    Label,
    adjust_pronouns,
    embedding_similarity_report,
    judge_response,
)
from wildfire_advisor.literature import HashingEmbedder, cosine
from wildfire_advisor.llm.gateway import ChatResponse, TransportError
from wildfire_advisor.llm.scripted import ScriptedProvider
from wildfire_advisor.prompts_loader import default_prompts

BUNDLE = {
    "profile": "Homeowner near Covington, VA",
    "prior_queries": ["What is the spring fire risk?"],
    "retrieved": ["Spring end-of-century mean 23.82 (High)"],
    "response": "Spring fire weather is projected to reach high risk.",
}

RELEVANCE_REPLY = "\n".join([
    "1. Yes — directly answers the question.",
    "2. Yes: suited to a homeowner.",
    "3. Could be better - partially addresses the concern.",
    "4. Yes: location-specific.",
    "5. Not applicable — no timeline in the response.",
    "6. No: scope not addressed.",
])


def test_pronoun_adjustment():
    assert adjust_pronouns("Does my response answer your last question?") == \
        "Does the response answer the user's last question?"
    assert adjust_pronouns("Is my response relevant to your profession?") == \
        "Is the response relevant to the user's profession?"


def test_judge_prompt_contains_bundle_and_adjusted_questions():
    provider = ScriptedProvider([ChatResponse(text=RELEVANCE_REPLY)])
    judge_response(BUNDLE, JUDGE_QUESTIONS[Criterion.RELEVANCE], provider,
                   default_prompts())
    sent = provider.requests[0].messages[0].content
    assert "Homeowner near Covington, VA" in sent
    assert "the user's last question" in sent
    assert "my response" not in sent


def test_judge_labels_parsed():
    provider = ScriptedProvider([ChatResponse(text=RELEVANCE_REPLY)])
    outcome = judge_response(BUNDLE, JUDGE_QUESTIONS[Criterion.RELEVANCE],
                             provider, default_prompts())
    labels = dict(outcome.labels)
    assert labels["relevance_last_question"] is Label.YES
    assert labels["relevance_concern"] is Label.COULD_BE_BETTER
    assert labels["relevance_timeline"] is Label.NOT_APPLICABLE
    assert labels["relevance_scope"] is Label.NO
    assert outcome.parse_failures == ()
    assert "directly answers" in outcome.rationales[0]


def test_could_be_better_colon_form():
    reply = "1. Could be better: needs concrete steps."
    provider = ScriptedProvider([ChatResponse(text=reply)])
    outcome = judge_response(BUNDLE, JUDGE_QUESTIONS[Criterion.ENTAILMENT],
                             provider, default_prompts())
    assert outcome.labels[0][1] is Label.COULD_BE_BETTER


def test_garbage_then_valid_succeeds_on_retry():
    provider = ScriptedProvider([
        ChatResponse(text="I think it is fine overall."),
        ChatResponse(text="1. Yes: follows from the data."),
    ])
    outcome = judge_response(BUNDLE, JUDGE_QUESTIONS[Criterion.ENTAILMENT],
                             provider, default_prompts())
    assert outcome.labels[0][1] is Label.YES
    assert provider.remaining == 0


def test_garbage_twice_defaults_to_not_applicable_with_flag():
    provider = ScriptedProvider([
        ChatResponse(text="nonsense"), ChatResponse(text="more nonsense")])
    outcome = judge_response(BUNDLE, JUDGE_QUESTIONS[Criterion.ENTAILMENT],
                             provider, default_prompts())
    assert outcome.labels[0][1] is Label.NOT_APPLICABLE
    assert outcome.parse_failures == ("entailment_follows",)


def test_provider_failure_records_error():
    class DownProvider:
        def send(self, request):
            raise TransportError("outage")

    outcome = judge_response(BUNDLE, JUDGE_QUESTIONS[Criterion.ENTAILMENT],
                             DownProvider(), default_prompts())
    assert outcome.labels == ()
    assert "outage" in outcome.error


# -- similarity report ---------------------------------------------------------------

def test_identical_text_scores_one():
    embedder = HashingEmbedder(dimension=64)
    text = "prescribed burns reduce fuel loads"
    assert embedding_similarity_report(text, [text], embedder) == \
        pytest.approx(1.0, abs=1e-6)


def test_orthogonal_vectors_score_zero():
    class AxisEmbedder:
        dimension = 4

        def embed(self, text):
            v = np.zeros(4)
            v[0 if "a" in text else 1] = 1.0
            return v

    assert embedding_similarity_report("aaa", ["bbb"], AxisEmbedder()) == 0.0


def test_mean_matches_direct_computation():
    embedder = HashingEmbedder(dimension=64)
    response = "thinning and prescribed fire around the wildland urban interface"
    abstracts = ["fuel treatments moderate wildfire behavior",
                 "flood insurance pricing in coastal towns",
                 "defensible space and home survival"]
    expected = sum(
        cosine(embedder.embed(response), embedder.embed(a)) for a in abstracts
    ) / len(abstracts)
    got = embedding_similarity_report(response, abstracts, embedder)
    assert got == pytest.approx(expected, abs=1e-12)


def test_requires_abstracts():
    with pytest.raises(ValueError):
        embedding_similarity_report("x", [], HashingEmbedder(dimension=8))
