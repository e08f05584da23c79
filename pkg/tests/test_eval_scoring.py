"""Questionnaire scoring and agreement: table arithmetic reproduction."""

from __future__ import annotations

import random

import pytest

from wildfire_advisor.evalharness import (
    Criterion,
    EvalRecord,
    Label,
    aggregate_case_scores,
    agreement,
    score_questionnaire,
)

# Raw per-case (score, count) pairs from the two results tables.
RELEVANCE_CASES = {
    "last_question": ([(17, 18), (6, 6), (5, 5), (3, 3), (5, 5), (7, 7), (3, 3),
                       (6.5, 7), (3.5, 4), (2, 2)], 97.48, 96.67),
    "profession": ([(18, 18), (7, 7), (6, 6), (2.5, 3), (7, 7), (7, 7), (4, 4),
                    (8, 9), (4, 4), (4, 4)], 97.22, 97.83),
    "concern": ([(18, 18), (7, 7), (6, 6), (3, 3), (7, 7), (7, 7), (4, 4),
                 (9, 9), (4, 4), (4, 4)], 100.00, 100.00),
    "location": ([(18, 18), (7, 7), (6, 6), (3, 3), (7, 7), (7, 7), (3.5, 4),
                  (8, 9), (4, 4), (4, 4)], 97.64, 97.83),
    "time": ([(18, 18), (7, 7), (5.5, 6), (3, 3), (7, 7), (7, 7), (4, 4),
              (9, 9), (4, 4), (3.5, 4)], 97.92, 98.55),
    "scope": ([(18, 18), (7, 7), (6, 6), (3, 3), (7, 7), (7, 7), (4, 4),
               (9, 9), (4, 4), (4, 4)], 100.00, 100.00),
}

QUALITY_CASES = {
    "entailment": ([(11, 13), (7, 7), (5.5, 6), (3, 3), (6, 6), (6.5, 7), (3, 3),
                    (6, 6), (1.5, 2), (2.5, 3)], 92.75, 92.86),
    "no_jargon": ([(17, 17), (7, 7), (6, 6), (3, 3), (7, 7), (7, 7), (4, 4),
                   (8, 8), (4.5, 5), (4, 4)], 99.00, 99.26),
    "enough_explanation": ([(16, 17), (7, 7), (5.5, 6), (3, 3), (7, 7), (7, 7),
                            (4, 4), (7, 8), (2.5, 5), (4, 4)], 92.33, 92.65),
    "no_redundancy": ([(14.5, 17), (7, 7), (6, 6), (3, 3), (7, 7), (7, 7), (4, 4),
                       (7, 8), (5, 5), (4, 4)], 97.28, 94.85),
}


# -- questionnaire scoring ----------------------------------------------------------

def test_label_score_mapping():
    score = score_questionnaire([
        ("q1", Label.YES), ("q2", Label.COULD_BE_BETTER), ("q3", Label.NO)])
    assert dict(score.per_question) == {"q1": 1.0, "q2": 0.5, "q3": 0.0}
    assert score.total == 1.5
    assert score.count == 3
    assert score.percent == pytest.approx(50.0)


def test_counts_giving_58_of_60():
    answers = [("q", Label.YES)] * 57 + [("q", Label.COULD_BE_BETTER)] * 2 \
        + [("q", Label.NO)]
    score = score_questionnaire(answers)
    assert score.total == 58.0 and score.count == 60
    assert round(score.percent, 2) == 96.67


def test_counts_giving_52_of_56():
    answers = [("q", Label.YES)] * 50 + [("q", Label.COULD_BE_BETTER)] * 4 \
        + [("q", Label.NO)] * 2
    score = score_questionnaire(answers)
    assert score.total == 52.0 and score.count == 56
    assert round(score.percent, 2) == 92.86


def test_all_yes_is_hundred():
    score = score_questionnaire([("q", Label.YES)] * 10)
    assert score.percent == 100.0


def test_unknown_label_rejected():
    with pytest.raises(ValueError):
        score_questionnaire([("q", Label.NOT_APPLICABLE)])


# -- aggregates -------------------------------------------------------------------------

@pytest.mark.parametrize("name,case", list(RELEVANCE_CASES.items())
                         + list(QUALITY_CASES.items()))
def test_aggregate_reproduces_table_cells(name, case):
    raw, expected_avg, expected_overall = case
    aggregates = aggregate_case_scores(raw)
    assert round(aggregates.average_percent, 2) == expected_avg, name
    assert round(aggregates.overall_percent, 2) == expected_overall, name


def test_single_case_aggregates_equal():
    aggregates = aggregate_case_scores([(7, 9)])
    assert aggregates.average_percent == aggregates.overall_percent


def test_adding_a_no_strictly_decreases_both():
    base = [(6, 6), (5, 5)]
    with_no = [(6, 7), (5, 5)]  # one more question answered "No"
    before = aggregate_case_scores(base)
    after = aggregate_case_scores(with_no)
    assert after.average_percent < before.average_percent
    assert after.overall_percent < before.overall_percent


def test_counts_must_be_positive():
    with pytest.raises(ValueError):
        aggregate_case_scores([(1, 0)])
    with pytest.raises(ValueError):
        aggregate_case_scores([])


# -- agreement -----------------------------------------------------------------------------

def build_records(criterion: Criterion, agree: int, yes_cbb: int,
                  other_disagree: int) -> list[EvalRecord]:
    records = []
    for _ in range(agree):
        records.append(EvalRecord(criterion=criterion, question_id="q",
                                  human=Label.YES, judge=Label.YES))
    for _ in range(yes_cbb):
        records.append(EvalRecord(criterion=criterion, question_id="q",
                                  human=Label.YES, judge=Label.COULD_BE_BETTER))
    for _ in range(other_disagree):
        records.append(EvalRecord(criterion=criterion, question_id="q",
                                  human=Label.YES, judge=Label.NO))
    return records


def test_agreement_reproduces_published_percentages():
    records = (
        build_records(Criterion.RELEVANCE, agree=97, yes_cbb=51, other_disagree=6)
        + build_records(Criterion.ENTAILMENT, agree=15, yes_cbb=2, other_disagree=3)
        + build_records(Criterion.ACCESSIBILITY, agree=56, yes_cbb=22,
                        other_disagree=6)
    )
    stats = agreement(records)
    relevance = stats[Criterion.RELEVANCE]
    assert (relevance.agree, relevance.total) == (97, 154)
    assert round(relevance.percent, 2) == 62.99
    assert relevance.yes_vs_could_be_better == 51
    assert round(relevance.yes_vs_could_be_better_share, 2) == 89.47
    entailment = stats[Criterion.ENTAILMENT]
    assert (entailment.agree, entailment.total) == (15, 20)
    assert round(entailment.percent, 2) == 75.00
    assert round(entailment.yes_vs_could_be_better_share, 2) == 40.00
    accessibility = stats[Criterion.ACCESSIBILITY]
    assert (accessibility.agree, accessibility.total) == (56, 84)
    assert round(accessibility.percent, 2) == 66.67
    assert round(accessibility.yes_vs_could_be_better_share, 2) == 78.57


def test_all_matching_is_hundred():
    stats = agreement(build_records(Criterion.ENTAILMENT, 12, 0, 0))
    assert stats[Criterion.ENTAILMENT].percent == 100.0


def test_not_applicable_judgments_excluded():
    records = build_records(Criterion.RELEVANCE, 3, 1, 0) + [
        EvalRecord(criterion=Criterion.RELEVANCE, question_id="q",
                   human=Label.YES, judge=Label.NOT_APPLICABLE)]
    stats = agreement(records)[Criterion.RELEVANCE]
    assert stats.total == 4
    assert stats.excluded_not_applicable == 1


def test_agreement_invariant_under_reordering():
    records = build_records(Criterion.ACCESSIBILITY, 10, 4, 2)
    shuffled = records[:]
    random.Random(1).shuffle(shuffled)
    a = agreement(records)[Criterion.ACCESSIBILITY]
    b = agreement(shuffled)[Criterion.ACCESSIBILITY]
    assert a == b


def test_human_labels_three_point_only():
    with pytest.raises(ValueError):
        EvalRecord(criterion=Criterion.RELEVANCE, question_id="q",
                   human=Label.NOT_APPLICABLE, judge=Label.YES)
