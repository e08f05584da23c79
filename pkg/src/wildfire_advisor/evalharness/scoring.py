"""Questionnaire scoring, aggregate arithmetic, and judge/human agreement."""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass
from enum import Enum
from typing import Iterable, Optional, Sequence


class Criterion(Enum):
    RELEVANCE = "relevance"
    ENTAILMENT = "entailment"
    ACCESSIBILITY = "accessibility"


class Label(Enum):
    YES = "yes"
    COULD_BE_BETTER = "could_be_better"
    NO = "no"
    NOT_APPLICABLE = "not_applicable"  # judge-only


HUMAN_LABELS = (Label.YES, Label.COULD_BE_BETTER, Label.NO)

LABEL_SCORES = {Label.YES: 1.0, Label.COULD_BE_BETTER: 0.5, Label.NO: 0.0}


def parse_label(text: str) -> Label:
    normalized = text.strip().lower().replace("-", " ").replace("_", " ")
    mapping = {
        "yes": Label.YES,
        "no": Label.NO,
        "could be better": Label.COULD_BE_BETTER,
        "not applicable": Label.NOT_APPLICABLE,
        "na": Label.NOT_APPLICABLE,
        "n a": Label.NOT_APPLICABLE,
    }
    if normalized not in mapping:
        raise ValueError(f"unknown judgment label {text!r}")
    return mapping[normalized]


@dataclass(frozen=True)
class EvalRecord:
    """One judged response: criterion, question, human and judge labels."""

    criterion: Criterion
    question_id: str
    human: Label
    judge: Label
    rationale: str = ""

    def __post_init__(self) -> None:
        if self.human not in HUMAN_LABELS:
            raise ValueError("human labels use the three-point scale")


@dataclass(frozen=True)
class QuestionnaireScore:
    per_question: tuple[tuple[str, float], ...]
    total: float
    count: int

    @property
    def percent(self) -> float:
        return 100.0 * self.total / self.count if self.count else 0.0


def score_questionnaire(
        answers: Sequence[tuple[str, Label]]) -> QuestionnaireScore:
    """Yes = 1, Could be better = 0.5, No = 0; totals as (sum, count, percent)."""
    per_question: list[tuple[str, float]] = []
    for question_id, label in answers:
        if label not in LABEL_SCORES:
            raise ValueError(f"label {label} is not scoreable")
        per_question.append((question_id, LABEL_SCORES[label]))
    total = sum(score for _, score in per_question)
    return QuestionnaireScore(per_question=tuple(per_question),
                              total=total, count=len(per_question))


@dataclass(frozen=True)
class AggregateScores:
    average_percent: float  # unweighted mean of the per-case percentages
    overall_percent: float  # pooled sum / pooled count
    pooled_score: float
    pooled_count: float


def aggregate_case_scores(
        cases: Sequence[tuple[float, float]]) -> AggregateScores:
    """Aggregate per-case (score, count) pairs the way the result tables do."""
    if not cases:
        raise ValueError("at least one case is required")
    if any(count <= 0 for _, count in cases):
        raise ValueError("case counts must be positive")
    percents = [100.0 * score / count for score, count in cases]
    pooled_score = sum(score for score, _ in cases)
    pooled_count = sum(count for _, count in cases)
    return AggregateScores(
        average_percent=sum(percents) / len(percents),
        overall_percent=100.0 * pooled_score / pooled_count,
        pooled_score=pooled_score,
        pooled_count=pooled_count,
    )


@dataclass(frozen=True)
class AgreementStats:
    agree: int
    total: int
    excluded_not_applicable: int
    yes_vs_could_be_better: int

    @property
    def percent(self) -> Optional[float]:
        return 100.0 * self.agree / self.total if self.total else None

    @property
    def disagreements(self) -> int:
        return self.total - self.agree

    @property
    def yes_vs_could_be_better_share(self) -> Optional[float]:
        if not self.disagreements:
            return None
        return 100.0 * self.yes_vs_could_be_better / self.disagreements


def agreement(records: Iterable[EvalRecord]) -> dict[Criterion, AgreementStats]:
    """Exact-label agreement per criterion.

    Judge NotApplicable records are excluded from the denominator: the
    three-point human scale has nothing for them to match.
    """
    counts: dict[Criterion, dict[str, int]] = defaultdict(
        lambda: {"agree": 0, "total": 0, "excluded": 0, "yes_cbb": 0})
    for record in records:
        bucket = counts[record.criterion]
        if record.judge is Label.NOT_APPLICABLE:
            bucket["excluded"] += 1
            continue
        bucket["total"] += 1
        if record.human is record.judge:
            bucket["agree"] += 1
        elif {record.human, record.judge} == {Label.YES, Label.COULD_BE_BETTER}:
            bucket["yes_cbb"] += 1
    return {
        criterion: AgreementStats(
            agree=c["agree"], total=c["total"],
            excluded_not_applicable=c["excluded"],
            yes_vs_could_be_better=c["yes_cbb"])
        for criterion, c in counts.items()
    }
