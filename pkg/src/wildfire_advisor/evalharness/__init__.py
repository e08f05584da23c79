"""Evaluation framework: fidelity, questionnaire scoring, judging, agreement."""

from wildfire_advisor.evalharness.stats import (
    FidelityResult,
    StatisticToken,
    citation_precision,
    collect_numeric_values,
    extract_statistics,
    fidelity_precision,
    parse_literature_block_titles,
)
from wildfire_advisor.evalharness.scoring import (
    AggregateScores,
    Criterion,
    EvalRecord,
    Label,
    QuestionnaireScore,
    agreement,
    aggregate_case_scores,
    score_questionnaire,
)
from wildfire_advisor.evalharness.judge import (
    JUDGE_QUESTIONS,
    JudgeOutcome,
    adjust_pronouns,
    judge_response,
)
from wildfire_advisor.evalharness.similarity import embedding_similarity_report

__all__ = [
    "AggregateScores",
    "Criterion",
    "EvalRecord",
    "FidelityResult",
    "JUDGE_QUESTIONS",
    "JudgeOutcome",
    "Label",
    "QuestionnaireScore",
    "StatisticToken",
    "adjust_pronouns",
    "aggregate_case_scores",
    "agreement",
    "citation_precision",
    "collect_numeric_values",
    "embedding_similarity_report",
    "extract_statistics",
    "fidelity_precision",
    "judge_response",
    "parse_literature_block_titles",
    "score_questionnaire",
]
