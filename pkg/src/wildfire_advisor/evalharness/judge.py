"""Model-as-judge: rubric prompting, reply parsing, one reprompt on garbage."""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Any, Mapping, Optional, Sequence

from wildfire_advisor.model import Role
from wildfire_advisor.llm.gateway import (
    ChatMessage,
    ChatRequest,
    GatewayError,
    Provider,
    complete,
)
from wildfire_advisor.evalharness.scoring import Criterion, Label, parse_label
from wildfire_advisor.prompts_loader import PromptSet

# Rubric questions, phrased from the assistant's perspective; ids are stable.
JUDGE_QUESTIONS: dict[Criterion, tuple[tuple[str, str], ...]] = {
    Criterion.RELEVANCE: (
        ("relevance_last_question", "Does my response answer your last question?"),
        ("relevance_profession", "Is my response relevant to your profession?"),
        ("relevance_concern", "Is my response relevant to your concern?"),
        ("relevance_location", "Is my response relevant to your location?"),
        ("relevance_timeline", "Is my response relevant to your timeline?"),
        ("relevance_scope", "Is my response relevant to your scope?"),
    ),
    Criterion.ENTAILMENT: (
        ("entailment_follows",
         "Do my analyses or recommendations logically follow from the "
         "information (data, literature) provided?"),
    ),
    Criterion.ACCESSIBILITY: (
        ("accessibility_jargon", "Does my response contain too much jargon?"),
        ("accessibility_explanation", "Does my response provide enough explanation?"),
        ("accessibility_redundancy",
         "Does my response contain redundant or useless information?"),
    ),
}

_LINE_RE = re.compile(
    r"^\s*(\d+)[.)]\s*(not applicable|could be better|yes|no)\b"
    r"\s*[:.\-–—]?\s*(.*)$",
    re.IGNORECASE)


def adjust_pronouns(question: str) -> str:
    """First-person rubric wording -> third-person judge wording."""
    adjusted = re.sub(r"\bmy\b", "the", question)
    adjusted = re.sub(r"\bMy\b", "The", adjusted)
    adjusted = re.sub(r"\byour\b", "the user's", adjusted)
    adjusted = re.sub(r"\bYour\b", "The user's", adjusted)
    return adjusted


@dataclass(frozen=True)
class JudgeOutcome:
    labels: tuple[tuple[str, Label], ...]  # (question id, judge label)
    rationales: tuple[str, ...]
    parse_failures: tuple[str, ...] = ()  # question ids defaulted on parse failure
    error: Optional[str] = None


def _bundle_text(bundle: Mapping[str, Any]) -> str:
    sections = [
        ("User profile", bundle.get("profile", "")),
        ("Previous queries", bundle.get("prior_queries", "")),
        ("Retrieved data and literature", bundle.get("retrieved", "")),
        ("Response under review", bundle.get("response", "")),
    ]
    parts = []
    for heading, body in sections:
        if isinstance(body, (list, tuple)):
            body = "\n".join(str(item) for item in body)
        parts.append(f"{heading}:\n{body}")
    return "\n\n".join(parts)


def _questions_text(questions: Sequence[tuple[str, str]]) -> str:
    return "\n".join(
        f"{number}. {adjust_pronouns(text)}"
        for number, (_, text) in enumerate(questions, start=1))


def _parse_reply(reply: str,
                 questions: Sequence[tuple[str, str]]) -> Optional[list[tuple[str, Label, str]]]:
    found: dict[int, tuple[Label, str]] = {}
    for line in reply.splitlines():
        match = _LINE_RE.match(line)
        if not match:
            continue
        number = int(match.group(1))
        try:
            label = parse_label(match.group(2))
        except ValueError:
            continue
        found[number] = (label, match.group(3).strip())
    if len(found) != len(questions) or set(found) != set(range(1, len(questions) + 1)):
        return None
    return [
        (questions[number - 1][0], found[number][0], found[number][1])
        for number in sorted(found)
    ]


def judge_response(
    bundle: Mapping[str, Any],
    questions: Sequence[tuple[str, str]],
    llm: Provider,
    prompts: PromptSet,
) -> JudgeOutcome:
    """Grade one response bundle; never raises on parse or provider trouble."""
    content = _bundle_text(bundle) + "\n\nQuestions:\n" + _questions_text(questions)
    request = ChatRequest(
        system_prompt=prompts.get("judge_system").strip(),
        messages=(ChatMessage(role=Role.USER, content=content),),
    )
    try:
        response = complete(llm, request)
        parsed = _parse_reply(response.text or "", questions)
        if parsed is None:
            reminder = ChatMessage(
                role=Role.USER,
                content=("Your previous reply was not parseable. Answer again "
                         "with exactly one line per question: "
                         "'<number>. <Yes|No|Could be better|Not applicable>: "
                         "<explanation>'."))
            retry = ChatRequest(system_prompt=request.system_prompt,
                                messages=request.messages + (reminder,))
            second = complete(llm, retry)
            parsed = _parse_reply(second.text or "", questions)
    except GatewayError as exc:
        return JudgeOutcome(labels=(), rationales=(), error=str(exc))
    if parsed is None:
        return JudgeOutcome(
            labels=tuple((qid, Label.NOT_APPLICABLE) for qid, _ in questions),
            rationales=tuple("" for _ in questions),
            parse_failures=tuple(qid for qid, _ in questions),
        )
    return JudgeOutcome(
        labels=tuple((qid, label) for qid, label, _ in parsed),
        rationales=tuple(rationale for _, _, rationale in parsed),
    )
