"""Statistic extraction and information-fidelity precision.

A reported statistic counts as correct when its normalized value appears in
the retrieval payloads. Percent tokens get a small absolute slack and match
both the percent and the fractional form, since prose rounds; everything
else must match exactly after numeric normalization (so "20.50" equals
20.5). Year-like tokens are excluded by default and that is configurable.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Any, Iterable, Optional, Sequence

_TOKEN_RE = re.compile(r"(?:\d{1,3}(?:,\d{3})+|\d+)(?:\.\d+)?%?")
_SIGNS = "-+−"
_WORDLIKE = re.compile(r"[\w.]")

PERCENT_SLACK = 0.05

YEAR_RANGE = (1800, 2199)


@dataclass(frozen=True)
class StatisticToken:
    surface: str
    value: float
    unit: Optional[str] = None
    position: int = 0

    @property
    def is_percent(self) -> bool:
        return self.unit == "%"

    @property
    def is_year_like(self) -> bool:
        if self.unit is not None:
            return False
        if "." in self.surface or "," in self.surface:
            return False
        return YEAR_RANGE[0] <= self.value <= YEAR_RANGE[1]


def extract_statistics(text: str) -> list[StatisticToken]:
    """Every maximal numeric token (integers, decimals, percents, signed)."""
    tokens: list[StatisticToken] = []
    for match in _TOKEN_RE.finditer(text):
        start = match.start()
        before = text[start - 1] if start > 0 else ""
        if before and _WORDLIKE.match(before):
            continue  # embedded in an identifier or a decimal tail
        surface = match.group()
        position = start
        if before in _SIGNS:
            prior = text[start - 2] if start > 1 else ""
            # A sign only counts when it follows a delimiter, not a digit
            # or another sign (so ranges like 2015--2023 stay positive).
            if not (prior and (_WORDLIKE.match(prior) or prior in _SIGNS)):
                surface = before + surface
                position = start - 1
        unit = None
        numeric = surface
        if numeric.endswith("%"):
            unit = "%"
            numeric = numeric[:-1]
        value = float(numeric.replace(",", "").replace("−", "-"))
        tokens.append(StatisticToken(surface=surface, value=value,
                                     unit=unit, position=position))
    return tokens


def collect_numeric_values(payload: Any) -> set[float]:
    """Gather every number reachable in a payload, including inside strings."""
    values: set[float] = set()
    _collect(payload, values)
    return values


def _collect(node: Any, values: set[float]) -> None:
    if isinstance(node, bool):
        return
    if isinstance(node, (int, float)):
        values.add(float(node))
        return
    if isinstance(node, str):
        for token in extract_statistics(node):
            values.add(token.value)
        return
    if isinstance(node, dict):
        for key, item in node.items():
            _collect(key, values)
            _collect(item, values)
        return
    if isinstance(node, (list, tuple)):
        for item in node:
            _collect(item, values)


@dataclass(frozen=True)
class FidelityResult:
    matched: int
    total: int
    precision: Optional[float]  # None when no statistics were reported

    @property
    def not_applicable(self) -> bool:
        return self.precision is None

    @property
    def percent(self) -> Optional[float]:
        return None if self.precision is None else 100.0 * self.precision


def _token_matches(token: StatisticToken, sources: set[float],
                   percent_slack: float) -> bool:
    if token.is_percent:
        return any(abs(token.value - s) <= percent_slack
                   or abs(token.value - 100.0 * s) <= percent_slack
                   for s in sources)
    return token.value in sources


def fidelity_precision(
    response_stats: Sequence[StatisticToken],
    source_stats: Iterable[float],
    include_years: bool = False,
    percent_slack: float = PERCENT_SLACK,
) -> FidelityResult:
    """matched / reported; undefined (not 0 or 1) without reported statistics."""
    sources = {float(v) for v in source_stats}
    considered = [t for t in response_stats if include_years or not t.is_year_like]
    if not considered:
        return FidelityResult(matched=0, total=0, precision=None)
    matched = sum(1 for t in considered
                  if _token_matches(t, sources, percent_slack))
    return FidelityResult(matched=matched, total=len(considered),
                          precision=matched / len(considered))


# -- citation fidelity ---------------------------------------------------------

_TITLE_MATCH_THRESHOLD = 0.90

_BLOCK_TITLE_RE = re.compile(r"^\s*\d+\.\s+(.*?)\s+\(\d{4}\)\s*$", re.MULTILINE)


def parse_literature_block_titles(block: str) -> list[str]:
    """Recover the cited titles from a rendered literature block."""
    return [m.group(1) for m in _BLOCK_TITLE_RE.finditer(block)]


def citation_precision(discussed_titles: Sequence[str],
                       retrieved_titles: Sequence[str]) -> FidelityResult:
    """Share of discussed papers that match the retrieved set by title."""
    from wildfire_advisor.literature.doi import normalized_title_similarity

    if not discussed_titles:
        return FidelityResult(matched=0, total=0, precision=None)
    matched = 0
    for title in discussed_titles:
        if any(normalized_title_similarity(title, kept) >= _TITLE_MATCH_THRESHOLD
               for kept in retrieved_titles):
            matched += 1
    return FidelityResult(matched=matched, total=len(discussed_titles),
                          precision=matched / len(discussed_titles))
