"""Structured reports over retrieval payloads.

Every numeric that appears in a rendered report is formatted from a value
present in the payload itself; the evaluation harness relies on this to
verify statistic fidelity token by token.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Union

from wildfire_advisor.model import Dataset, PERIOD_LABELS, Season
from wildfire_advisor.geo.engine import (
    CensusQueryResult,
    FwiQueryResult,
    IncidentQueryResult,
    PaleofireQueryResult,
)

CAUTIONARY_MESSAGE = (
    "No location-specific data is available for this request, so any guidance "
    "at this stage is preliminary. Please seek further investigation or expert "
    "advice before implementing significant changes."
)

MONTH_NAMES = {
    1: "January", 2: "February", 3: "March", 4: "April", 5: "May", 6: "June",
    7: "July", 8: "August", 9: "September", 10: "October", 11: "November",
    12: "December",
}

SEASON_TITLES = {
    Season.WINTER: "Winter", Season.SPRING: "Spring",
    Season.SUMMER: "Summer", Season.AUTUMN: "Autumn",
}

QueryPayload = Union[FwiQueryResult, IncidentQueryResult,
                     PaleofireQueryResult, CensusQueryResult]


def fmt_num(value: float | int) -> str:
    """Canonical token for a payload number (shortest-repr floats)."""
    return str(value)


@dataclass(frozen=True)
class DataReport:
    dataset: Dataset
    headline: str
    statistics: tuple[tuple[str, str], ...] = field(default_factory=tuple)
    caveats: tuple[str, ...] = field(default_factory=tuple)
    cautionary: bool = False

    @property
    def text(self) -> str:
        lines = [self.headline]
        lines.extend(f"- {label}: {value}" for label, value in self.statistics)
        lines.extend(self.caveats)
        return "\n".join(lines)


def render_data_report(kind: Dataset, payload: QueryPayload) -> DataReport:
    """Render the structured report for one retrieval payload."""
    if kind is Dataset.FWI:
        return _render_fwi(payload)
    if kind is Dataset.RECENT_INCIDENTS:
        return _render_incidents(payload)
    if kind is Dataset.PALEOFIRE_HISTORY:
        return _render_paleofire(payload)
    if kind is Dataset.CENSUS:
        return _render_census(payload)
    raise ValueError(f"unknown dataset {kind!r}")


def _cautionary(kind: Dataset, headline: str) -> DataReport:
    return DataReport(dataset=kind, headline=headline,
                      caveats=(CAUTIONARY_MESSAGE,), cautionary=True)


def _render_fwi(payload: FwiQueryResult) -> DataReport:
    if payload.coverage_gap or payload.summary is None:
        return _cautionary(Dataset.FWI,
                           "No Fire Weather Index coverage at this location.")
    rows: list[tuple[str, str]] = []
    for (season, period), stat in sorted(
        payload.summary.stats.items(),
        key=lambda item: (list(PERIOD_LABELS).index(item[0][1]), item[0][0].value),
    ):
        label = f"{SEASON_TITLES[season]}, {PERIOD_LABELS[period]}"
        rows.append((label, f"mean {fmt_num(stat.mean)} ({stat.risk.label}), "
                            f"std {fmt_num(stat.std)}"))
    headline = (f"Fire Weather Index summary across {fmt_num(payload.summary.cell_count)} "
                f"grid cells within {fmt_num(payload.radius_km)} km.")
    return DataReport(dataset=Dataset.FWI, headline=headline, statistics=tuple(rows))


def _render_incidents(payload: IncidentQueryResult) -> DataReport:
    if payload.coverage_gap:
        return _cautionary(Dataset.RECENT_INCIDENTS,
                           "No recorded wildfire incidents at this location.")
    rows: list[tuple[str, str]] = [("Total incidents", fmt_num(payload.count))]
    for year, count in sorted(payload.trends.yearly.items()):
        rows.append((f"Incidents in {year}", fmt_num(count)))
    for month, count in sorted(payload.trends.monthly.items()):
        if count:
            rows.append((f"Incidents in {MONTH_NAMES[month]}", fmt_num(count)))
    headline = (f"{fmt_num(payload.count)} wildfire incidents within "
                f"{fmt_num(payload.radius_km)} km.")
    return DataReport(dataset=Dataset.RECENT_INCIDENTS, headline=headline,
                      statistics=tuple(rows))


def _render_paleofire(payload: PaleofireQueryResult) -> DataReport:
    if payload.coverage_gap:
        return _cautionary(Dataset.PALEOFIRE_HISTORY,
                           "No long-term fire history sites are available here.")
    rows = [
        (site.site_name,
         f"{fmt_num(distance)} km away; publications: "
         + ("; ".join(site.publications) if site.publications else "none on file"))
        for site, distance in zip(payload.sites, payload.distances_km)
    ]
    caveats: tuple[str, ...] = ()
    if payload.partial:
        caveats = (f"Only {fmt_num(len(payload.sites))} of the requested "
                   f"{fmt_num(payload.k)} study sites exist in the dataset.",)
    headline = f"Nearest {fmt_num(len(payload.sites))} long-term fire history sites."
    return DataReport(dataset=Dataset.PALEOFIRE_HISTORY, headline=headline,
                      statistics=tuple(rows), caveats=caveats)


def _render_census(payload: CensusQueryResult) -> DataReport:
    totals = payload.summary
    if payload.coverage_gap:
        return DataReport(
            dataset=Dataset.CENSUS,
            headline="No census block groups intersect this area.",
            statistics=(("Block groups", fmt_num(0)),),
            caveats=(CAUTIONARY_MESSAGE,),
            cautionary=True,
        )
    rows = (
        ("Block groups", fmt_num(totals.block_count)),
        ("Total population", fmt_num(totals.total_population)),
        ("Below poverty line", fmt_num(totals.below_poverty)),
        ("Below half the poverty threshold", fmt_num(totals.below_half_poverty)),
        ("Housing units", fmt_num(totals.housing_units)),
    )
    headline = (f"Census profile across {fmt_num(totals.block_count)} block groups "
                f"within {fmt_num(payload.radius_km)} km.")
    return DataReport(dataset=Dataset.CENSUS, headline=headline, statistics=rows)
