"""Facade over the loaded datasets, producing the payloads every surface shares.

The analyst agent, the HTTP data endpoints, the CLI report path, and the
console all consume these query results, so the numbers a user sees are the
numbers the engine computed, with no per-surface recomputation.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Optional

from wildfire_advisor.model import GeoPoint, PERIOD_LABELS
from wildfire_advisor.model.serialize import canonical_type
from wildfire_advisor.geo.census import CensusBlockGroup, CensusSummary, census_summary
from wildfire_advisor.geo.distance import DEFAULT_RADIUS_KM, haversine_km
from wildfire_advisor.geo.grid import (
    FwiCell,
    FwiSummary,
    map_point_to_cells,
    summarize_fwi,
)
from wildfire_advisor.geo.incidents import (
    FireIncident,
    IncidentTrends,
    incident_trends,
    incidents_within_radius,
)
from wildfire_advisor.geo.paleofire import PaleofireSite, nearest_paleofire_sites


@canonical_type("fwi_query_result")
@dataclass(frozen=True)
class FwiQueryResult:
    center: GeoPoint
    radius_km: float
    cell_ids: tuple[str, ...]
    coverage_gap: bool
    summary: Optional[FwiSummary]
    cells: tuple[FwiCell, ...]

    def to_payload(self) -> dict[str, Any]:
        return {
            "center": self.center.to_payload(),
            "radius_km": self.radius_km,
            "cell_ids": list(self.cell_ids),
            "coverage_gap": self.coverage_gap,
            "summary": self.summary.to_payload() if self.summary else None,
            "cells": [c.to_payload() for c in self.cells],
            "period_labels": {p.value: label for p, label in PERIOD_LABELS.items()},
        }

    @classmethod
    def from_payload(cls, payload: dict[str, Any]) -> "FwiQueryResult":
        return cls(
            center=GeoPoint.from_payload(payload["center"]),
            radius_km=payload["radius_km"],
            cell_ids=tuple(payload["cell_ids"]),
            coverage_gap=payload["coverage_gap"],
            summary=FwiSummary.from_payload(payload["summary"]) if payload.get("summary") else None,
            cells=tuple(FwiCell.from_payload(c) for c in payload.get("cells", ())),
        )


@canonical_type("incident_query_result")
@dataclass(frozen=True)
class IncidentQueryResult:
    center: GeoPoint
    radius_km: float
    incidents: tuple[FireIncident, ...]
    distances_km: tuple[float, ...]
    trends: IncidentTrends

    @property
    def count(self) -> int:
        return len(self.incidents)

    @property
    def coverage_gap(self) -> bool:
        return not self.incidents

    def to_payload(self) -> dict[str, Any]:
        return {
            "center": self.center.to_payload(),
            "radius_km": self.radius_km,
            "count": self.count,
            "incidents": [
                {**inc.to_payload(), "distance_km": d}
                for inc, d in zip(self.incidents, self.distances_km)
            ],
            "trends": {
                "yearly": {str(y): n for y, n in sorted(self.trends.yearly.items())},
                "monthly": {str(m): n for m, n in sorted(self.trends.monthly.items())},
            },
        }

    @classmethod
    def from_payload(cls, payload: dict[str, Any]) -> "IncidentQueryResult":
        incidents = tuple(FireIncident.from_payload(row) for row in payload["incidents"])
        distances = tuple(row["distance_km"] for row in payload["incidents"])
        trends = IncidentTrends(
            yearly={int(y): n for y, n in payload["trends"]["yearly"].items()},
            monthly={int(m): n for m, n in payload["trends"]["monthly"].items()},
        )
        return cls(center=GeoPoint.from_payload(payload["center"]),
                   radius_km=payload["radius_km"], incidents=incidents,
                   distances_km=distances, trends=trends)


@canonical_type("paleofire_query_result")
@dataclass(frozen=True)
class PaleofireQueryResult:
    center: GeoPoint
    k: int
    sites: tuple[PaleofireSite, ...]
    distances_km: tuple[float, ...]
    partial: bool

    @property
    def coverage_gap(self) -> bool:
        return not self.sites

    def to_payload(self) -> dict[str, Any]:
        return {
            "center": self.center.to_payload(),
            "k": self.k,
            "partial": self.partial,
            "sites": [
                {**site.to_payload(), "distance_km": d}
                for site, d in zip(self.sites, self.distances_km)
            ],
        }

    @classmethod
    def from_payload(cls, payload: dict[str, Any]) -> "PaleofireQueryResult":
        sites = tuple(PaleofireSite.from_payload(row) for row in payload["sites"])
        distances = tuple(row["distance_km"] for row in payload["sites"])
        return cls(center=GeoPoint.from_payload(payload["center"]), k=payload["k"],
                   sites=sites, distances_km=distances, partial=payload["partial"])


@canonical_type("census_query_result")
@dataclass(frozen=True)
class CensusQueryResult:
    center: GeoPoint
    radius_km: float
    summary: CensusSummary

    @property
    def coverage_gap(self) -> bool:
        return self.summary.block_count == 0

    def to_payload(self) -> dict[str, Any]:
        return {
            "center": self.center.to_payload(),
            "radius_km": self.radius_km,
            "totals": {
                "total_population": self.summary.total_population,
                "below_poverty": self.summary.below_poverty,
                "below_half_poverty": self.summary.below_half_poverty,
                "housing_units": self.summary.housing_units,
            },
            "block_count": self.summary.block_count,
            "blocks": [b.to_payload() for b in self.summary.blocks],
        }

    @classmethod
    def from_payload(cls, payload: dict[str, Any]) -> "CensusQueryResult":
        blocks = tuple(CensusBlockGroup.from_payload(b) for b in payload["blocks"])
        summary = CensusSummary(
            total_population=payload["totals"]["total_population"],
            below_poverty=payload["totals"]["below_poverty"],
            below_half_poverty=payload["totals"]["below_half_poverty"],
            housing_units=payload["totals"]["housing_units"],
            blocks=blocks,
        )
        return cls(center=GeoPoint.from_payload(payload["center"]),
                   radius_km=payload["radius_km"], summary=summary)


@dataclass
class GeodataEngine:
    """Read-only datasets shared across concurrent sessions."""

    grid: tuple[FwiCell, ...] = field(default_factory=tuple)
    incidents: tuple[FireIncident, ...] = field(default_factory=tuple)
    paleofire_sites: tuple[PaleofireSite, ...] = field(default_factory=tuple)
    census_blocks: tuple[CensusBlockGroup, ...] = field(default_factory=tuple)

    def query_fwi(self, center: GeoPoint,
                  radius_km: float = DEFAULT_RADIUS_KM) -> FwiQueryResult:
        mapping = map_point_to_cells(center, self.grid, radius_km)
        id_set = set(mapping.ids)
        cells = tuple(c for c in self.grid if c.id in id_set)
        summary = summarize_fwi(cells) if cells else None
        return FwiQueryResult(
            center=center, radius_km=float(radius_km),
            cell_ids=tuple(str(i) for i in mapping.ids),
            coverage_gap=mapping.coverage_gap, summary=summary, cells=cells,
        )

    def query_incidents(self, center: GeoPoint,
                        radius_km: float = DEFAULT_RADIUS_KM) -> IncidentQueryResult:
        hits = incidents_within_radius(center, self.incidents, radius_km)
        distances = tuple(round(haversine_km(center, inc.location), 2) for inc in hits)
        return IncidentQueryResult(
            center=center, radius_km=float(radius_km), incidents=tuple(hits),
            distances_km=distances, trends=incident_trends(hits),
        )

    def query_paleofire(self, center: GeoPoint, k: int = 3) -> PaleofireQueryResult:
        nearest = nearest_paleofire_sites(center, self.paleofire_sites, k)
        return PaleofireQueryResult(
            center=center, k=k,
            sites=tuple(site for site, _ in nearest.ranked),
            distances_km=tuple(round(d, 2) for _, d in nearest.ranked),
            partial=nearest.partial,
        )

    def query_census(self, center: GeoPoint,
                     radius_km: float = DEFAULT_RADIUS_KM) -> CensusQueryResult:
        summary = census_summary(center, self.census_blocks, radius_km)
        return CensusQueryResult(center=center, radius_km=float(radius_km), summary=summary)
