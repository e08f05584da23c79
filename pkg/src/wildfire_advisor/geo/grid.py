"""Fire-weather grid: crossmodel ids, risk classification, mapping, summaries."""

from __future__ import annotations

import math
import re
import statistics
from dataclasses import dataclass, field
from typing import Any, Mapping, Sequence

from wildfire_advisor.model import GeoPoint, Period, RiskClass, Season
from wildfire_advisor.model.serialize import canonical_type
from wildfire_advisor.geo.distance import (
    DEFAULT_RADIUS_KM,
    point_in_polygon,
    polygon_intersects_disc,
)

ALL_SEASON_PERIODS: tuple[tuple[Season, Period], ...] = tuple(
    (season, period) for season in Season for period in Period
)

_CROSSMODEL_RE = re.compile(r"^R(\d{3,})C(\d{3,})$")


@canonical_type("crossmodel_id")
@dataclass(frozen=True, order=True)
class CrossmodelId:
    """Grid-cell identifier, rendered as R{row:03}C{col:03}."""

    row: int
    col: int

    def __post_init__(self) -> None:
        if self.row < 0 or self.col < 0:
            raise ValueError("crossmodel row/col must be non-negative")

    def __str__(self) -> str:
        return f"R{self.row:03d}C{self.col:03d}"

    @classmethod
    def parse(cls, text: str) -> "CrossmodelId":
        match = _CROSSMODEL_RE.match(text)
        if not match:
            raise ValueError(f"not a crossmodel id: {text!r}")
        return cls(row=int(match.group(1)), col=int(match.group(2)))

    def to_payload(self) -> str:
        return str(self)

    @classmethod
    def from_payload(cls, payload: str) -> "CrossmodelId":
        return cls.parse(payload)


def season_period_key(season: Season, period: Period) -> str:
    """Canonical column/key name for one (season, period) combination."""
    return f"{season.value}_{period.value}"


def parse_season_period_key(key: str) -> tuple[Season, Period]:
    season_token, _, period_token = key.partition("_")
    return Season(season_token), Period(period_token)


@canonical_type("fwi_cell")
@dataclass(frozen=True)
class FwiCell:
    """One grid cell: convex quadrilateral footprint and 12 FWI values."""

    id: CrossmodelId
    footprint: tuple[GeoPoint, ...]
    values: Mapping[tuple[Season, Period], float]

    def __post_init__(self) -> None:
        footprint = tuple(self.footprint)
        if len(footprint) != 4:
            raise ValueError("footprint must be a quadrilateral")
        if abs(_shoelace_area(footprint)) <= 1e-12:
            raise ValueError("degenerate footprint")
        if not _is_convex(footprint):
            raise ValueError("footprint must be convex")
        values = dict(self.values)
        missing = [sp for sp in ALL_SEASON_PERIODS if sp not in values]
        if missing:
            raise ValueError(f"missing FWI values for {missing[0]}")
        for sp, v in values.items():
            if not (isinstance(v, (int, float)) and math.isfinite(v) and v >= 0):
                raise ValueError(f"FWI value for {sp} must be finite and >= 0")
        object.__setattr__(self, "footprint", footprint)
        object.__setattr__(self, "values", values)

    def to_payload(self) -> dict[str, Any]:
        return {
            "id": str(self.id),
            "footprint": [p.to_payload() for p in self.footprint],
            "values": {season_period_key(s, p): float(v)
                       for (s, p), v in self.values.items()},
        }

    @classmethod
    def from_payload(cls, payload: dict[str, Any]) -> "FwiCell":
        return cls(
            id=CrossmodelId.parse(payload["id"]),
            footprint=tuple(GeoPoint.from_payload(p) for p in payload["footprint"]),
            values={parse_season_period_key(k): v for k, v in payload["values"].items()},
        )


def _shoelace_area(vertices: Sequence[GeoPoint]) -> float:
    area = 0.0
    n = len(vertices)
    for i in range(n):
        x1, y1 = vertices[i].longitude, vertices[i].latitude
        x2, y2 = vertices[(i + 1) % n].longitude, vertices[(i + 1) % n].latitude
        area += x1 * y2 - x2 * y1
    return area / 2.0


def _is_convex(vertices: Sequence[GeoPoint]) -> bool:
    n = len(vertices)
    sign = 0
    for i in range(n):
        ax, ay = vertices[i].longitude, vertices[i].latitude
        bx, by = vertices[(i + 1) % n].longitude, vertices[(i + 1) % n].latitude
        cx, cy = vertices[(i + 2) % n].longitude, vertices[(i + 2) % n].latitude
        cross = (bx - ax) * (cy - ay) - (by - ay) * (cx - ax)
        if cross != 0:
            current = 1 if cross > 0 else -1
            if sign == 0:
                sign = current
            elif current != sign:
                return False
    return True


# Class bands (upper bound exclusive), Canadian FWI-style convention used by
# the public ClimRR presentation.
FWI_THRESHOLDS: tuple[tuple[float, RiskClass], ...] = (
    (9.0, RiskClass.LOW),
    (21.0, RiskClass.MEDIUM),
    (34.0, RiskClass.HIGH),
    (39.0, RiskClass.VERY_HIGH),
    (53.0, RiskClass.EXTREME),
    (math.inf, RiskClass.VERY_EXTREME),
)


def classify_fwi(value: float) -> RiskClass:
    """Map an FWI value to its risk class. Negative values are rejected."""
    if not (isinstance(value, (int, float)) and math.isfinite(value)):
        raise ValueError("FWI value must be finite")
    if value < 0:
        raise ValueError("FWI value must be non-negative")
    for upper, risk in FWI_THRESHOLDS:
        if value < upper:
            return risk
    return RiskClass.VERY_EXTREME


@canonical_type("season_period_stat")
@dataclass(frozen=True)
class SeasonPeriodStat:
    mean: float
    std: float
    risk: RiskClass

    def __post_init__(self) -> None:
        if self.std < 0:
            raise ValueError("std must be non-negative")
        if classify_fwi(self.mean) is not self.risk:
            raise ValueError("risk class must match the classified mean")

    def to_payload(self) -> dict[str, Any]:
        return {"mean": self.mean, "std": self.std, "risk": self.risk.value}

    @classmethod
    def from_payload(cls, payload: dict[str, Any]) -> "SeasonPeriodStat":
        return cls(mean=payload["mean"], std=payload["std"],
                   risk=RiskClass(payload["risk"]))


@canonical_type("fwi_summary")
@dataclass(frozen=True)
class FwiSummary:
    """Aggregated, risk-classified statistics per (season, period)."""

    stats: Mapping[tuple[Season, Period], SeasonPeriodStat]
    cell_count: int

    def __post_init__(self) -> None:
        stats = dict(self.stats)
        if self.cell_count <= 0:
            raise ValueError("cell count must be positive")
        missing = [sp for sp in ALL_SEASON_PERIODS if sp not in stats]
        if missing:
            raise ValueError(f"missing summary for {missing[0]}")
        object.__setattr__(self, "stats", stats)

    def to_payload(self) -> dict[str, Any]:
        return {
            "cell_count": self.cell_count,
            "stats": {season_period_key(s, p): st.to_payload()
                      for (s, p), st in self.stats.items()},
        }

    @classmethod
    def from_payload(cls, payload: dict[str, Any]) -> "FwiSummary":
        return cls(
            stats={parse_season_period_key(k): SeasonPeriodStat.from_payload(v)
                   for k, v in payload["stats"].items()},
            cell_count=payload["cell_count"],
        )


def summarize_fwi(cells: Sequence[FwiCell]) -> FwiSummary:
    """Mean, population standard deviation, and risk class per combination."""
    if not cells:
        raise ValueError("summarize_fwi requires at least one cell; "
                         "use the coverage-gap path for empty queries")
    stats: dict[tuple[Season, Period], SeasonPeriodStat] = {}
    for sp in ALL_SEASON_PERIODS:
        values = [cell.values[sp] for cell in cells]
        mean = statistics.fmean(values)
        std = statistics.pstdev(values) if len(values) > 1 else 0.0
        stats[sp] = SeasonPeriodStat(mean=mean, std=std, risk=classify_fwi(mean))
    return FwiSummary(stats=stats, cell_count=len(cells))


@dataclass(frozen=True)
class GridQueryResult:
    """Cells intersecting the query disc, or a coverage-gap signal."""

    ids: tuple[CrossmodelId, ...]
    coverage_gap: bool = field(default=False)


def map_point_to_cells(
    center: GeoPoint,
    grid: Sequence[FwiCell],
    radius_km: float = DEFAULT_RADIUS_KM,
) -> GridQueryResult:
    """Crossmodel ids whose footprints intersect the disc around center.

    The cell containing the center is always included; an empty result
    signals a coverage gap that drives the data-unavailable path.
    """
    if radius_km <= 0:
        raise ValueError("radius must be positive")
    hits = [
        cell.id
        for cell in grid
        if point_in_polygon(center, cell.footprint)
        or polygon_intersects_disc(center, cell.footprint, radius_km)
    ]
    hits.sort()
    return GridQueryResult(ids=tuple(hits), coverage_gap=not hits)
