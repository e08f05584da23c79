"""Census block groups: disc intersection and demographic aggregation."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Any, Sequence

from wildfire_advisor.model import GeoPoint
from wildfire_advisor.model.serialize import canonical_type
from wildfire_advisor.geo.distance import DEFAULT_RADIUS_KM, polygon_intersects_disc


@canonical_type("census_block_group")
@dataclass(frozen=True)
class CensusBlockGroup:
    geoid: str
    geometry: tuple[GeoPoint, ...]
    total_population: int
    below_poverty: int
    below_half_poverty: int
    housing_units: int

    def __post_init__(self) -> None:
        geometry = tuple(self.geometry)
        if len(geometry) < 3:
            raise ValueError("block group geometry needs at least 3 vertices")
        counts = (self.total_population, self.below_poverty,
                  self.below_half_poverty, self.housing_units)
        if any(not isinstance(c, int) or c < 0 for c in counts):
            raise ValueError("census counts must be non-negative integers")
        if not self.below_half_poverty <= self.below_poverty <= self.total_population:
            raise ValueError("poverty counts must nest: half <= below <= total")
        object.__setattr__(self, "geometry", geometry)

    def to_payload(self) -> dict[str, Any]:
        return {
            "geoid": self.geoid,
            "geometry": [p.to_payload() for p in self.geometry],
            "total_population": self.total_population,
            "below_poverty": self.below_poverty,
            "below_half_poverty": self.below_half_poverty,
            "housing_units": self.housing_units,
        }

    @classmethod
    def from_payload(cls, payload: dict[str, Any]) -> "CensusBlockGroup":
        return cls(
            geoid=payload["geoid"],
            geometry=tuple(GeoPoint.from_payload(p) for p in payload["geometry"]),
            total_population=payload["total_population"],
            below_poverty=payload["below_poverty"],
            below_half_poverty=payload["below_half_poverty"],
            housing_units=payload["housing_units"],
        )


@dataclass(frozen=True)
class CensusSummary:
    """Aggregates over the intersecting block groups, plus the per-block rows."""

    total_population: int
    below_poverty: int
    below_half_poverty: int
    housing_units: int
    blocks: tuple[CensusBlockGroup, ...]

    @property
    def block_count(self) -> int:
        return len(self.blocks)


def census_summary(
    center: GeoPoint,
    blocks: Sequence[CensusBlockGroup],
    radius_km: float = DEFAULT_RADIUS_KM,
) -> CensusSummary:
    """Sum demographics over every block group intersecting the query disc."""
    if radius_km <= 0:
        raise ValueError("radius must be positive")
    included = [
        b for b in blocks
        if polygon_intersects_disc(center, b.geometry, radius_km)
    ]
    included.sort(key=lambda b: b.geoid)
    return CensusSummary(
        total_population=sum(b.total_population for b in included),
        below_poverty=sum(b.below_poverty for b in included),
        below_half_poverty=sum(b.below_half_poverty for b in included),
        housing_units=sum(b.housing_units for b in included),
        blocks=tuple(included),
    )
