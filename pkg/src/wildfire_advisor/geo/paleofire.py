"""Paleofire study sites: nearest-k ranking by great-circle distance."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Any, Sequence

from wildfire_advisor.model import GeoPoint
from wildfire_advisor.model.serialize import canonical_type
from wildfire_advisor.geo.distance import haversine_km


@canonical_type("paleofire_site")
@dataclass(frozen=True)
class PaleofireSite:
    location: GeoPoint
    site_name: str
    publications: tuple[str, ...] = ()

    def __post_init__(self) -> None:
        object.__setattr__(self, "publications", tuple(self.publications))

    def to_payload(self) -> dict[str, Any]:
        return {
            "location": self.location.to_payload(),
            "site_name": self.site_name,
            "publications": list(self.publications),
        }

    @classmethod
    def from_payload(cls, payload: dict[str, Any]) -> "PaleofireSite":
        return cls(
            location=GeoPoint.from_payload(payload["location"]),
            site_name=payload["site_name"],
            publications=tuple(payload.get("publications", ())),
        )


@dataclass(frozen=True)
class NearestSites:
    """Ranked (site, distance_km) pairs; partial when fewer than k exist."""

    ranked: tuple[tuple[PaleofireSite, float], ...]
    partial: bool


def nearest_paleofire_sites(
    center: GeoPoint,
    sites: Sequence[PaleofireSite],
    k: int = 3,
) -> NearestSites:
    """The k nearest sites, ascending by distance, ties by site name."""
    if k < 1:
        raise ValueError("k must be at least 1")
    ranked = sorted(
        ((site, haversine_km(center, site.location)) for site in sites),
        key=lambda pair: (pair[1], pair[0].site_name),
    )
    return NearestSites(ranked=tuple(ranked[:k]), partial=len(sites) < k)
