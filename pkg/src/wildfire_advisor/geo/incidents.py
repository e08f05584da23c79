"""Recent wildfire incident records: radius queries and trend tallies."""

from __future__ import annotations

import datetime as dt
from collections import Counter
from dataclasses import dataclass
from typing import Any, Sequence

from wildfire_advisor.model import GeoPoint
from wildfire_advisor.model.serialize import canonical_type
from wildfire_advisor.geo.distance import DEFAULT_RADIUS_KM, haversine_km

# Coverage window of the incident dataset.
INCIDENT_YEAR_RANGE = (2015, 2023)


@canonical_type("fire_incident")
@dataclass(frozen=True)
class FireIncident:
    location: GeoPoint
    date: dt.date
    name: str

    def __post_init__(self) -> None:
        lo, hi = INCIDENT_YEAR_RANGE
        if not lo <= self.date.year <= hi:
            raise ValueError(f"incident date {self.date} outside {lo}-{hi} coverage")

    def to_payload(self) -> dict[str, Any]:
        return {
            "location": self.location.to_payload(),
            "date": self.date.isoformat(),
            "name": self.name,
        }

    @classmethod
    def from_payload(cls, payload: dict[str, Any]) -> "FireIncident":
        return cls(
            location=GeoPoint.from_payload(payload["location"]),
            date=dt.date.fromisoformat(payload["date"]),
            name=payload["name"],
        )


def incidents_within_radius(
    center: GeoPoint,
    incidents: Sequence[FireIncident],
    radius_km: float = DEFAULT_RADIUS_KM,
) -> list[FireIncident]:
    """Incidents within the (inclusive) radius, sorted by distance then date."""
    if radius_km <= 0:
        raise ValueError("radius must be positive")
    selected = [
        (haversine_km(center, inc.location), inc)
        for inc in incidents
        if haversine_km(center, inc.location) <= radius_km
    ]
    selected.sort(key=lambda pair: (pair[0], pair[1].date, pair[1].name))
    return [inc for _, inc in selected]


@dataclass(frozen=True)
class IncidentTrends:
    """Annual frequencies and a 12-slot monthly distribution."""

    yearly: dict[int, int]
    monthly: dict[int, int]

    @property
    def total(self) -> int:
        return sum(self.monthly.values())


def incident_trends(incidents: Sequence[FireIncident]) -> IncidentTrends:
    """Tally incidents per year (gap years included) and calendar month."""
    by_year = Counter(inc.date.year for inc in incidents)
    by_month = Counter(inc.date.month for inc in incidents)
    if by_year:
        years = range(min(by_year), max(by_year) + 1)
        yearly = {year: by_year.get(year, 0) for year in years}
    else:
        yearly = {}
    monthly = {month: by_month.get(month, 0) for month in range(1, 13)}
    return IncidentTrends(yearly=yearly, monthly=monthly)
