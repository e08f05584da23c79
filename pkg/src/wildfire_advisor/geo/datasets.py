"""Loaders for the documented fixture dataset formats (version 1).

Formats:

* FWI grid (CSV): ``Crossmodel``, four corner ``lat{i}``/``lon{i}`` pairs,
  then twelve value columns named ``{season}_{period}`` (e.g.
  ``spring_end_century``).
* Incidents (CSV): ``lat``, ``lon``, ``date`` (ISO), ``name``.
* Paleofire sites (CSV): ``lat``, ``lon``, ``site_name``, ``publications``
  (';'-separated list).
* Census block groups (GeoJSON FeatureCollection): Polygon geometry plus the
  four count properties.

Loaders validate row by row and report, never raise, on bad rows.
"""

from __future__ import annotations

import csv
import datetime as dt
import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Callable, Generic, TypeVar

from wildfire_advisor.model import GeoPoint
from wildfire_advisor.geo.census import CensusBlockGroup
from wildfire_advisor.geo.grid import (
    ALL_SEASON_PERIODS,
    CrossmodelId,
    FwiCell,
    season_period_key,
)
from wildfire_advisor.geo.incidents import FireIncident
from wildfire_advisor.geo.paleofire import PaleofireSite

T = TypeVar("T")

FORMAT_VERSION = 1


@dataclass(frozen=True)
class RowError:
    line: int
    field: str
    reason: str


@dataclass
class LoadResult(Generic[T]):
    items: list[T] = field(default_factory=list)
    errors: list[RowError] = field(default_factory=list)
    rows_read: int = 0


def _load_csv(path: Path, parse_row: Callable[[dict[str, str]], T]) -> LoadResult[T]:
    result: LoadResult[T] = LoadResult()
    with open(path, newline="", encoding="utf-8") as fh:
        reader = csv.DictReader(fh)
        for line, row in enumerate(reader, start=2):  # header is line 1
            result.rows_read += 1
            try:
                result.items.append(parse_row(row))
            except KeyError as exc:
                result.errors.append(RowError(line, str(exc.args[0]), "missing column"))
            except ValueError as exc:
                offender = getattr(exc, "field_name", "")
                result.errors.append(RowError(line, offender, str(exc)))
    return result


def _named_error(field_name: str, reason: str) -> ValueError:
    exc = ValueError(reason)
    exc.field_name = field_name  # type: ignore[attr-defined]
    return exc


def _parse_float(row: dict[str, str], column: str) -> float:
    try:
        return float(row[column])
    except (TypeError, ValueError):
        raise _named_error(column, f"not a number: {row.get(column)!r}") from None


def _parse_point(row: dict[str, str], lat_col: str, lon_col: str) -> GeoPoint:
    lat = _parse_float(row, lat_col)
    lon = _parse_float(row, lon_col)
    try:
        return GeoPoint(latitude=lat, longitude=lon)
    except ValueError as exc:
        raise _named_error(lat_col, str(exc)) from None


def load_fwi_grid(path: str | Path) -> LoadResult[FwiCell]:
    def parse(row: dict[str, str]) -> FwiCell:
        try:
            cell_id = CrossmodelId.parse(row["Crossmodel"].strip())
        except ValueError as exc:
            raise _named_error("Crossmodel", str(exc)) from None
        footprint = tuple(
            _parse_point(row, f"lat{i}", f"lon{i}") for i in range(1, 5)
        )
        values = {}
        for season, period in ALL_SEASON_PERIODS:
            column = season_period_key(season, period)
            values[(season, period)] = _parse_float(row, column)
        try:
            return FwiCell(id=cell_id, footprint=footprint, values=values)
        except ValueError as exc:
            raise _named_error("footprint", str(exc)) from None

    return _load_csv(Path(path), parse)


def load_incidents(path: str | Path) -> LoadResult[FireIncident]:
    def parse(row: dict[str, str]) -> FireIncident:
        location = _parse_point(row, "lat", "lon")
        try:
            date = dt.date.fromisoformat(row["date"].strip())
        except ValueError:
            raise _named_error("date", f"not an ISO date: {row.get('date')!r}") from None
        try:
            return FireIncident(location=location, date=date, name=row["name"].strip())
        except ValueError as exc:
            raise _named_error("date", str(exc)) from None

    return _load_csv(Path(path), parse)


def load_paleofire(path: str | Path) -> LoadResult[PaleofireSite]:
    def parse(row: dict[str, str]) -> PaleofireSite:
        location = _parse_point(row, "lat", "lon")
        publications = tuple(
            p.strip() for p in row.get("publications", "").split(";") if p.strip()
        )
        name = row["site_name"].strip()
        if not name:
            raise _named_error("site_name", "site name is required")
        return PaleofireSite(location=location, site_name=name, publications=publications)

    return _load_csv(Path(path), parse)


def load_census(path: str | Path) -> LoadResult[CensusBlockGroup]:
    result: LoadResult[CensusBlockGroup] = LoadResult()
    with open(path, encoding="utf-8") as fh:
        collection = json.load(fh)
    features = collection.get("features", [])
    for index, feature in enumerate(features):
        result.rows_read += 1
        line = index + 1  # feature ordinal, GeoJSON has no line numbers
        props = feature.get("properties", {})
        geometry = feature.get("geometry", {})
        try:
            if geometry.get("type") != "Polygon":
                raise _named_error("geometry", "geometry must be a Polygon")
            ring = geometry["coordinates"][0]
            # GeoJSON rings repeat the first vertex at the end.
            if len(ring) > 1 and ring[0] == ring[-1]:
                ring = ring[:-1]
            vertices = tuple(GeoPoint(latitude=lat, longitude=lon) for lon, lat in ring)
            counts = {}
            for key in ("total_population", "below_poverty",
                        "below_half_poverty", "housing_units"):
                raw = props.get(key)
                if not isinstance(raw, int) or isinstance(raw, bool):
                    raise _named_error(key, f"must be an integer count, got {raw!r}")
                counts[key] = raw
            block = CensusBlockGroup(
                geoid=str(props.get("geoid", f"feature-{index}")),
                geometry=vertices,
                **counts,
            )
        except ValueError as exc:
            offender = getattr(exc, "field_name", "geometry")
            result.errors.append(RowError(line, offender, str(exc)))
            continue
        result.items.append(block)
    return result
