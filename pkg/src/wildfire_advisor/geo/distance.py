"""Great-circle distance and disc/polygon intersection primitives.

The buffer/intersect semantics used throughout the engine approximate the
geodesic disc test as: minimum haversine distance from the query point to
the polygon (vertices plus edges densified at <= 1 km spacing), with
containment short-circuiting to zero. At the 36 km working radius the
haversine error (< 0.5%) is far below grid granularity.
"""

from __future__ import annotations

import math
from typing import Iterable, Sequence

from wildfire_advisor.model import GeoPoint

# IUGG mean Earth radius.
EARTH_RADIUS_KM = 6371.0088

DEFAULT_RADIUS_KM = 36.0

# Edge densification spacing for polygon distance sampling.
EDGE_SPACING_KM = 1.0


def haversine_km(a: GeoPoint, b: GeoPoint) -> float:
    """Great-circle distance between two points, in kilometers."""
    phi1 = math.radians(a.latitude)
    phi2 = math.radians(b.latitude)
    dphi = math.radians(b.latitude - a.latitude)
    dlambda = math.radians(b.longitude - a.longitude)
    h = math.sin(dphi / 2.0) ** 2 + math.cos(phi1) * math.cos(phi2) * math.sin(dlambda / 2.0) ** 2
    return 2.0 * EARTH_RADIUS_KM * math.atan2(math.sqrt(h), math.sqrt(1.0 - h))


def point_in_polygon(point: GeoPoint, vertices: Sequence[GeoPoint]) -> bool:
    """Ray-casting containment test on the lon/lat plane.

    Adequate for the small (tens of km) convex footprints in the fixture
    datasets; not meaningful for polygons spanning the antimeridian.
    """
    x, y = point.longitude, point.latitude
    inside = False
    n = len(vertices)
    for i in range(n):
        x1, y1 = vertices[i].longitude, vertices[i].latitude
        x2, y2 = vertices[(i + 1) % n].longitude, vertices[(i + 1) % n].latitude
        if (y1 > y) != (y2 > y):
            x_cross = x1 + (y - y1) / (y2 - y1) * (x2 - x1)
            if x_cross > x:
                inside = not inside
    return inside


def polygon_sample_points(
    vertices: Sequence[GeoPoint], spacing_km: float = EDGE_SPACING_KM
) -> list[GeoPoint]:
    """Vertices plus linearly interpolated edge points at <= spacing_km apart."""
    points: list[GeoPoint] = []
    n = len(vertices)
    for i in range(n):
        a = vertices[i]
        b = vertices[(i + 1) % n]
        edge_km = haversine_km(a, b)
        steps = max(1, math.ceil(edge_km / spacing_km))
        for j in range(steps):  # j == 0 is the vertex; the end vertex opens the next edge
            t = j / steps
            points.append(GeoPoint(
                latitude=a.latitude + t * (b.latitude - a.latitude),
                longitude=a.longitude + t * (b.longitude - a.longitude),
            ))
    return points


def distance_to_polygon_km(
    center: GeoPoint,
    vertices: Sequence[GeoPoint],
    spacing_km: float = EDGE_SPACING_KM,
) -> float:
    """Approximate distance from a point to a polygon footprint.

    Zero when the point is inside; otherwise the minimum haversine distance
    to the densified boundary.
    """
    if point_in_polygon(center, vertices):
        return 0.0
    return min(haversine_km(center, p) for p in polygon_sample_points(vertices, spacing_km))


def polygon_intersects_disc(
    center: GeoPoint,
    vertices: Sequence[GeoPoint],
    radius_km: float,
    spacing_km: float = EDGE_SPACING_KM,
) -> bool:
    """Inclusive disc/polygon intersection under the documented approximation."""
    if point_in_polygon(center, vertices):
        return True
    # Spherical triangle inequality prune: if even the closest conceivable
    # boundary point is beyond the radius, skip the densified scan. The
    # margin keeps the bound conservative for interpolated edge points.
    centroid = _centroid(vertices)
    reach = max(haversine_km(centroid, v) for v in vertices) * 1.01 + spacing_km
    if haversine_km(center, centroid) - reach > radius_km:
        return False
    for p in polygon_sample_points(vertices, spacing_km):
        if haversine_km(center, p) <= radius_km:
            return True
    return False


def _centroid(vertices: Iterable[GeoPoint]) -> GeoPoint:
    pts = list(vertices)
    return GeoPoint(
        latitude=sum(p.latitude for p in pts) / len(pts),
        longitude=sum(p.longitude for p in pts) / len(pts),
    )
