"""Great-circle distance: analytic anchors and metric properties."""

from __future__ import annotations

import math

from hypothesis import given, settings, strategies as st

from wildfire_advisor.geo import EARTH_RADIUS_KM, haversine_km, point_in_polygon
from wildfire_advisor.model import GeoPoint

from tests.geo_oracles import haversine_oracle

# Analytic oracle values: pi*R and (pi/2)*R at the fixed mean radius.
ANTIPODAL_KM = math.pi * EARTH_RADIUS_KM
QUARTER_KM = math.pi * EARTH_RADIUS_KM / 2

COVINGTON = GeoPoint(37.7935, -79.9939)

points = st.builds(GeoPoint,
                   st.floats(-89.9, 89.9, allow_nan=False),
                   st.floats(-179.9, 179.9, allow_nan=False))


def test_zero_distance_to_self():
    assert haversine_km(COVINGTON, COVINGTON) == 0.0


def test_antipodal_equatorial_points():
    assert abs(haversine_km(GeoPoint(0, 0), GeoPoint(0, 180)) - ANTIPODAL_KM) < 1e-3


def test_quarter_circumference():
    assert abs(haversine_km(GeoPoint(0, 0), GeoPoint(0, 90)) - QUARTER_KM) < 1e-3


@given(points, points)
def test_symmetry_and_nonnegativity(a, b):
    d_ab = haversine_km(a, b)
    d_ba = haversine_km(b, a)
    assert d_ab >= 0
    assert abs(d_ab - d_ba) < 1e-9


@given(points, points)
def test_matches_independent_formulation(a, b):
    ours = haversine_km(a, b)
    theirs = haversine_oracle(a.latitude, a.longitude, b.latitude, b.longitude)
    assert abs(ours - theirs) < 1e-6


@settings(max_examples=200)
@given(points, points, points)
def test_triangle_inequality(a, b, c):
    assert haversine_km(a, c) <= haversine_km(a, b) + haversine_km(b, c) + 1e-6


def test_point_in_polygon_square():
    square = (GeoPoint(0, 0), GeoPoint(0, 1), GeoPoint(1, 1), GeoPoint(1, 0))
    assert point_in_polygon(GeoPoint(0.5, 0.5), square)
    assert not point_in_polygon(GeoPoint(1.5, 0.5), square)
    assert not point_in_polygon(GeoPoint(-0.5, 0.5), square)
