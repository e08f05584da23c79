"""Figure rendering writes non-empty image files from real payloads."""

from __future__ import annotations

from wildfire_advisor import figures
from wildfire_advisor.model import Period, RiskClass, Season

from tests.conftest import COVINGTON


def _png(path) -> bool:
    return path.stat().st_size > 0 and path.read_bytes()[:8] == b"\x89PNG\r\n\x1a\n"


def test_color_ramp_covers_all_classes():
    assert set(figures.RISK_COLORS) == set(RiskClass)


def test_fwi_choropleth(engine, tmp_path):
    result = engine.query_fwi(COVINGTON)
    path = figures.render_fwi_figure(result, Season.SPRING, Period.END_CENTURY,
                                     tmp_path / "fwi.png")
    assert _png(path)


def test_trend_and_map_figures(engine, tmp_path):
    result = engine.query_incidents(COVINGTON)
    assert _png(figures.render_trend_figure(result, tmp_path / "trends.png"))
    assert _png(figures.render_incident_map(result, tmp_path / "map.png"))


def test_census_figure(engine, tmp_path):
    result = engine.query_census(COVINGTON)
    assert _png(figures.render_census_figure(result, tmp_path / "census.png"))
