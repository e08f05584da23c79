"""Report rendering: payload-backed numerics and the cautionary path."""

from __future__ import annotations

import json

import pytest

from wildfire_advisor.geo import CAUTIONARY_MESSAGE, render_data_report
from wildfire_advisor.model import Dataset, GeoPoint
from wildfire_advisor.model.serialize import canonical_serialize
from wildfire_advisor.evalharness import collect_numeric_values, extract_statistics

from tests.conftest import COVINGTON, OPEN_OCEAN


def payload_dict(result) -> dict:
    return json.loads(canonical_serialize(result))


def test_fwi_report_contains_regression_token(engine):
    result = engine.query_fwi(COVINGTON)
    report = render_data_report(Dataset.FWI, result)
    assert "23.82" in report.text
    assert not report.cautionary


def test_empty_incident_result_is_cautionary(engine):
    result = engine.query_incidents(OPEN_OCEAN)
    report = render_data_report(Dataset.RECENT_INCIDENTS, result)
    assert report.cautionary
    assert CAUTIONARY_MESSAGE in report.text
    assert report.statistics == ()


@pytest.mark.parametrize("dataset,querier", [
    (Dataset.FWI, "query_fwi"),
    (Dataset.RECENT_INCIDENTS, "query_incidents"),
    (Dataset.PALEOFIRE_HISTORY, "query_paleofire"),
    (Dataset.CENSUS, "query_census"),
])
def test_every_report_numeric_is_in_payload(engine, dataset, querier):
    result = getattr(engine, querier)(COVINGTON)
    report = render_data_report(dataset, result)
    sources = collect_numeric_values(payload_dict(result))
    tokens = extract_statistics(report.text)
    for token in tokens:
        assert token.value in sources, f"{token.surface} missing from payload"


def test_census_zero_coverage_renders_cautionary(engine):
    result = engine.query_census(OPEN_OCEAN)
    report = render_data_report(Dataset.CENSUS, result)
    assert report.cautionary
    assert CAUTIONARY_MESSAGE in report.text


def test_paleofire_partial_flagged():
    from wildfire_advisor.geo import GeodataEngine, PaleofireSite
    lone = PaleofireSite(location=GeoPoint(38.0, -80.0), site_name="only-one")
    engine = GeodataEngine(paleofire_sites=(lone,))
    result = engine.query_paleofire(COVINGTON, k=3)
    assert result.partial
    report = render_data_report(Dataset.PALEOFIRE_HISTORY, result)
    assert "1" in report.text and "3" in report.text
