"""HTTP surface: hermetic end-to-end tests over the fixture datasets."""

from __future__ import annotations

import json

import pytest
from fastapi.testclient import TestClient

from wildfire_advisor.model.serialize import canonical_serialize
from wildfire_advisor.service.api import create_app

from tests.conftest import (
    COVINGTON,
    golden_provider_script,
    golden_user_inputs,
)


@pytest.fixture
def client_and_orchestrator(make_orchestrator, golden_records):
    orch = make_orchestrator(golden_provider_script(golden_records))
    app = create_app(orch)
    return TestClient(app), orch


@pytest.fixture
def client(client_and_orchestrator):
    return client_and_orchestrator[0]


# -- sessions -------------------------------------------------------------------

def test_create_session_starts_at_profile_collection(client):
    response = client.post("/sessions")
    assert response.status_code == 200
    body = response.json()
    assert body["stage"] == "profile_collection"
    assert body["version"] == 1
    assert body["session_id"]


def test_two_creates_distinct_ids(client):
    a = client.post("/sessions").json()["session_id"]
    b = client.post("/sessions").json()["session_id"]
    assert a != b


def test_create_ignores_request_body(client):
    response = client.post("/sessions", content=b'{"anything": 1}')
    assert response.status_code == 200
    assert response.json()["stage"] == "profile_collection"


def test_first_message_elicits_profession_prompt(client):
    session_id = client.post("/sessions").json()["session_id"]
    response = client.post(f"/sessions/{session_id}/messages",
                           json={"text": "hello"})
    assert response.status_code == 200
    events = response.json()["events"]
    texts = [e["payload"]["text"] for e in events if e["kind"] == "text"]
    assert any("professional background" in t for t in texts)


def test_message_to_unknown_session_404(client):
    response = client.post("/sessions/nope/messages", json={"text": "hi"})
    assert response.status_code == 404
    assert response.json()["error"]["code"] == "not_found"


def test_message_requires_text(client):
    session_id = client.post("/sessions").json()["session_id"]
    response = client.post(f"/sessions/{session_id}/messages", json={})
    assert response.status_code == 400


def test_fresh_transcript_only_system_greeting(client):
    session_id = client.post("/sessions").json()["session_id"]
    body = client.get(f"/sessions/{session_id}/transcript").json()
    assert len(body["transcript"]) == 1
    assert body["transcript"][0]["role"] == "system"
    assert body["resumed_from"] is None


def run_golden_session(client, golden_records):
    session_id = client.post("/sessions").json()["session_id"]
    responses = []
    for text in golden_user_inputs(golden_records):
        response = client.post(f"/sessions/{session_id}/messages",
                               json={"text": text})
        assert response.status_code == 200
        responses.append(response.json())
    return session_id, responses


def test_full_scripted_session_emits_map_and_chart(client, golden_records):
    session_id, responses = run_golden_session(client, golden_records)
    assert responses[-1]["stage"] == "analysis"
    analysis_events = responses[8]["events"]  # "looks good" turn runs the FWI step
    kinds = [e["kind"] for e in analysis_events]
    assert "map_layer" in kinds and "chart" in kinds and "stage" in kinds
    map_event = next(e for e in analysis_events if e["kind"] == "map_layer")
    cells = map_event["payload"]["data"]["value"]["cells"]
    assert len(cells) == 9


def test_closed_session_conflicts(client_and_orchestrator, golden_records):
    client, orch = client_and_orchestrator
    session_id, _ = run_golden_session(client, golden_records)
    from wildfire_advisor.orchestrator.events import ToolEventName
    orch.update_assistant(orch.get_session(session_id), ToolEventName.SESSION_CLOSE)
    response = client.post(f"/sessions/{session_id}/messages",
                           json={"text": "hello?"})
    assert response.status_code == 409


def test_resume_returns_new_id_and_marker(client_and_orchestrator, golden_records):
    client, orch = client_and_orchestrator
    session_id, _ = run_golden_session(client, golden_records)
    original = client.get(f"/sessions/{session_id}/transcript").json()
    resumed = client.post(f"/sessions/{session_id}/resume").json()
    assert resumed["session_id"] != session_id
    assert resumed["resumed_from"] == session_id
    transcript = client.get(f"/sessions/{resumed['session_id']}/transcript").json()
    assert transcript["transcript"] == original["transcript"]
    assert transcript["resumed_from"] == session_id


def test_resume_unknown_session_404(client):
    assert client.post("/sessions/ghost/resume").status_code == 404


# -- data endpoints ------------------------------------------------------------------

def test_fwi_endpoint_has_twelve_summaries(client):
    response = client.get("/data/fwi", params={
        "lat": COVINGTON.latitude, "lon": COVINGTON.longitude})
    assert response.status_code == 200
    body = response.json()
    assert body["type"] == "fwi_query_result"
    assert len(body["value"]["summary"]["stats"]) == 12
    spring_end = body["value"]["summary"]["stats"]["spring_end_century"]
    assert spring_end["mean"] == 23.82
    assert spring_end["risk"] == "high"


def test_invalid_latitude_400(client):
    response = client.get("/data/fwi", params={"lat": 95, "lon": 0})
    assert response.status_code == 400
    assert response.json()["error"]["code"] == "bad_request"


def test_empty_region_incidents_200(client):
    response = client.get("/data/incidents", params={"lat": 0.0, "lon": -150.0})
    assert response.status_code == 200
    assert response.json()["value"]["incidents"] == []


def test_data_bytes_equal_engine_serialization(client_and_orchestrator):
    client, orch = client_and_orchestrator
    for dataset, call in [
        ("fwi", orch.engine.query_fwi), ("incidents", orch.engine.query_incidents),
        ("census", orch.engine.query_census),
    ]:
        http = client.get(f"/data/{dataset}", params={
            "lat": COVINGTON.latitude, "lon": COVINGTON.longitude})
        direct = canonical_serialize(call(COVINGTON))
        assert http.content == direct, dataset
    paleo = client.get("/data/paleofire", params={
        "lat": COVINGTON.latitude, "lon": COVINGTON.longitude})
    assert paleo.content == canonical_serialize(orch.engine.query_paleofire(COVINGTON))


def test_unknown_dataset_404(client):
    assert client.get("/data/weather", params={"lat": 0, "lon": 0}).status_code == 404


# -- evaluation endpoints ----------------------------------------------------------------

def test_fidelity_citation_bundle_two_of_three(client):
    response = client.post("/eval/fidelity", json={
        "discussed_titles": ["Alpha", "Beta", "Gamma"],
        "retrieved_titles": ["Alpha", "Beta", "Delta"],
    })
    body = response.json()
    assert body["matched"] == 2 and body["total"] == 3
    assert abs(body["percent"] - 66.7) < 0.05


def test_fidelity_statistic_bundle(client):
    response = client.post("/eval/fidelity", json={
        "response_text": "29 incidents in 2018, peaking at 21 in July",
        "source_payloads": [{"yearly": {"2018": 29}, "monthly": {"7": 21}}],
    })
    body = response.json()
    assert body["precision"] == 1.0


def test_score_bundle_58_of_60(client):
    answers = ([{"question_id": "q", "label": "yes"}] * 57
               + [{"question_id": "q", "label": "could_be_better"}] * 2
               + [{"question_id": "q", "label": "no"}])
    response = client.post("/eval/score", json={"answers": answers})
    body = response.json()
    assert body["total"] == 58.0 and body["count"] == 60
    assert round(body["percent"], 2) == 96.67


def test_score_with_cases_reproduces_aggregates(client):
    cases = [{"score": s, "count": c} for s, c in
             [(17, 18), (6, 6), (5, 5), (3, 3), (5, 5), (7, 7), (3, 3),
              (6.5, 7), (3.5, 4), (2, 2)]]
    response = client.post("/eval/score", json={"answers": [], "cases": cases})
    body = response.json()
    assert round(body["average_percent"], 2) == 97.48
    assert round(body["overall_percent"], 2) == 96.67


def test_malformed_score_bundle_400(client):
    response = client.post("/eval/score", json={
        "answers": [{"question_id": "q", "label": "maybe"}]})
    assert response.status_code == 400


def test_agreement_endpoint_reproduces_table(client):
    records = ([{"criterion": "entailment", "human": "yes", "judge": "yes"}] * 15
               + [{"criterion": "entailment", "human": "yes",
                   "judge": "could_be_better"}] * 2
               + [{"criterion": "entailment", "human": "yes", "judge": "no"}] * 3)
    response = client.post("/eval/agreement", json={"records": records})
    stats = response.json()["criteria"]["entailment"]
    assert stats["agree"] == 15 and stats["total"] == 20
    assert round(stats["percent"], 2) == 75.00


def test_judge_endpoint_with_scripted_provider(make_orchestrator):
    from wildfire_advisor.llm.gateway import ChatResponse
    orch = make_orchestrator([ChatResponse(text="1. Yes: follows the data.")])
    client = TestClient(create_app(orch))
    response = client.post("/eval/judge", json={
        "bundle": {"profile": "p", "prior_queries": [], "retrieved": [],
                   "response": "r"},
        "criteria": ["entailment"],
    })
    body = response.json()
    labels = body["results"]["entailment"]["labels"]
    assert labels == [{"question_id": "entailment_follows", "label": "yes"}]


def test_malformed_json_body_400(client):
    session_id = client.post("/sessions").json()["session_id"]
    response = client.post(f"/sessions/{session_id}/messages",
                           content=b"not json",
                           headers={"content-type": "application/json"})
    assert response.status_code == 400
