"""Shared fixtures: datasets, orchestrator factories, golden-session access."""

from __future__ import annotations

import json
from pathlib import Path

import pytest

from wildfire_advisor.config import (
    AppConfig,
    build_orchestrator,
    load_engine,
    load_index,
    load_metadata_client,
)
from wildfire_advisor.literature.embedder import HashingEmbedder
from wildfire_advisor.llm.gateway import ChatResponse
from wildfire_advisor.llm.scripted import ScriptedProvider
from wildfire_advisor.model import GeoPoint
from wildfire_advisor.orchestrator.events import EventKind
from wildfire_advisor.orchestrator.session import read_log_file

ROOT = Path(__file__).resolve().parents[1]
DATA_DIR = ROOT / "data" / "fixtures"
SCRIPTS_DIR = ROOT / "data" / "scripts"
GOLDEN_SCRIPT = SCRIPTS_DIR / "golden_session.jsonl"
GOLDEN_TRANSCRIPT = SCRIPTS_DIR / "golden_transcript.json"

COVINGTON = GeoPoint(37.7935, -79.9939)
OPEN_OCEAN = GeoPoint(0.0, -150.0)


@pytest.fixture(scope="session")
def engine():
    return load_engine(DATA_DIR)


@pytest.fixture(scope="session")
def embedder():
    return HashingEmbedder()


@pytest.fixture(scope="session")
def index(embedder):
    return load_index(DATA_DIR, embedder)


@pytest.fixture(scope="session")
def metadata_client():
    return load_metadata_client(DATA_DIR)


@pytest.fixture(scope="session")
def golden_records():
    _, records, report = read_log_file(GOLDEN_SCRIPT)
    assert not report.truncated
    return records


def golden_user_inputs(records):
    return [r.payload["text"] for r in records if r.kind is EventKind.USER_INPUT]


def golden_provider_script(records):
    return [ChatResponse.from_payload(r.payload["response"])
            for r in records if r.kind is EventKind.PROVIDER_RESPONSE]


@pytest.fixture
def make_orchestrator(tmp_path):
    """Factory: fresh orchestrator over the fixture data with a given script."""

    def build(script=None, sessions_dir=None, store=True):
        config = AppConfig.from_env(data_dir=str(DATA_DIR))
        if store:
            config.sessions_dir = Path(sessions_dir or tmp_path / "sessions")
        provider = script if hasattr(script, "send") else ScriptedProvider(script or [])
        return build_orchestrator(config, provider)

    return build


def drive(orchestrator, session, inputs):
    for text in inputs:
        orchestrator.get_response(session, text)
    return session


# -- acceptance reporting -----------------------------------------------------------

_ACCEPTANCE_RESULTS: dict[str, str] = {}

_CRITERION_TITLES = {
    "test_acceptance_fwi_classification_regression": "FWI classification regression",
    "test_acceptance_fidelity_worked_example": "Fidelity metric reproduction (2/3 = 66.7%)",
    "test_acceptance_scoring_arithmetic_reproduction": "Scoring arithmetic reproduction (result tables)",
    "test_acceptance_agreement_reproduction": "Agreement reproduction (62.99 / 75.00 / 66.67)",
    "test_acceptance_retrieval_oracle_equivalence": "Retrieval oracle equivalence (100 corpora)",
    "test_acceptance_geospatial_oracle_equivalence": "Geospatial oracle equivalence (100 trials)",
    "test_acceptance_statistical_aggregation": "Statistical aggregation (1000 cell sets, 1e-9)",
    "test_acceptance_end_to_end_determinism": "End-to-end determinism (golden session)",
    "test_acceptance_resume_equivalence": "Resume equivalence (20 split points)",
    "test_acceptance_guard_behavior": "Guard behavior (illegal tool events)",
}


def pytest_runtest_logreport(report):
    if report.when != "call":
        return
    name = report.nodeid.rsplit("::", 1)[-1]
    if name in _CRITERION_TITLES:
        _ACCEPTANCE_RESULTS[name] = "PASS" if report.passed else "FAIL"


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE_RESULTS:
        return
    terminalreporter.write_sep("=", "acceptance criteria")
    for name, title in _CRITERION_TITLES.items():
        outcome = _ACCEPTANCE_RESULTS.get(name)
        if outcome is not None:
            terminalreporter.write_line(f"[{outcome}] {title}")
