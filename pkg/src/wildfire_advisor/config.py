"""Application wiring: load datasets, build the index, assemble the service.

Configuration comes from flags or environment variables:
``WILDFIRE_ADVISOR_DATA_DIR``, ``WILDFIRE_ADVISOR_PROMPTS_DIR``,
``WILDFIRE_ADVISOR_SESSIONS_DIR``, and the provider key env var named in
``wildfire_advisor.llm.http``.
"""

from __future__ import annotations

import json
import os
from dataclasses import dataclass
from pathlib import Path
from typing import Optional

from wildfire_advisor.geo.datasets import (
    load_census,
    load_fwi_grid,
    load_incidents,
    load_paleofire,
)
from wildfire_advisor.geo.engine import GeodataEngine
from wildfire_advisor.literature.corpus import load_corpus
from wildfire_advisor.literature.doi import MetadataLookup, RecordedMetadataClient
from wildfire_advisor.literature.embedder import DEFAULT_DIMENSION, HashingEmbedder
from wildfire_advisor.literature.index import VectorIndex, index_build
from wildfire_advisor.llm.gateway import Provider
from wildfire_advisor.orchestrator.session import Orchestrator, SessionStore
from wildfire_advisor.prompts_loader import PromptSet

DATA_DIR_ENV = "WILDFIRE_ADVISOR_DATA_DIR"
PROMPTS_DIR_ENV = "WILDFIRE_ADVISOR_PROMPTS_DIR"
SESSIONS_DIR_ENV = "WILDFIRE_ADVISOR_SESSIONS_DIR"

FIXTURE_FILES = {
    "fwi": "fwi_grid.csv",
    "incidents": "incidents.csv",
    "paleofire": "paleofire.csv",
    "census": "census.geojson",
    "corpus": "corpus.csv",
    "metadata": "metadata_responses.json",
}


@dataclass
class AppConfig:
    data_dir: Path
    prompts_dir: Optional[Path] = None
    sessions_dir: Optional[Path] = None
    embedder_seed: int = 0
    embedder_dimension: int = DEFAULT_DIMENSION

    @classmethod
    def from_env(cls, data_dir: Optional[str] = None,
                 prompts_dir: Optional[str] = None,
                 sessions_dir: Optional[str] = None) -> "AppConfig":
        data = data_dir or os.environ.get(DATA_DIR_ENV, "data/fixtures")
        prompts = prompts_dir or os.environ.get(PROMPTS_DIR_ENV)
        sessions = sessions_dir or os.environ.get(SESSIONS_DIR_ENV)
        return cls(data_dir=Path(data),
                   prompts_dir=Path(prompts) if prompts else None,
                   sessions_dir=Path(sessions) if sessions else None)


def load_engine(data_dir: Path) -> GeodataEngine:
    grid = load_fwi_grid(data_dir / FIXTURE_FILES["fwi"])
    incidents = load_incidents(data_dir / FIXTURE_FILES["incidents"])
    paleofire = load_paleofire(data_dir / FIXTURE_FILES["paleofire"])
    census = load_census(data_dir / FIXTURE_FILES["census"])
    return GeodataEngine(
        grid=tuple(grid.items),
        incidents=tuple(incidents.items),
        paleofire_sites=tuple(paleofire.items),
        census_blocks=tuple(census.items),
    )


def load_index(data_dir: Path, embedder: HashingEmbedder) -> VectorIndex:
    corpus = load_corpus(data_dir / FIXTURE_FILES["corpus"], embedder)
    return index_build(corpus.items)


def load_metadata_client(data_dir: Path) -> Optional[MetadataLookup]:
    path = data_dir / FIXTURE_FILES["metadata"]
    if not path.exists():
        return None
    with open(path, encoding="utf-8") as fh:
        return RecordedMetadataClient(json.load(fh))


def build_orchestrator(config: AppConfig, provider: Provider) -> Orchestrator:
    embedder = HashingEmbedder(dimension=config.embedder_dimension,
                               seed=config.embedder_seed)
    prompts = PromptSet(config.prompts_dir)
    store = SessionStore(config.sessions_dir) if config.sessions_dir else None
    return Orchestrator(
        provider=provider,
        engine=load_engine(config.data_dir),
        index=load_index(config.data_dir, embedder),
        embedder=embedder,
        prompts=prompts,
        store=store,
        metadata_client=load_metadata_client(config.data_dir),
    )
