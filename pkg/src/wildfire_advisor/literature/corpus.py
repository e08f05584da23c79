"""Corpus ingest: tabular documents plus optional precomputed embeddings.

CSV columns: ``id``, ``title``, ``authors`` (';'-separated), ``year``,
``abstract``, ``doi`` (optional). The optional sidecar is an ``.npz`` with
``ids`` and ``embeddings`` arrays; rows without a sidecar entry are embedded
with the configured embedder.
"""

from __future__ import annotations

import csv
from pathlib import Path
from typing import Optional

import numpy as np

from wildfire_advisor.geo.datasets import LoadResult, RowError
from wildfire_advisor.literature.documents import Document
from wildfire_advisor.literature.embedder import Embedder


def load_corpus(
    path: str | Path,
    embedder: Embedder,
    embeddings_sidecar: Optional[str | Path] = None,
) -> LoadResult[Document]:
    sidecar: dict[str, np.ndarray] = {}
    if embeddings_sidecar is not None:
        archive = np.load(Path(embeddings_sidecar))
        sidecar = {str(i): vec for i, vec in zip(archive["ids"], archive["embeddings"])}

    result: LoadResult[Document] = LoadResult()
    with open(path, newline="", encoding="utf-8") as fh:
        reader = csv.DictReader(fh)
        for line, row in enumerate(reader, start=2):
            result.rows_read += 1
            doc_id = (row.get("id") or "").strip()
            if not doc_id:
                result.errors.append(RowError(line, "id", "document id is required"))
                continue
            title = (row.get("title") or "").strip()
            if not title:
                result.errors.append(RowError(line, "title", "title is required"))
                continue
            abstract = (row.get("abstract") or "").strip()
            if not abstract:
                result.errors.append(RowError(line, "abstract", "abstract is required"))
                continue
            try:
                year = int(row.get("year", ""))
            except ValueError:
                result.errors.append(
                    RowError(line, "year", f"not an integer: {row.get('year')!r}"))
                continue
            authors = tuple(a.strip() for a in (row.get("authors") or "").split(";")
                            if a.strip())
            embedding = sidecar.get(doc_id)
            if embedding is None:
                embedding = embedder.embed(abstract)
            try:
                document = Document(
                    id=doc_id, title=title, authors=authors, year=year,
                    abstract=abstract, doi=(row.get("doi") or "").strip() or None,
                    embedding=np.asarray(embedding, dtype=np.float64),
                )
            except ValueError as exc:
                result.errors.append(RowError(line, "embedding", str(exc)))
                continue
            result.items.append(document)
    return result
