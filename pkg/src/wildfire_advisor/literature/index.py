"""Exact top-k retrieval over the document corpus.

Desk-scale corpora need no approximate-NN structure: ranking is a full
cosine sort with a fixed tie rule (descending score, then ascending
document id), so results never depend on insertion order.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Any, Optional, Sequence

import numpy as np

from wildfire_advisor.model.serialize import canonical_type
from wildfire_advisor.literature.documents import Document, DoiStatus, RetrievalHit
from wildfire_advisor.literature.embedder import Embedder
from wildfire_advisor.literature.doi import MetadataLookup, validate_doi


@dataclass(frozen=True)
class VectorIndex:
    """Immutable store of documents and their stacked embeddings."""

    dimension: int
    documents: tuple[Document, ...]
    matrix: np.ndarray  # shape (len(documents), dimension)

    def __len__(self) -> int:
        return len(self.documents)


def index_build(docs: Sequence[Document], dimension: Optional[int] = None) -> VectorIndex:
    """Build an index; rejects dimension mismatches and duplicate ids."""
    docs = tuple(docs)
    if not docs:
        dim = dimension or 0
        return VectorIndex(dimension=dim, documents=(), matrix=np.zeros((0, dim)))
    dims = {d.dimension for d in docs}
    if None in dims:
        raise ValueError("every indexed document needs an embedding")
    if len(dims) != 1:
        raise ValueError(f"mixed embedding dimensions: {sorted(dims)}")
    dim = dims.pop()
    if dimension is not None and dim != dimension:
        raise ValueError(f"corpus dimension {dim} != expected {dimension}")
    ids = [d.id for d in docs]
    if len(set(ids)) != len(ids):
        raise ValueError("duplicate document ids in corpus")
    matrix = np.stack([d.embedding for d in docs])
    return VectorIndex(dimension=dim, documents=docs, matrix=matrix)


def search(
    index: VectorIndex,
    query: str,
    embedder: Embedder,
    k: int = 3,
    metadata_client: Optional[MetadataLookup] = None,
) -> list[RetrievalHit]:
    """Top-k documents by cosine similarity to the embedded query."""
    if k < 1:
        raise ValueError("k must be at least 1")
    if len(index) == 0:
        return []
    if embedder.dimension != index.dimension:
        raise ValueError(
            f"embedder dimension {embedder.dimension} != index dimension {index.dimension}")
    q = np.asarray(embedder.embed(query), dtype=np.float64)
    scores = index.matrix @ q
    order = sorted(range(len(index)),
                   key=lambda i: (-scores[i], index.documents[i].id))
    hits: list[RetrievalHit] = []
    for i in order[:k]:
        document = index.documents[i]
        status = DoiStatus.ABSENT
        if metadata_client is not None:
            validation = validate_doi(document, metadata_client)
            status = validation.status
            if validation.doi and document.doi is None:
                from dataclasses import replace
                document = replace(document, doi=validation.doi)
        hits.append(RetrievalHit(document=document,
                                 score=float(np.clip(scores[i], -1.0, 1.0)),
                                 doi_status=status))
    return hits


@canonical_type("literature_query_result")
@dataclass(frozen=True)
class LiteratureQueryResult:
    """Console/analyst payload for one literature search (no raw embeddings)."""

    query: str
    k: int
    hits: tuple[dict[str, Any], ...]

    @classmethod
    def from_hits(cls, query: str, k: int,
                  hits: Sequence[RetrievalHit]) -> "LiteratureQueryResult":
        rows = tuple(
            {
                "rank": rank,
                "id": h.document.id,
                "title": h.document.title,
                "authors": list(h.document.authors),
                "year": h.document.year,
                "abstract": h.document.abstract,
                "doi": h.document.doi,
                "doi_status": h.doi_status.value,
                "score": round(h.score, 4),
            }
            for rank, h in enumerate(hits, start=1)
        )
        return cls(query=query, k=k, hits=rows)

    def to_payload(self) -> dict[str, Any]:
        return {"query": self.query, "k": self.k, "hits": [dict(h) for h in self.hits]}

    @classmethod
    def from_payload(cls, payload: dict[str, Any]) -> "LiteratureQueryResult":
        return cls(query=payload["query"], k=payload["k"],
                   hits=tuple(payload["hits"]))
