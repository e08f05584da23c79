"""Literature records and scored retrieval results."""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Any, Optional

import numpy as np

from wildfire_advisor.model.serialize import canonical_type

EMBEDDING_NORM_TOLERANCE = 1e-6


class DoiStatus(Enum):
    VERIFIED = "verified"
    DISCARDED = "discarded"
    ABSENT = "absent"


@canonical_type("document")
@dataclass(frozen=True, eq=False)
class Document:
    """One corpus entry; the embedding is a unit vector of the index dimension."""

    id: str
    title: str
    authors: tuple[str, ...]
    year: int
    abstract: str
    doi: Optional[str] = None
    embedding: Optional[np.ndarray] = None

    def __post_init__(self) -> None:
        object.__setattr__(self, "authors", tuple(self.authors))
        if self.embedding is not None:
            vector = np.asarray(self.embedding, dtype=np.float64)
            norm = float(np.linalg.norm(vector))
            if abs(norm - 1.0) > EMBEDDING_NORM_TOLERANCE:
                raise ValueError(f"embedding norm {norm} not within 1e-6 of 1.0")
            object.__setattr__(self, "embedding", vector)

    @property
    def dimension(self) -> Optional[int]:
        return None if self.embedding is None else int(self.embedding.shape[0])

    def to_payload(self) -> dict[str, Any]:
        return {
            "id": self.id,
            "title": self.title,
            "authors": list(self.authors),
            "year": self.year,
            "abstract": self.abstract,
            "doi": self.doi,
            "embedding": None if self.embedding is None else [float(x) for x in self.embedding],
        }

    @classmethod
    def from_payload(cls, payload: dict[str, Any]) -> "Document":
        embedding = payload.get("embedding")
        return cls(
            id=payload["id"],
            title=payload["title"],
            authors=tuple(payload["authors"]),
            year=payload["year"],
            abstract=payload["abstract"],
            doi=payload.get("doi"),
            embedding=None if embedding is None else np.asarray(embedding, dtype=np.float64),
        )


@dataclass(frozen=True, eq=False)
class RetrievalHit:
    """A ranked result: the document, its cosine score, and DOI status."""

    document: Document
    score: float
    doi_status: DoiStatus = DoiStatus.ABSENT

    def __post_init__(self) -> None:
        if not -1.0 - 1e-9 <= self.score <= 1.0 + 1e-9:
            raise ValueError(f"cosine score {self.score} outside [-1, 1]")
        if self.doi_status is DoiStatus.VERIFIED and not self.document.doi:
            raise ValueError("verified hit requires a DOI")
