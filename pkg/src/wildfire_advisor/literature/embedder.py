"""Deterministic text embedding for offline retrieval.

The hashing embedder derives a pseudo-random unit vector per token from a
cryptographic digest, accumulates token vectors, and normalizes. The same
configuration and text always produce the same vector, which keeps every
retrieval test hermetic. A remote sentence-embedding client satisfying the
same protocol is a drop-in replacement.
"""

from __future__ import annotations

import hashlib
import re
from typing import Protocol

import numpy as np

DEFAULT_DIMENSION = 384

_TOKEN_RE = re.compile(r"[a-z0-9]+")


class Embedder(Protocol):
    """Embedding model contract: fixed dimension, deterministic embed()."""

    @property
    def dimension(self) -> int: ...

    def embed(self, text: str) -> np.ndarray: ...


class HashingEmbedder:
    """Seeded token-hashing embedder producing unit vectors."""

    def __init__(self, dimension: int = DEFAULT_DIMENSION, seed: int = 0) -> None:
        if dimension < 1:
            raise ValueError("dimension must be positive")
        self._dimension = dimension
        self._seed = seed
        self._token_cache: dict[str, np.ndarray] = {}

    @property
    def dimension(self) -> int:
        return self._dimension

    def _token_vector(self, token: str) -> np.ndarray:
        cached = self._token_cache.get(token)
        if cached is not None:
            return cached
        digest = hashlib.sha256(f"{self._seed}:{token}".encode("utf-8")).digest()
        rng = np.random.default_rng(int.from_bytes(digest[:8], "big"))
        vector = rng.standard_normal(self._dimension)
        self._token_cache[token] = vector
        return vector

    def embed(self, text: str) -> np.ndarray:
        tokens = _TOKEN_RE.findall(text.lower())
        if not tokens:
            vector = np.zeros(self._dimension)
            vector[0] = 1.0
            return vector
        acc = np.zeros(self._dimension)
        for token in tokens:
            acc += self._token_vector(token)
        norm = float(np.linalg.norm(acc))
        if norm == 0.0:
            acc[0] = 1.0
            return acc
        return acc / norm


def cosine(a: np.ndarray, b: np.ndarray) -> float:
    """Cosine similarity, safe for not-quite-unit vectors."""
    denom = float(np.linalg.norm(a)) * float(np.linalg.norm(b))
    if denom == 0.0:
        return 0.0
    return float(np.dot(a, b) / denom)
