"""Semantic similarity between a response and the retrieved abstracts."""

from __future__ import annotations

from typing import Sequence

from wildfire_advisor.literature.embedder import Embedder, cosine


def embedding_similarity_report(response_text: str,
                                abstracts: Sequence[str],
                                embedder: Embedder) -> float:
    """Mean cosine between the response embedding and each abstract embedding."""
    if not abstracts:
        raise ValueError("at least one abstract is required")
    response_vector = embedder.embed(response_text)
    scores = [cosine(response_vector, embedder.embed(abstract))
              for abstract in abstracts]
    return sum(scores) / len(scores)
