"""Ranked literature block rendering."""

from __future__ import annotations

from typing import Sequence

from wildfire_advisor.literature.documents import DoiStatus, RetrievalHit

NO_RESULTS_BLOCK = "No relevant literature found for this query."


def render_literature_block(hits: Sequence[RetrievalHit]) -> str:
    """One entry per hit in rank order; only verified DOIs get a link."""
    if not hits:
        return NO_RESULTS_BLOCK
    blocks = []
    for rank, hit in enumerate(hits, start=1):
        doc = hit.document
        lines = [
            f"{rank}. {doc.title} ({doc.year})",
            f"   Authors: {'; '.join(doc.authors)}",
            f"   Abstract: {doc.abstract}",
        ]
        if hit.doi_status is DoiStatus.VERIFIED and doc.doi:
            lines.append(f"   DOI: https://doi.org/{doc.doi}")
        blocks.append("\n".join(lines))
    return "\n\n".join(blocks)
