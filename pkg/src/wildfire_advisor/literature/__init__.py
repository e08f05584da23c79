"""Embedding-based abstract retrieval with metadata DOI validation."""

from wildfire_advisor.literature.documents import Document, DoiStatus, RetrievalHit
from wildfire_advisor.literature.embedder import Embedder, HashingEmbedder, cosine
from wildfire_advisor.literature.index import (
    LiteratureQueryResult,
    VectorIndex,
    index_build,
    search,
)
from wildfire_advisor.literature.doi import (
    DoiValidation,
    MetadataLookup,
    MetadataRecord,
    RecordedMetadataClient,
    HttpMetadataClient,
    normalized_title_similarity,
    levenshtein,
    validate_doi,
    TITLE_SIMILARITY_THRESHOLD,
)
from wildfire_advisor.literature.render import render_literature_block
from wildfire_advisor.literature.corpus import load_corpus

__all__ = [
    "Document",
    "DoiStatus",
    "DoiValidation",
    "Embedder",
    "HashingEmbedder",
    "HttpMetadataClient",
    "LiteratureQueryResult",
    "MetadataLookup",
    "MetadataRecord",
    "RecordedMetadataClient",
    "RetrievalHit",
    "TITLE_SIMILARITY_THRESHOLD",
    "VectorIndex",
    "cosine",
    "index_build",
    "levenshtein",
    "load_corpus",
    "normalized_title_similarity",
    "render_literature_block",
    "search",
    "validate_doi",
]
