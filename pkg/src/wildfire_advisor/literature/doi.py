"""DOI validation against a scholarly metadata service.

A DOI is attached only when the metadata candidate's title is close enough
(normalized Levenshtein similarity >= 0.90 after lowercasing and punctuation
stripping) and the first author's surname matches case-insensitively;
otherwise the DOI is discarded. Lookup failures degrade to Absent and never
block rendering.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Optional, Protocol, Sequence

import httpx

from wildfire_advisor.literature.documents import DoiStatus

TITLE_SIMILARITY_THRESHOLD = 0.90

_APOSTROPHE_RE = re.compile(r"['’]")
_PUNCT_RE = re.compile(r"[^a-z0-9\s]+")
_WS_RE = re.compile(r"\s+")


@dataclass(frozen=True)
class MetadataRecord:
    title: str
    authors: tuple[str, ...] = ()
    doi: Optional[str] = None


class MetadataLookup(Protocol):
    """Metadata service contract: candidate records for a title query."""

    def lookup_by_title(self, title: str) -> list[MetadataRecord]: ...


@dataclass(frozen=True)
class DoiValidation:
    status: DoiStatus
    title_similarity: Optional[float] = None
    doi: Optional[str] = None
    retry_advised: bool = False


def levenshtein(a: str, b: str) -> int:
    """Classic edit distance (insert/delete/substitute, unit costs)."""
    if a == b:
        return 0
    if not a:
        return len(b)
    if not b:
        return len(a)
    previous = list(range(len(b) + 1))
    for i, ca in enumerate(a, start=1):
        current = [i]
        for j, cb in enumerate(b, start=1):
            cost = 0 if ca == cb else 1
            current.append(min(previous[j] + 1,      # deletion
                               current[j - 1] + 1,   # insertion
                               previous[j - 1] + cost))
        previous = current
    return previous[-1]


def normalize_title(title: str) -> str:
    lowered = _APOSTROPHE_RE.sub("", title.lower())
    lowered = _PUNCT_RE.sub(" ", lowered)
    return _WS_RE.sub(" ", lowered).strip()


def normalized_title_similarity(a: str, b: str) -> float:
    """1 - dist/maxlen over normalized titles; empty pair counts as identical."""
    na, nb = normalize_title(a), normalize_title(b)
    longest = max(len(na), len(nb))
    if longest == 0:
        return 1.0
    return 1.0 - levenshtein(na, nb) / longest


def _surname(author: str) -> str:
    name = author.strip()
    if "," in name:
        return name.split(",", 1)[0].strip().casefold()
    parts = name.split()
    return parts[-1].casefold() if parts else ""


def first_author_surname_matches(doc_authors: Sequence[str],
                                 record_authors: Sequence[str]) -> bool:
    if not doc_authors or not record_authors:
        return False
    return _surname(doc_authors[0]) == _surname(record_authors[0])


def validate_doi(doc, metadata_client: MetadataLookup) -> DoiValidation:
    """Resolve and check a document's DOI via the metadata service."""
    try:
        candidates = metadata_client.lookup_by_title(doc.title)
    except TimeoutError:
        return DoiValidation(status=DoiStatus.ABSENT, retry_advised=True)
    if not candidates:
        return DoiValidation(status=DoiStatus.ABSENT)
    best = max(candidates,
               key=lambda record: normalized_title_similarity(doc.title, record.title))
    similarity = normalized_title_similarity(doc.title, best.title)
    if similarity >= TITLE_SIMILARITY_THRESHOLD and first_author_surname_matches(
            doc.authors, best.authors):
        resolved = doc.doi or best.doi
        if resolved:
            return DoiValidation(status=DoiStatus.VERIFIED,
                                 title_similarity=similarity, doi=resolved)
        return DoiValidation(status=DoiStatus.ABSENT, title_similarity=similarity)
    return DoiValidation(status=DoiStatus.DISCARDED, title_similarity=similarity)


class RecordedMetadataClient:
    """Hermetic metadata client backed by a recorded-response mapping.

    The fixture maps normalized titles to candidate record dicts
    (title/authors/doi). A normalized title mapped to the string "timeout"
    simulates a client timeout.
    """

    def __init__(self, responses: dict[str, object]) -> None:
        self._responses = {normalize_title(k): v for k, v in responses.items()}

    def lookup_by_title(self, title: str) -> list[MetadataRecord]:
        entry = self._responses.get(normalize_title(title))
        if entry == "timeout":
            raise TimeoutError("recorded timeout")
        if not entry:
            return []
        return [
            MetadataRecord(title=rec["title"],
                           authors=tuple(rec.get("authors", ())),
                           doi=rec.get("doi"))
            for rec in entry  # type: ignore[union-attr]
        ]


class HttpMetadataClient:
    """Crossref-style works lookup over HTTP."""

    def __init__(self, base_url: str = "https://api.crossref.org",
                 timeout: float = 10.0, rows: int = 5) -> None:
        self._base_url = base_url.rstrip("/")
        self._timeout = timeout
        self._rows = rows

    def lookup_by_title(self, title: str) -> list[MetadataRecord]:
        try:
            response = httpx.get(
                f"{self._base_url}/works",
                params={"query.title": title, "rows": self._rows},
                timeout=self._timeout,
            )
            response.raise_for_status()
        except httpx.TimeoutException as exc:
            raise TimeoutError(str(exc)) from exc
        except httpx.HTTPError as exc:
            raise TimeoutError(str(exc)) from exc
        items = response.json().get("message", {}).get("items", [])
        records = []
        for item in items:
            titles = item.get("title") or []
            authors = tuple(
                f"{a.get('family', '')}, {a.get('given', '')}".strip(", ")
                for a in item.get("author", [])
            )
            records.append(MetadataRecord(
                title=titles[0] if titles else "",
                authors=authors,
                doi=item.get("DOI"),
            ))
        return records
