"""Prompt fixture loading.

Prompts live as markdown files in the package's prompts/ directory (or an
operator-supplied override directory) and are content-hashed by the test
suite so silent drift is caught.
"""

from __future__ import annotations

import hashlib
from importlib import resources
from pathlib import Path
from typing import Optional

PROMPT_NAMES = (
    "profile_system",
    "profile_profession",
    "profile_concern",
    "profile_location",
    "profile_time",
    "profile_scope",
    "profile_geocode_system",
    "profile_geocode_confirm",
    "profile_summary",
    "planning_system",
    "planning_example",
    "planning_datasets",
    "analyst_recommendation",
    "analyst_followup",
    "judge_system",
)


class PromptSet:
    """Named prompt texts, loaded once per directory."""

    def __init__(self, directory: Optional[str | Path] = None) -> None:
        self._directory = Path(directory) if directory else None
        self._cache: dict[str, str] = {}

    def get(self, name: str) -> str:
        if name in self._cache:
            return self._cache[name]
        if name not in PROMPT_NAMES:
            raise KeyError(f"unknown prompt {name!r}")
        filename = f"{name}.md"
        if self._directory is not None:
            text = (self._directory / filename).read_text(encoding="utf-8")
        else:
            ref = resources.files("wildfire_advisor").joinpath("prompts", filename)
            text = ref.read_text(encoding="utf-8")
        self._cache[name] = text
        return text

    def content_hash(self, name: str) -> str:
        return hashlib.sha256(self.get(name).encode("utf-8")).hexdigest()


_DEFAULT = PromptSet()


def default_prompts() -> PromptSet:
    return _DEFAULT
