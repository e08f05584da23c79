"""Deterministic scripted provider: the offline stand-in for a live model."""

from __future__ import annotations

import threading
from typing import Iterable, Sequence

from wildfire_advisor.llm.gateway import (
    ChatRequest,
    ChatResponse,
    ScriptExhaustedError,
)


class ScriptedProvider:
    """Returns queued responses in order; exhaustion is an explicit error.

    Received requests are kept for assertions (prompt-content checks in
    agent tests). Queue access is serialized for concurrent use.
    """

    def __init__(self, script: Iterable[ChatResponse]) -> None:
        self._script: list[ChatResponse] = list(script)
        self._cursor = 0
        self._lock = threading.Lock()
        self.requests: list[ChatRequest] = []

    @property
    def remaining(self) -> int:
        with self._lock:
            return len(self._script) - self._cursor

    def send(self, request: ChatRequest) -> ChatResponse:
        with self._lock:
            self.requests.append(request)
            if self._cursor >= len(self._script):
                raise ScriptExhaustedError("conversation ended unexpectedly")
            response = self._script[self._cursor]
            self._cursor += 1
            return response


def scripted_provider(script: Sequence[ChatResponse]) -> ScriptedProvider:
    return ScriptedProvider(script)
