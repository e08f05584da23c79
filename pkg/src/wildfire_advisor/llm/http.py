"""Remote chat-completions provider and record/replay cassettes."""

from __future__ import annotations

import hashlib
import json
import os
from pathlib import Path
from typing import Optional

import httpx

from wildfire_advisor.model.serialize import canonical_dumps
from wildfire_advisor.llm.gateway import (
    ChatRequest,
    ChatResponse,
    GatewayError,
    Provider,
    SchemaViolationError,
    ToolCall,
    TransportError,
)

API_KEY_ENV = "WILDFIRE_ADVISOR_LLM_API_KEY"


class HttpProvider:
    """HTTPS chat-completions-style endpoint; API key from the environment."""

    def __init__(self, base_url: str, model: str,
                 api_key_env: str = API_KEY_ENV, timeout: float = 60.0) -> None:
        self._base_url = base_url.rstrip("/")
        self._model = model
        self._api_key_env = api_key_env
        self._timeout = timeout

    def send(self, request: ChatRequest) -> ChatResponse:
        api_key = os.environ.get(self._api_key_env, "")
        messages = [{"role": "system", "content": request.system_prompt}]
        messages += [m.to_payload() for m in request.messages]
        body = {
            "model": self._model,
            "messages": messages,
            "temperature": request.temperature,
        }
        if request.tools:
            body["tools"] = [
                {
                    "type": "function",
                    "function": {
                        "name": t.name,
                        "description": t.description,
                        "parameters": {
                            "type": "object",
                            "properties": {
                                k: {"type": p.type, "description": p.description}
                                for k, p in t.parameters.items()
                            },
                            "required": [k for k, p in t.parameters.items() if p.required],
                        },
                    },
                }
                for t in request.tools
            ]
        try:
            response = httpx.post(
                f"{self._base_url}/chat/completions",
                json=body,
                headers={"Authorization": f"Bearer {api_key}"},
                timeout=self._timeout,
            )
        except httpx.HTTPError as exc:
            raise TransportError(str(exc)) from exc
        if response.status_code == 429 or response.status_code >= 500:
            raise TransportError(f"upstream status {response.status_code}")
        if response.status_code >= 400:
            raise GatewayError(f"request rejected: {response.status_code}")
        message = response.json()["choices"][0]["message"]
        tool_call: Optional[ToolCall] = None
        calls = message.get("tool_calls") or []
        if calls:
            function = calls[0].get("function", {})
            raw_args = function.get("arguments", "{}")
            try:
                arguments = json.loads(raw_args) if isinstance(raw_args, str) else raw_args
            except json.JSONDecodeError as exc:
                raise SchemaViolationError(f"malformed tool-call arguments: {exc}") from exc
            if not isinstance(arguments, dict):
                raise SchemaViolationError("tool-call arguments must be an object")
            tool_call = ToolCall(name=function.get("name", ""), arguments=arguments)
        text = message.get("content")
        if text is None and tool_call is None:
            raise SchemaViolationError("provider returned neither text nor a tool call")
        return ChatResponse(text=text, tool_call=tool_call)


def _request_key(request: ChatRequest) -> str:
    return hashlib.sha256(
        canonical_dumps(request.to_payload()).encode("utf-8")).hexdigest()


class CassetteProvider:
    """Record/replay wrapper for hermetic CI.

    In record mode every (request, response) pair is appended to the
    cassette file; in replay mode responses are served FIFO per request
    hash and a miss raises TransportError.
    """

    def __init__(self, path: str | Path, inner: Optional[Provider] = None,
                 mode: str = "replay") -> None:
        if mode not in ("record", "replay"):
            raise ValueError("mode must be 'record' or 'replay'")
        if mode == "record" and inner is None:
            raise ValueError("record mode wraps a real provider")
        self._path = Path(path)
        self._inner = inner
        self._mode = mode
        self._queues: dict[str, list[dict]] = {}
        if mode == "replay":
            self._load()

    def _load(self) -> None:
        if not self._path.exists():
            return
        with open(self._path, encoding="utf-8") as fh:
            for line in fh:
                line = line.strip()
                if not line:
                    continue
                entry = json.loads(line)
                self._queues.setdefault(entry["key"], []).append(entry["response"])

    def send(self, request: ChatRequest) -> ChatResponse:
        key = _request_key(request)
        if self._mode == "record":
            response = self._inner.send(request)  # type: ignore[union-attr]
            with open(self._path, "a", encoding="utf-8") as fh:
                fh.write(canonical_dumps(
                    {"key": key, "response": response.to_payload()}) + "\n")
            return response
        queue = self._queues.get(key)
        if not queue:
            raise TransportError(f"no recorded response for request {key[:12]}")
        return ChatResponse.from_payload(queue.pop(0))
