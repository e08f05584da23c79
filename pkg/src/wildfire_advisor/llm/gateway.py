"""Provider-agnostic chat completion with strict tool-call validation.

Tool arguments are validated strictly (unknown fields rejected) so that
hallucinated or typo'd calls surface as typed, recoverable errors instead
of silently derailing a session.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from typing import Any, Callable, Mapping, Optional, Protocol
import re

from wildfire_advisor.model import Role
from wildfire_advisor.model.serialize import canonical_type

_TOOL_NAME_RE = re.compile(r"^[a-z_]+$")

_PARAM_TYPES = {"string", "number", "integer", "boolean", "object", "array"}


class GatewayError(Exception):
    retryable = False


class TransportError(GatewayError):
    retryable = True


class SchemaViolationError(GatewayError):
    retryable = False


class ScriptExhaustedError(GatewayError):
    """The scripted provider ran out of replies: conversation ended unexpectedly."""


@dataclass(frozen=True)
class ToolParam:
    type: str
    required: bool = True
    description: str = ""

    def __post_init__(self) -> None:
        if self.type not in _PARAM_TYPES:
            raise ValueError(f"unknown parameter type {self.type!r}")


@dataclass(frozen=True)
class ToolSpec:
    name: str
    description: str = ""
    parameters: Mapping[str, ToolParam] = field(default_factory=dict)

    def __post_init__(self) -> None:
        if not _TOOL_NAME_RE.match(self.name):
            raise ValueError(f"tool name {self.name!r} must match ^[a-z_]+$")
        object.__setattr__(self, "parameters", dict(self.parameters))

    def validate_args(self, arguments: Mapping[str, Any]) -> dict[str, Any]:
        """Strict validation: unknown fields, missing fields, wrong types all fail."""
        unknown = set(arguments) - set(self.parameters)
        if unknown:
            raise SchemaViolationError(
                f"tool {self.name}: unknown argument(s) {sorted(unknown)}")
        for name, param in self.parameters.items():
            if name not in arguments:
                if param.required:
                    raise SchemaViolationError(f"tool {self.name}: missing argument {name!r}")
                continue
            value = arguments[name]
            if not _type_ok(param.type, value):
                raise SchemaViolationError(
                    f"tool {self.name}: argument {name!r} is not a {param.type}")
        return dict(arguments)


def _type_ok(expected: str, value: Any) -> bool:
    if expected == "string":
        return isinstance(value, str)
    if expected == "boolean":
        return isinstance(value, bool)
    if expected == "integer":
        return isinstance(value, int) and not isinstance(value, bool)
    if expected == "number":
        return isinstance(value, (int, float)) and not isinstance(value, bool)
    if expected == "object":
        return isinstance(value, dict)
    if expected == "array":
        return isinstance(value, list)
    return False


@dataclass(frozen=True)
class ChatMessage:
    role: Role
    content: str

    def to_payload(self) -> dict[str, str]:
        return {"role": self.role.value, "content": self.content}

    @classmethod
    def from_payload(cls, payload: Mapping[str, str]) -> "ChatMessage":
        return cls(role=Role(payload["role"]), content=payload["content"])


@canonical_type("chat_request")
@dataclass(frozen=True)
class ChatRequest:
    system_prompt: str
    messages: tuple[ChatMessage, ...] = ()
    tools: tuple[ToolSpec, ...] = ()
    temperature: float = 0.0

    def __post_init__(self) -> None:
        object.__setattr__(self, "messages", tuple(self.messages))
        object.__setattr__(self, "tools", tuple(self.tools))
        if self.temperature < 0:
            raise ValueError("temperature must be non-negative")
        names = [t.name for t in self.tools]
        if len(set(names)) != len(names):
            raise ValueError("tool names must be unique")

    def tool(self, name: str) -> Optional[ToolSpec]:
        for spec in self.tools:
            if spec.name == name:
                return spec
        return None

    def to_payload(self) -> dict[str, Any]:
        return {
            "system_prompt": self.system_prompt,
            "messages": [m.to_payload() for m in self.messages],
            "tools": [
                {
                    "name": t.name,
                    "description": t.description,
                    "parameters": {
                        k: {"type": p.type, "required": p.required,
                            "description": p.description}
                        for k, p in t.parameters.items()
                    },
                }
                for t in self.tools
            ],
            "temperature": self.temperature,
        }

    @classmethod
    def from_payload(cls, payload: Mapping[str, Any]) -> "ChatRequest":
        tools = tuple(
            ToolSpec(
                name=t["name"], description=t.get("description", ""),
                parameters={k: ToolParam(**p) for k, p in t.get("parameters", {}).items()},
            )
            for t in payload.get("tools", ())
        )
        return cls(
            system_prompt=payload["system_prompt"],
            messages=tuple(ChatMessage.from_payload(m) for m in payload.get("messages", ())),
            tools=tools,
            temperature=payload.get("temperature", 0.0),
        )


@dataclass(frozen=True)
class ToolCall:
    name: str
    arguments: Mapping[str, Any] = field(default_factory=dict)

    def __post_init__(self) -> None:
        object.__setattr__(self, "arguments", dict(self.arguments))

    def to_payload(self) -> dict[str, Any]:
        return {"name": self.name, "arguments": dict(self.arguments)}

    @classmethod
    def from_payload(cls, payload: Mapping[str, Any]) -> "ToolCall":
        return cls(name=payload["name"], arguments=dict(payload.get("arguments", {})))


@canonical_type("chat_response")
@dataclass(frozen=True)
class ChatResponse:
    text: Optional[str] = None
    tool_call: Optional[ToolCall] = None

    def __post_init__(self) -> None:
        if self.text is None and self.tool_call is None:
            raise ValueError("response needs assistant text or a tool call")

    def to_payload(self) -> dict[str, Any]:
        return {
            "text": self.text,
            "tool_call": self.tool_call.to_payload() if self.tool_call else None,
        }

    @classmethod
    def from_payload(cls, payload: Mapping[str, Any]) -> "ChatResponse":
        call = payload.get("tool_call")
        return cls(text=payload.get("text"),
                   tool_call=ToolCall.from_payload(call) if call else None)


class Provider(Protocol):
    """A chat-completion backend."""

    def send(self, request: ChatRequest) -> ChatResponse: ...


MAX_ATTEMPTS = 3
BACKOFF_BASE_SECONDS = 0.5


def complete(
    provider: Provider,
    request: ChatRequest,
    sleep: Callable[[float], None] = time.sleep,
) -> ChatResponse:
    """Send a request, retrying transport failures with bounded backoff.

    Responses carrying tool calls are validated against the request's tool
    schema; violations raise SchemaViolationError and are never retried here.
    """
    attempt = 0
    while True:
        attempt += 1
        try:
            response = provider.send(request)
        except TransportError:
            if attempt >= MAX_ATTEMPTS:
                raise
            sleep(BACKOFF_BASE_SECONDS * (2 ** (attempt - 1)))
            continue
        return _validate_response(request, response)


def _validate_response(request: ChatRequest, response: ChatResponse) -> ChatResponse:
    call = response.tool_call
    if call is None:
        return response
    spec = request.tool(call.name)
    if spec is None:
        raise SchemaViolationError(f"unknown tool {call.name!r} called")
    validated = spec.validate_args(call.arguments)
    return ChatResponse(text=response.text,
                        tool_call=ToolCall(name=call.name, arguments=validated))
