"""Uniform language-model interface with tool calling and test doubles."""

from wildfire_advisor.llm.gateway import (
    ChatMessage,
    ChatRequest,
    ChatResponse,
    GatewayError,
    Provider,
    SchemaViolationError,
    ScriptExhaustedError,
    ToolCall,
    ToolParam,
    ToolSpec,
    TransportError,
    complete,
)
from wildfire_advisor.llm.scripted import ScriptedProvider, scripted_provider
from wildfire_advisor.llm.http import CassetteProvider, HttpProvider

__all__ = [
    "CassetteProvider",
    "ChatMessage",
    "ChatRequest",
    "ChatResponse",
    "GatewayError",
    "HttpProvider",
    "Provider",
    "SchemaViolationError",
    "ScriptExhaustedError",
    "ScriptedProvider",
    "ToolCall",
    "ToolParam",
    "ToolSpec",
    "TransportError",
    "complete",
    "scripted_provider",
]
