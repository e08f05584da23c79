"""Scripted replays: drive the orchestrator from a recorded event log.

A script is an ordinary session log. The runner feeds its user_input
records back through get_response, with a scripted provider built from the
recorded provider_response records, so a deterministic pipeline reproduces
the log byte for byte. Records flagged {"external": true} on tool_event
lines are applied directly through update_assistant, which is how guard
behavior is exercised from scripts.
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path
from typing import Optional

from wildfire_advisor.llm.gateway import ChatResponse
from wildfire_advisor.llm.scripted import ScriptedProvider
from wildfire_advisor.orchestrator.events import EventKind, LogRecord, ToolEventName
from wildfire_advisor.orchestrator.session import Orchestrator, Session


@dataclass
class ScriptRun:
    session: Session
    records: list[LogRecord]


def provider_from_records(records: list[LogRecord]) -> ScriptedProvider:
    """Queue every recorded provider response, in order of appearance."""
    script = [
        ChatResponse.from_payload(r.payload["response"])
        for r in records
        if r.kind is EventKind.PROVIDER_RESPONSE
    ]
    return ScriptedProvider(script)


def run_script(orchestrator: Orchestrator, records: list[LogRecord]) -> ScriptRun:
    """Re-run a script's user inputs against a fresh session.

    Raises GuardViolationError on illegal scripted tool events and
    ScriptExhaustedError when the recorded provider responses run out.
    """
    session = orchestrator.create_session()
    for record in records:
        if record.kind is EventKind.USER_INPUT:
            orchestrator.get_response(session, record.payload["text"])
        elif record.kind is EventKind.TOOL_EVENT and record.payload.get("external"):
            name = ToolEventName(record.payload["name"])
            orchestrator.update_assistant(session, name,
                                          {k: v for k, v in record.payload.items()
                                           if k not in ("name", "external")})
    return ScriptRun(session=session, records=session.log)


def write_log(records: list[LogRecord], path: str | Path,
              meta: Optional[dict] = None) -> None:
    from wildfire_advisor.model.serialize import canonical_dumps

    with open(path, "w", encoding="utf-8") as fh:
        if meta:
            fh.write(canonical_dumps({"meta": meta}) + "\n")
        for record in records:
            fh.write(record.to_line() + "\n")
