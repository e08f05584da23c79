"""Orchestration: routing, guarded transitions, persistence, resume."""

from __future__ import annotations

import logging

import pytest

from wildfire_advisor.model import AgentStage
from wildfire_advisor.model.serialize import canonical_serialize
from wildfire_advisor.orchestrator.events import EventKind, ToolEventName
from wildfire_advisor.orchestrator.replay import provider_from_records, run_script
from wildfire_advisor.orchestrator.session import (
    ClosedSessionError,
    GuardViolationError,
    replay_state,
)

from tests.conftest import (
    golden_provider_script,
    golden_user_inputs,
)


def test_fresh_session_hello_gets_profession_prompt(make_orchestrator):
    orch = make_orchestrator()
    session = orch.create_session()
    assert session.stage is AgentStage.PROFILE_COLLECTION
    events = orch.get_response(session, "hello")
    texts = [e.payload["text"] for e in events if e.kind == "text"]
    assert any("professional background" in t for t in texts)
    assert session.stage is AgentStage.PROFILE_COLLECTION


def test_golden_run_traverses_five_stages(make_orchestrator, golden_records):
    orch = make_orchestrator(golden_provider_script(golden_records))
    session = orch.create_session()
    for text in golden_user_inputs(golden_records):
        orch.get_response(session, text)
    changes = [(r.payload["from"], r.payload["to"]) for r in session.log
               if r.kind is EventKind.STAGE_CHANGE]
    visited = ["profile_collection"] + [to for _, to in changes]
    assert visited == ["profile_collection", "profile_confirmation", "planning",
                       "plan_confirmation", "analysis"]


def test_input_after_closed_rejected(make_orchestrator, golden_records):
    orch = make_orchestrator(golden_provider_script(golden_records))
    session = orch.create_session()
    for text in golden_user_inputs(golden_records):
        orch.get_response(session, text)
    orch.update_assistant(session, ToolEventName.SESSION_CLOSE)
    assert session.stage is AgentStage.CLOSED
    with pytest.raises(ClosedSessionError):
        orch.get_response(session, "one more thing")


def test_legal_tool_events_advance_stage(make_orchestrator):
    orch = make_orchestrator()
    session = orch.create_session()
    orch.update_assistant(session, ToolEventName.PROFILE_READY)
    assert session.stage is AgentStage.PROFILE_CONFIRMATION
    orch.update_assistant(session, ToolEventName.PROFILE_COMPLETE)
    assert session.stage is AgentStage.PLANNING
    orch.update_assistant(session, ToolEventName.PLAN_READY)
    assert session.stage is AgentStage.PLAN_CONFIRMATION
    orch.update_assistant(session, ToolEventName.PLAN_COMPLETE)
    assert session.stage is AgentStage.ANALYSIS


def test_illegal_tool_event_rejected_and_logged(make_orchestrator, caplog):
    orch = make_orchestrator()
    session = orch.create_session()
    with caplog.at_level(logging.WARNING):
        with pytest.raises(GuardViolationError):
            orch.update_assistant(session, ToolEventName.PLAN_COMPLETE)
    assert session.stage is AgentStage.PROFILE_COLLECTION
    assert any("plan_complete" in message for message in caplog.messages)
    guard_records = [r for r in session.log if r.kind is EventKind.GUARD_VIOLATION]
    assert len(guard_records) == 1
    assert guard_records[0].payload["event"] == "plan_complete"


def test_profile_revise_loops_back(make_orchestrator):
    orch = make_orchestrator()
    session = orch.create_session()
    orch.update_assistant(session, ToolEventName.PROFILE_READY)
    orch.update_assistant(session, ToolEventName.PROFILE_REVISE)
    assert session.stage is AgentStage.PROFILE_COLLECTION


# -- persistence and resume ------------------------------------------------------------

def run_golden(make_orchestrator, golden_records, tmp_sessions):
    orch = make_orchestrator(golden_provider_script(golden_records),
                             sessions_dir=tmp_sessions)
    session = orch.create_session()
    for text in golden_user_inputs(golden_records):
        orch.get_response(session, text)
    return orch, session


def test_event_log_replay_is_pure(golden_records):
    first, report_a = replay_state(golden_records, "x")
    second, report_b = replay_state(golden_records, "x")
    assert not report_a.truncated and not report_b.truncated
    assert canonical_serialize(first.transcript) == canonical_serialize(second.transcript)
    assert first.stage is second.stage
    assert canonical_serialize(first.plan) == canonical_serialize(second.plan)


def test_resume_mid_analysis_reconstructs_state(make_orchestrator, golden_records,
                                                tmp_path):
    sessions_dir = tmp_path / "store"
    orch, original = run_golden(make_orchestrator, golden_records, sessions_dir)
    resumed = orch.resume_conversation(orch.store, original.id)
    assert resumed.id != original.id
    assert resumed.stage is original.stage
    assert canonical_serialize(resumed.transcript) == canonical_serialize(original.transcript)
    assert canonical_serialize(resumed.plan) == canonical_serialize(original.plan)
    assert canonical_serialize(resumed.context) == canonical_serialize(original.context)
    assert resumed.resumed_from == original.id


def test_resume_empty_log_fresh_session(make_orchestrator, tmp_path):
    sessions_dir = tmp_path / "store"
    orch = make_orchestrator([], sessions_dir=sessions_dir)
    store = orch.store
    store.path("empty").touch()
    resumed = orch.resume_conversation(store, "empty")
    assert resumed.stage is AgentStage.PROFILE_COLLECTION
    assert resumed.transcript.events == ()


def test_resume_corrupt_log_halts_at_last_valid(make_orchestrator, golden_records,
                                                tmp_path):
    sessions_dir = tmp_path / "store"
    orch, original = run_golden(make_orchestrator, golden_records, sessions_dir)
    path = orch.store.path(original.id)
    lines = path.read_text("utf-8").splitlines()
    cut = len(lines) // 2
    lines[cut] = '{"event": {"ordinal": "broken"'
    path.write_text("\n".join(lines) + "\n", "utf-8")
    resumed = orch.resume_conversation(orch.store, original.id)
    assert resumed.replay_report.truncated
    assert resumed.replay_report.error_line == cut + 1
    assert len(resumed.log) == cut
    assert resumed.replay_report.reason


def test_resume_then_continue_matches_uninterrupted(make_orchestrator,
                                                    golden_records, tmp_path):
    """Split at a boundary between get_response calls; transcripts must agree."""
    inputs = golden_user_inputs(golden_records)
    script = golden_provider_script(golden_records)

    # Uninterrupted run.
    orch_full = make_orchestrator(list(script), sessions_dir=tmp_path / "full")
    full = orch_full.create_session()
    for text in inputs:
        orch_full.get_response(full, text)

    for split in (3, 6, 9):
        # Run the prefix, persist, resume, and continue with the suffix.
        part_dir = tmp_path / f"part-{split}"
        orch_a = make_orchestrator(list(script), sessions_dir=part_dir)
        partial = orch_a.create_session()
        for text in inputs[:split]:
            orch_a.get_response(partial, text)
        consumed = len(script) - orch_a.provider.remaining
        orch_b = make_orchestrator(list(script[consumed:]), sessions_dir=part_dir)
        resumed = orch_b.resume_conversation(orch_b.store, partial.id)
        for text in inputs[split:]:
            orch_b.get_response(resumed, text)
        assert canonical_serialize(resumed.transcript) == \
            canonical_serialize(full.transcript), f"split {split} diverged"
        assert resumed.stage is full.stage


def test_run_script_reproduces_golden_byte_for_byte(make_orchestrator, golden_records):
    orch = make_orchestrator(provider_from_records(golden_records), store=False)
    run = run_script(orch, golden_records)
    produced = [r.to_line() for r in run.records]
    expected = [r.to_line() for r in golden_records]
    assert produced == expected


def test_full_script_with_close_event_reaches_closed(make_orchestrator,
                                                     golden_records, tmp_path):
    """A full session script extended with a close event ends at Closed."""
    from wildfire_advisor.orchestrator.replay import write_log
    from wildfire_advisor.orchestrator.session import read_log_file
    from wildfire_advisor.orchestrator.events import LogRecord

    extended = list(golden_records)
    extended.append(LogRecord(
        ordinal=extended[-1].ordinal + 1, kind=EventKind.TOOL_EVENT,
        stage=AgentStage.ANALYSIS,
        payload={"name": "session_close", "external": True}))
    path = tmp_path / "closing.jsonl"
    write_log(extended, path)
    _, records, report = read_log_file(path)
    assert not report.truncated

    orch = make_orchestrator(provider_from_records(records), store=False)
    run = run_script(orch, records)
    assert run.session.stage is AgentStage.CLOSED


def test_schema_violation_retried_once_then_succeeds(make_orchestrator,
                                                     golden_records):
    """A misspelled tool call at the planning turn is retried and recovers."""
    from wildfire_advisor.llm.gateway import ChatResponse, ToolCall

    script = golden_provider_script(golden_records)
    bad_call = ChatResponse(tool_call=ToolCall(name="plan_compete", arguments={}))
    # script[0] geocodes; the drafting turn sees the violation, then the plan.
    patched = [script[0], bad_call] + script[1:]
    orch = make_orchestrator(patched)
    session = orch.create_session()
    inputs = golden_user_inputs(golden_records)
    for text in inputs[:8]:  # through "accept"
        orch.get_response(session, text)
    assert session.stage is AgentStage.PLAN_CONFIRMATION
    assert session.draft is not None


def test_schema_violation_twice_surfaces_operator_error(make_orchestrator,
                                                        golden_records):
    from wildfire_advisor.llm.gateway import ChatResponse, ToolCall
    from wildfire_advisor.orchestrator.session import OPERATOR_ERROR

    script = golden_provider_script(golden_records)
    bad = ChatResponse(tool_call=ToolCall(name="plan_compete", arguments={}))
    # Replace the plan-drafting reply with two schema violations.
    patched = [script[0], bad, bad]
    orch = make_orchestrator(patched)
    session = orch.create_session()
    inputs = golden_user_inputs(golden_records)
    for text in inputs[:8]:  # up to and including "accept"
        orch.get_response(session, text)
    texts = [r.payload["text"] for r in session.log
             if r.kind is EventKind.ASSISTANT_TEXT]
    assert OPERATOR_ERROR in texts
    # The failure happened inside planning; the stage did not advance further.
    assert session.stage is AgentStage.PLANNING


def test_agent_error_yields_apology_and_unchanged_stage(make_orchestrator,
                                                        golden_records):
    """A parse failure after the retry budget produces the apologetic path."""
    from wildfire_advisor.llm.gateway import ChatResponse
    from wildfire_advisor.orchestrator.session import APOLOGY

    script = golden_provider_script(golden_records)
    garbage = ChatResponse(text="no plan block here")
    patched = script[:2] + [garbage, garbage]
    orch = make_orchestrator(patched)
    session = orch.create_session()
    inputs = golden_user_inputs(golden_records)
    for text in inputs[:8]:  # through "accept": plan drafted, awaiting approval
        orch.get_response(session, text)
    assert session.stage is AgentStage.PLAN_CONFIRMATION
    # Revision feedback hits the garbage replies; reprompt fails too.
    events = orch.get_response(session, "rework the plan from scratch please")
    texts = [e.payload["text"] for e in events if e.kind == "text"]
    assert APOLOGY in texts
    assert session.stage is AgentStage.PLAN_CONFIRMATION
