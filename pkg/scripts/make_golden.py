#!/usr/bin/env python3
"""Regenerate the golden session script and transcript under data/scripts/.

The golden session walks the full pipeline (profile -> plan -> fire-weather
analysis -> literature -> recommendations) against the fixture datasets with
a fully scripted provider. Run from the repository root after changing
fixtures, prompts, or agent behavior.
"""

from __future__ import annotations

from pathlib import Path

from wildfire_advisor.config import AppConfig, build_orchestrator
from wildfire_advisor.llm.gateway import ChatResponse, ToolCall
from wildfire_advisor.llm.scripted import ScriptedProvider
from wildfire_advisor.model.serialize import canonical_serialize
from wildfire_advisor.orchestrator.replay import write_log

ROOT = Path(__file__).resolve().parents[1]
OUT = ROOT / "data" / "scripts"

PLAN_TEXT = """Here is my proposed plan.

[[plan]]
step: data_retrieval | dataset: fwi | rationale: Assess how seasonal fire weather is projected to change around the property over the coming decades.
step: literature_review | rationale: Review forest management studies on maximizing marketable species while reducing wildfire risk.
step: recommendation_development | rationale: Combine the projections and literature into a management plan for the coming decade.
[[/plan]]"""

RECOMMENDATION_TEXT = """Recommendations for your forest and property:

Fuel and vegetation management
- Keep regular thinning and pruning cycles on the oak stands, and favor fire-resistant native species when replanting.
- Schedule prescribed burns outside the spring window, when the projected fire weather is most elevated.

Property protection
- Maintain defensible space around structures and keep access roads clear for emergency equipment.
- Use fire-resistant materials for outbuildings nearest the tree line.

Planning ahead
- Revisit the seasonal projections before each spring and coordinate burn plans with the county mitigation program."""

PROVIDER_SCRIPT = [
    ChatResponse(tool_call=ToolCall(name="geocode", arguments={
        "latitude": 37.7935, "longitude": -79.9939,
        "place_name": "Covington, VA"})),
    ChatResponse(text=PLAN_TEXT),
    ChatResponse(text=RECOMMENDATION_TEXT),
]

USER_INPUTS = [
    "Hello",
    "I'm a homeowner managing a forested property",
    "Managing the forest, keeping it healthy, and protecting properties from potential wildfires",
    "Near Covington, VA",
    "yes",
    "Recommendations to be implemented within the next 5 to 10 years",
    "Management of the forest and properties to maximize marketable species, and protect against potential wildfires",
    "accept",
    "looks good",
    "proceed",
    "proceed",
]


def main() -> None:
    OUT.mkdir(parents=True, exist_ok=True)
    config = AppConfig.from_env(data_dir=str(ROOT / "data" / "fixtures"))
    orchestrator = build_orchestrator(config, ScriptedProvider(PROVIDER_SCRIPT))
    session = orchestrator.create_session()
    for text in USER_INPUTS:
        orchestrator.get_response(session, text)
    write_log(session.log, OUT / "golden_session.jsonl")
    (OUT / "golden_transcript.json").write_bytes(
        canonical_serialize(session.transcript))
    print(f"golden session: {len(session.log)} events, "
          f"stage {session.stage.value}")


if __name__ == "__main__":
    main()
