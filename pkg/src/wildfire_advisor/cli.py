"""Operator command line: ingest, build-index, replay, eval, serve, report.

Exit codes: 0 success; 1 runtime failure; 2 usage error or guard violation;
3 script exhausted ("conversation ended unexpectedly").
"""

from __future__ import annotations

import csv
import json
import sys
from pathlib import Path

import click

from wildfire_advisor.config import AppConfig, build_orchestrator, load_engine
from wildfire_advisor.model import GeoPoint, Period, Season
from wildfire_advisor.model.serialize import canonical_dumps, canonical_serialize
from wildfire_advisor.geo import datasets as geo_datasets
from wildfire_advisor.geo.distance import DEFAULT_RADIUS_KM
from wildfire_advisor.geo.reports import render_data_report
from wildfire_advisor.model import Dataset
from wildfire_advisor.literature.corpus import load_corpus
from wildfire_advisor.literature.embedder import HashingEmbedder
from wildfire_advisor.literature.index import index_build
from wildfire_advisor.llm.gateway import ScriptExhaustedError
from wildfire_advisor.llm.scripted import ScriptedProvider
from wildfire_advisor.orchestrator.replay import (
    provider_from_records,
    run_script,
    write_log,
)
from wildfire_advisor.orchestrator.session import (
    GuardViolationError,
    SessionStore,
    read_log_file,
    replay_state,
)

EXIT_OK = 0
EXIT_FAILURE = 1
EXIT_GUARD = 2
EXIT_EXHAUSTED = 3

_DATASET_LOADERS = {
    "fwi": geo_datasets.load_fwi_grid,
    "incidents": geo_datasets.load_incidents,
    "paleofire": geo_datasets.load_paleofire,
    "census": geo_datasets.load_census,
}


@click.group()
def main() -> None:
    """Wildfire hazard consultation service tooling."""


@main.command()
@click.argument("dataset", type=click.Choice(sorted(_DATASET_LOADERS)))
@click.argument("path", type=click.Path(exists=True, dir_okay=False))
@click.option("--store-dir", type=click.Path(file_okay=False), default="data/store",
              show_default=True, help="Directory holding validated canonical rows.")
def ingest(dataset: str, path: str, store_dir: str) -> None:
    """Validate a fixture file and persist accepted rows to the store."""
    result = _DATASET_LOADERS[dataset](path)
    store = Path(store_dir)
    store.mkdir(parents=True, exist_ok=True)
    target = store / f"{dataset}.jsonl"
    existing: set[str] = set()
    if target.exists():
        existing = {line.strip() for line in target.read_text("utf-8").splitlines()
                    if line.strip()}
    accepted_lines = {canonical_serialize(item).decode("utf-8")
                      for item in result.items}
    merged = sorted(existing | accepted_lines)
    target.write_text("\n".join(merged) + ("\n" if merged else ""), "utf-8")
    click.echo(f"rows read: {result.rows_read}")
    click.echo(f"rows accepted: {len(result.items)}")
    click.echo(f"rows errored: {len(result.errors)}")
    for error in result.errors:
        click.echo(f"  line {error.line} [{error.field}]: {error.reason}")
    click.echo(f"store: {target} ({len(merged)} rows)")


@main.command("build-index")
@click.argument("corpus", type=click.Path(exists=True, dir_okay=False))
@click.option("--embeddings", type=click.Path(exists=True, dir_okay=False),
              default=None, help="Optional precomputed embeddings sidecar (.npz).")
@click.option("--out", type=click.Path(dir_okay=False), default=None,
              help="Where to write the embeddings sidecar for the built index.")
@click.option("--dimension", type=int, default=384, show_default=True)
@click.option("--seed", type=int, default=0, show_default=True)
def build_index(corpus: str, embeddings: str | None, out: str | None,
                dimension: int, seed: int) -> None:
    """Embed a corpus file and report index statistics."""
    import numpy as np

    embedder = HashingEmbedder(dimension=dimension, seed=seed)
    result = load_corpus(corpus, embedder, embeddings_sidecar=embeddings)
    for error in result.errors:
        click.echo(f"  line {error.line} [{error.field}]: {error.reason}")
    index = index_build(result.items)
    if out:
        np.savez(out, ids=np.array([d.id for d in index.documents]),
                 embeddings=index.matrix)
        click.echo(f"sidecar: {out}")
    click.echo(f"documents: {len(index)}")
    click.echo(f"dimension: {index.dimension}")
    if result.errors:
        sys.exit(EXIT_FAILURE)


@main.command()
@click.argument("script", type=click.Path(exists=True, dir_okay=False))
@click.option("--data-dir", type=click.Path(file_okay=False), default=None)
@click.option("--prompts-dir", type=click.Path(file_okay=False), default=None)
@click.option("--transcript-out", type=click.Path(dir_okay=False), default=None)
@click.option("--log-out", type=click.Path(dir_okay=False), default=None)
@click.option("--expect-log", type=click.Path(exists=True, dir_okay=False),
              default=None, help="Fail unless the produced log matches this file.")
@click.option("--seed", type=int, default=0, show_default=True)
def replay(script: str, data_dir: str | None, prompts_dir: str | None,
           transcript_out: str | None, log_out: str | None,
           expect_log: str | None, seed: int) -> None:
    """Re-run a session script and write the resulting transcript."""
    config = AppConfig.from_env(data_dir=data_dir, prompts_dir=prompts_dir)
    config.embedder_seed = seed
    _, records, report = read_log_file(script)
    if report.truncated:
        click.echo(f"script parse stopped: {report.reason}", err=True)
        sys.exit(EXIT_FAILURE)
    provider = provider_from_records(records)
    orchestrator = build_orchestrator(config, provider)
    try:
        run = run_script(orchestrator, records)
    except GuardViolationError as exc:
        click.echo(f"guard violation: {exc}", err=True)
        sys.exit(EXIT_GUARD)
    except ScriptExhaustedError:
        click.echo("conversation ended unexpectedly", err=True)
        sys.exit(EXIT_EXHAUSTED)
    transcript_bytes = canonical_serialize(run.session.transcript)
    if transcript_out:
        Path(transcript_out).write_bytes(transcript_bytes)
    if log_out:
        write_log(run.records, log_out)
    if expect_log:
        _, expected_records, _ = read_log_file(expect_log)
        expected = [r.to_line() for r in expected_records]
        produced = [r.to_line() for r in run.records]
        if produced != expected:
            click.echo("produced log differs from expected log", err=True)
            sys.exit(EXIT_FAILURE)
    click.echo(f"stage: {run.session.stage.value}")
    click.echo(f"transcript events: {len(run.session.transcript.events)}")


@main.command("eval")
@click.argument("kind", type=click.Choice(["fidelity", "score", "judge", "agreement"]))
@click.argument("bundles", type=click.Path(exists=True))
@click.option("--out", type=click.Path(dir_okay=False), default=None,
              help="Write a delimited report table here.")
def eval_command(kind: str, bundles: str, out: str | None) -> None:
    """Run one evaluation metric over a bundle file or directory."""
    from wildfire_advisor import evalharness as ev
    from wildfire_advisor.prompts_loader import default_prompts

    paths = _bundle_paths(bundles)
    rows: list[dict] = []
    for path in paths:
        bundle = json.loads(path.read_text("utf-8"))
        if kind == "fidelity":
            rows.append({"bundle": path.name, **_fidelity_row(ev, bundle)})
        elif kind == "score":
            answers = [(a["question_id"], ev.Label(a["label"]))
                       for a in bundle.get("answers", [])]
            score = ev.score_questionnaire(answers)
            rows.append({"bundle": path.name, "score": score.total,
                         "count": score.count,
                         "percent": round(score.percent, 2)})
        elif kind == "judge":
            replies = bundle.get("scripted_judge_replies")
            if not replies:
                click.echo(f"{path.name}: no scripted_judge_replies; skipping",
                           err=True)
                continue
            provider = ScriptedProvider(
                [_text_response(r) for r in replies])
            criterion = ev.Criterion(bundle.get("criterion", "relevance"))
            outcome = ev.judge_response(bundle["bundle"],
                                        ev.JUDGE_QUESTIONS[criterion],
                                        provider, default_prompts())
            for (qid, label), rationale in zip(outcome.labels, outcome.rationales):
                rows.append({"bundle": path.name, "question_id": qid,
                             "label": label.value, "rationale": rationale})
        else:  # agreement
            records = [
                ev.EvalRecord(criterion=ev.Criterion(r["criterion"]),
                              question_id=r.get("question_id", ""),
                              human=ev.Label(r["human"]),
                              judge=ev.Label(r["judge"]))
                for r in bundle.get("records", [])
            ]
            for criterion, stats in ev.agreement(records).items():
                rows.append({
                    "bundle": path.name, "criterion": criterion.value,
                    "agree": stats.agree, "total": stats.total,
                    "percent": None if stats.percent is None
                    else round(stats.percent, 2),
                })
    for row in rows:
        click.echo(canonical_dumps(row))
    if out and rows:
        with open(out, "w", newline="", encoding="utf-8") as fh:
            writer = csv.DictWriter(fh, fieldnames=sorted({k for r in rows for k in r}))
            writer.writeheader()
            writer.writerows(rows)
        click.echo(f"report table: {out}")


def _fidelity_row(ev, bundle: dict) -> dict:
    if "discussed_titles" in bundle:
        result = ev.citation_precision(bundle["discussed_titles"],
                                       bundle.get("retrieved_titles", []))
    else:
        tokens = ev.extract_statistics(bundle.get("response_text", ""))
        sources = ev.collect_numeric_values(bundle.get("source_payloads", []))
        result = ev.fidelity_precision(tokens, sources,
                                       include_years=bundle.get("include_years", False))
    return {"matched": result.matched, "total": result.total,
            "percent": None if result.percent is None else round(result.percent, 2)}


def _text_response(text: str):
    from wildfire_advisor.llm.gateway import ChatResponse
    return ChatResponse(text=text)


def _bundle_paths(target: str) -> list[Path]:
    path = Path(target)
    if path.is_dir():
        return sorted(path.glob("*.json"))
    return [path]


@main.command()
@click.option("--host", default="127.0.0.1", show_default=True)
@click.option("--port", type=int, default=8800, show_default=True)
@click.option("--data-dir", type=click.Path(file_okay=False), default=None)
@click.option("--prompts-dir", type=click.Path(file_okay=False), default=None)
@click.option("--sessions-dir", type=click.Path(file_okay=False), default=None)
@click.option("--console-dir", type=click.Path(file_okay=False), default=None)
@click.option("--provider-url", default=None,
              help="Chat-completions endpoint; omit to run with a closed script.")
@click.option("--model", default="gpt-4o-mini", show_default=True)
def serve(host: str, port: int, data_dir: str | None, prompts_dir: str | None,
          sessions_dir: str | None, console_dir: str | None,
          provider_url: str | None, model: str) -> None:
    """Boot the HTTP service."""
    import uvicorn

    from wildfire_advisor.llm.http import HttpProvider
    from wildfire_advisor.service.api import create_app

    config = AppConfig.from_env(data_dir=data_dir, prompts_dir=prompts_dir,
                                sessions_dir=sessions_dir)
    if provider_url:
        provider = HttpProvider(base_url=provider_url, model=model)
    else:
        provider = ScriptedProvider([])
        click.echo("warning: no provider URL; language-model calls will fail",
                   err=True)
    orchestrator = build_orchestrator(config, provider)
    app = create_app(orchestrator, console_dir=console_dir)
    uvicorn.run(app, host=host, port=port)


@main.command()
@click.argument("dataset", type=click.Choice(["fwi", "incidents", "paleofire",
                                              "census"]))
@click.option("--lat", type=float, required=True)
@click.option("--lon", type=float, required=True)
@click.option("--radius-km", type=float, default=DEFAULT_RADIUS_KM, show_default=True)
@click.option("--data-dir", type=click.Path(file_okay=False), default=None)
@click.option("--out-dir", type=click.Path(file_okay=False), default="reports",
              show_default=True)
@click.option("--season", type=click.Choice([s.value for s in Season]),
              default="spring", show_default=True)
@click.option("--period", type=click.Choice([p.value for p in Period]),
              default="end_century", show_default=True)
def report(dataset: str, lat: float, lon: float, radius_km: float,
           data_dir: str | None, out_dir: str, season: str, period: str) -> None:
    """Write the delimited report table plus rendered figures for one query."""
    from wildfire_advisor import figures

    config = AppConfig.from_env(data_dir=data_dir)
    engine = load_engine(config.data_dir)
    center = GeoPoint(latitude=lat, longitude=lon)
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    written: list[Path] = []
    if dataset == "fwi":
        result = engine.query_fwi(center, radius_km)
        kind = Dataset.FWI
        if not result.coverage_gap:
            written.append(figures.render_fwi_figure(
                result, Season(season), Period(period), out / "fwi_map.png"))
    elif dataset == "incidents":
        result = engine.query_incidents(center, radius_km)
        kind = Dataset.RECENT_INCIDENTS
        if result.count:
            written.append(figures.render_trend_figure(result, out / "incident_trends.png"))
            written.append(figures.render_incident_map(result, out / "incident_map.png"))
    elif dataset == "paleofire":
        result = engine.query_paleofire(center)
        kind = Dataset.PALEOFIRE_HISTORY
    else:
        result = engine.query_census(center, radius_km)
        kind = Dataset.CENSUS
        if result.summary.block_count:
            written.append(figures.render_census_figure(result, out / "census_map.png"))
    data_report = render_data_report(kind, result)
    table_path = out / f"{dataset}_report.csv"
    with open(table_path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(["label", "value"])
        writer.writerows(data_report.statistics)
    written.append(table_path)
    payload_path = out / f"{dataset}_payload.json"
    payload_path.write_bytes(canonical_serialize(result))
    written.append(payload_path)
    click.echo(data_report.text)
    for path in written:
        click.echo(f"wrote: {path}")


@main.group()
def sessions() -> None:
    """Inspect, export, and resume persisted sessions."""


@sessions.command("list")
@click.option("--sessions-dir", type=click.Path(file_okay=False), required=True)
def sessions_list(sessions_dir: str) -> None:
    store = SessionStore(sessions_dir)
    for session_id in store.list_ids():
        _, records, _ = store.read(session_id)
        state, _ = replay_state(records, session_id)
        click.echo(f"{session_id}  stage={state.stage.value}  events={len(records)}")


@sessions.command("show")
@click.argument("session_id")
@click.option("--sessions-dir", type=click.Path(file_okay=False), required=True)
def sessions_show(session_id: str, sessions_dir: str) -> None:
    store = SessionStore(sessions_dir)
    _, records, report = store.read(session_id)
    state, replay_report = replay_state(records, session_id)
    click.echo(f"stage: {state.stage.value}")
    if report.truncated or replay_report.truncated:
        click.echo(f"truncated: {report.reason or replay_report.reason}")
    for event in state.transcript.events:
        click.echo(f"[{event.ordinal:03d}] {event.role.value}: {event.content}")


@sessions.command("export")
@click.argument("session_id")
@click.option("--sessions-dir", type=click.Path(file_okay=False), required=True)
@click.option("--out", type=click.Path(dir_okay=False), required=True)
def sessions_export(session_id: str, sessions_dir: str, out: str) -> None:
    store = SessionStore(sessions_dir)
    _, records, _ = store.read(session_id)
    write_log(records, out)
    click.echo(f"exported {len(records)} events to {out}")


@sessions.command("resume")
@click.argument("session_id")
@click.option("--sessions-dir", type=click.Path(file_okay=False), required=True)
@click.option("--data-dir", type=click.Path(file_okay=False), default=None)
def sessions_resume(session_id: str, sessions_dir: str, data_dir: str | None) -> None:
    config = AppConfig.from_env(data_dir=data_dir, sessions_dir=sessions_dir)
    orchestrator = build_orchestrator(config, ScriptedProvider([]))
    session = orchestrator.resume_conversation(orchestrator.store, session_id)
    click.echo(f"new session: {session.id}")
    click.echo(f"stage: {session.stage.value}")
    if session.replay_report and session.replay_report.truncated:
        click.echo(f"divergence: {session.replay_report.reason}")


if __name__ == "__main__":
    main()
