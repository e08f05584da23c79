"""FastAPI application exposing the session, data, and evaluation surfaces.

Responses carrying retrieval payloads are serialized with the canonical
serializer so they are byte-identical to what the analyst consumes; bodies
carry a version field.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from enum import Enum
from pathlib import Path
from typing import Any, Optional

from fastapi import FastAPI, Request, Response
from fastapi.responses import JSONResponse

from wildfire_advisor.model import GeoPoint
from wildfire_advisor.model.serialize import canonical_dumps, canonical_serialize
from wildfire_advisor.geo.distance import DEFAULT_RADIUS_KM
from wildfire_advisor.evalharness.judge import JUDGE_QUESTIONS, judge_response
from wildfire_advisor.evalharness.scoring import (
    Criterion,
    EvalRecord,
    Label,
    aggregate_case_scores,
    agreement,
    score_questionnaire,
)
from wildfire_advisor.evalharness.stats import (
    citation_precision,
    collect_numeric_values,
    extract_statistics,
    fidelity_precision,
)
from wildfire_advisor.llm.gateway import ScriptExhaustedError, TransportError
from wildfire_advisor.orchestrator.session import (
    ClosedSessionError,
    Orchestrator,
    UnknownSessionError,
)

logger = logging.getLogger(__name__)

API_VERSION = 1


class ApiCode(Enum):
    BAD_REQUEST = "bad_request"
    NOT_FOUND = "not_found"
    CONFLICT = "conflict"
    UPSTREAM = "upstream"
    INTERNAL = "internal"


_HTTP_STATUS = {
    ApiCode.BAD_REQUEST: 400,
    ApiCode.NOT_FOUND: 404,
    ApiCode.CONFLICT: 409,
    ApiCode.UPSTREAM: 502,
    ApiCode.INTERNAL: 500,
}


@dataclass(frozen=True)
class ApiError(Exception):
    code: ApiCode
    message: str
    retryable: bool = False

    def response(self) -> JSONResponse:
        body = {
            "version": API_VERSION,
            "error": {"code": self.code.value, "message": self.message,
                      "retryable": self.retryable},
        }
        return JSONResponse(status_code=_HTTP_STATUS[self.code], content=body)


def _canonical_response(payload: Any) -> Response:
    return Response(content=canonical_dumps(payload).encode("utf-8"),
                    media_type="application/json")


def create_app(orchestrator: Orchestrator,
               console_dir: Optional[str | Path] = None) -> FastAPI:
    app = FastAPI(title="wildfire-advisor", docs_url=None, redoc_url=None)

    @app.exception_handler(ApiError)
    async def handle_api_error(_request: Request, exc: ApiError) -> JSONResponse:
        return exc.response()

    @app.middleware("http")
    async def log_requests(request: Request, call_next):
        response = await call_next(request)
        logger.info("%s %s -> %s", request.method, request.url.path,
                     response.status_code)
        return response

    def _session_or_404(session_id: str):
        try:
            return orchestrator.get_session(session_id)
        except UnknownSessionError:
            raise ApiError(ApiCode.NOT_FOUND, f"unknown session {session_id}") from None

    # -- session lifecycle --------------------------------------------------

    @app.post("/sessions")
    async def create_session() -> Response:
        session = orchestrator.create_session()
        return _canonical_response({
            "version": API_VERSION,
            "session_id": session.id,
            "stage": session.stage.value,
        })

    @app.post("/sessions/{session_id}/messages")
    async def post_message(session_id: str, request: Request) -> Response:
        session = _session_or_404(session_id)
        body = await _json_body(request)
        text = body.get("text")
        if not isinstance(text, str) or not text.strip():
            raise ApiError(ApiCode.BAD_REQUEST, "body requires non-empty 'text'")
        try:
            events = orchestrator.get_response(session, text)
        except ClosedSessionError:
            raise ApiError(ApiCode.CONFLICT, "session is closed") from None
        except (ScriptExhaustedError, TransportError) as exc:
            raise ApiError(ApiCode.UPSTREAM, str(exc), retryable=True) from None
        return _canonical_response({
            "version": API_VERSION,
            "session_id": session.id,
            "stage": session.stage.value,
            "events": [e.to_payload() for e in events],
        })

    @app.get("/sessions/{session_id}/transcript")
    async def get_transcript(session_id: str) -> Response:
        session = _session_or_404(session_id)
        return _canonical_response({
            "version": API_VERSION,
            "session_id": session.id,
            "stage": session.stage.value,
            "resumed_from": session.resumed_from,
            "transcript": session.transcript.to_payload(),
        })

    @app.post("/sessions/{session_id}/resume")
    async def resume_session(session_id: str) -> Response:
        if orchestrator.store is None:
            raise ApiError(ApiCode.INTERNAL, "no session store configured")
        if not orchestrator.store.exists(session_id):
            raise ApiError(ApiCode.NOT_FOUND, f"unknown session {session_id}")
        session = orchestrator.resume_conversation(orchestrator.store, session_id)
        report = session.replay_report
        return _canonical_response({
            "version": API_VERSION,
            "session_id": session.id,
            "stage": session.stage.value,
            "resumed_from": session.resumed_from,
            "truncated": bool(report and report.truncated),
        })

    # -- data endpoints -------------------------------------------------------

    @app.get("/data/{dataset}")
    async def get_data(dataset: str, lat: float, lon: float,
                       radius_km: float = DEFAULT_RADIUS_KM,
                       k: int = 3) -> Response:
        try:
            center = GeoPoint(latitude=lat, longitude=lon)
        except ValueError as exc:
            raise ApiError(ApiCode.BAD_REQUEST, str(exc)) from None
        engine = orchestrator.engine
        if dataset == "fwi":
            result = engine.query_fwi(center, radius_km)
        elif dataset == "incidents":
            result = engine.query_incidents(center, radius_km)
        elif dataset == "paleofire":
            result = engine.query_paleofire(center, k)
        elif dataset == "census":
            result = engine.query_census(center, radius_km)
        else:
            raise ApiError(ApiCode.NOT_FOUND, f"unknown dataset {dataset!r}")
        return Response(content=canonical_serialize(result),
                        media_type="application/json")

    # -- evaluation endpoints ---------------------------------------------------

    @app.post("/eval/fidelity")
    async def eval_fidelity(request: Request) -> Response:
        body = await _json_body(request)
        if "discussed_titles" in body:
            result = citation_precision(body.get("discussed_titles", []),
                                        body.get("retrieved_titles", []))
        elif "response_text" in body:
            tokens = extract_statistics(body["response_text"])
            sources = collect_numeric_values(body.get("source_payloads", []))
            result = fidelity_precision(tokens, sources,
                                        include_years=body.get("include_years", False))
        else:
            raise ApiError(ApiCode.BAD_REQUEST,
                           "bundle needs 'response_text' or 'discussed_titles'")
        return _canonical_response({
            "version": API_VERSION,
            "matched": result.matched,
            "total": result.total,
            "precision": result.precision,
            "percent": result.percent,
            "not_applicable": result.not_applicable,
        })

    @app.post("/eval/score")
    async def eval_score(request: Request) -> Response:
        body = await _json_body(request)
        try:
            answers = [(row["question_id"], Label(row["label"]))
                       for row in body.get("answers", [])]
            score = score_questionnaire(answers)
        except (KeyError, ValueError, TypeError) as exc:
            raise ApiError(ApiCode.BAD_REQUEST, f"malformed score bundle: {exc}") from None
        payload: dict[str, Any] = {
            "version": API_VERSION,
            "total": score.total,
            "count": score.count,
            "percent": score.percent,
            "per_question": [{"question_id": q, "score": s}
                             for q, s in score.per_question],
        }
        if body.get("cases"):
            try:
                aggregates = aggregate_case_scores(
                    [(case["score"], case["count"]) for case in body["cases"]])
            except (KeyError, ValueError, TypeError) as exc:
                raise ApiError(ApiCode.BAD_REQUEST,
                               f"malformed cases: {exc}") from None
            payload["average_percent"] = aggregates.average_percent
            payload["overall_percent"] = aggregates.overall_percent
        return _canonical_response(payload)

    @app.post("/eval/judge")
    async def eval_judge(request: Request) -> Response:
        body = await _json_body(request)
        bundle = body.get("bundle")
        if not isinstance(bundle, dict) or "response" not in bundle:
            raise ApiError(ApiCode.BAD_REQUEST, "bundle with 'response' required")
        criteria = body.get("criteria") or [c.value for c in Criterion]
        results = {}
        for name in criteria:
            try:
                criterion = Criterion(name)
            except ValueError:
                raise ApiError(ApiCode.BAD_REQUEST,
                               f"unknown criterion {name!r}") from None
            outcome = judge_response(bundle, JUDGE_QUESTIONS[criterion],
                                     orchestrator.provider, orchestrator.prompts)
            results[criterion.value] = {
                "labels": [{"question_id": qid, "label": label.value}
                           for qid, label in outcome.labels],
                "rationales": list(outcome.rationales),
                "parse_failures": list(outcome.parse_failures),
                "error": outcome.error,
            }
        return _canonical_response({"version": API_VERSION, "results": results})

    @app.post("/eval/agreement")
    async def eval_agreement(request: Request) -> Response:
        body = await _json_body(request)
        try:
            records = [
                EvalRecord(
                    criterion=Criterion(row["criterion"]),
                    question_id=row.get("question_id", ""),
                    human=Label(row["human"]),
                    judge=Label(row["judge"]),
                )
                for row in body.get("records", [])
            ]
        except (KeyError, ValueError, TypeError) as exc:
            raise ApiError(ApiCode.BAD_REQUEST,
                           f"malformed agreement bundle: {exc}") from None
        stats = agreement(records)
        return _canonical_response({
            "version": API_VERSION,
            "criteria": {
                criterion.value: {
                    "agree": s.agree,
                    "total": s.total,
                    "percent": s.percent,
                    "excluded_not_applicable": s.excluded_not_applicable,
                    "disagreements": s.disagreements,
                    "yes_vs_could_be_better": s.yes_vs_could_be_better,
                    "yes_vs_could_be_better_share": s.yes_vs_could_be_better_share,
                }
                for criterion, s in stats.items()
            },
        })

    if console_dir is not None and Path(console_dir).is_dir():
        from fastapi.staticfiles import StaticFiles
        app.mount("/console", StaticFiles(directory=str(console_dir), html=True),
                  name="console")

    return app


async def _json_body(request: Request) -> dict[str, Any]:
    try:
        body = await request.json()
    except Exception:
        raise ApiError(ApiCode.BAD_REQUEST, "body must be JSON") from None
    if not isinstance(body, dict):
        raise ApiError(ApiCode.BAD_REQUEST, "body must be a JSON object")
    return body
