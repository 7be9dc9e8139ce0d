"""FastAPI service exposing the core package.

Artifact-producing endpoints return pre-rendered text (canonical JSON or
CSV) so that clients can persist the body as-is and identical configs yield
byte-identical artifacts. Domain errors map to HTTP 400 with a structured
detail ``{"code", "field", "message"}``; ``code`` is "normalization" for
norm failures and "parse" otherwise.
"""

from __future__ import annotations

import json

from fastapi import FastAPI, HTTPException
from fastapi.responses import PlainTextResponse

from .. import __version__
from ..constants import FORMAT_VERSION
from ..conjecture4 import conjecture_sum_n, search_max
from ..errors import ChshTradeoffError, NormalizationError
from ..qcore import PureState, haar_random_state
from ..stateio import canonical_json, search_report, state_from_dict, state_to_dict
from ..sweeps import parse_grid, render_csv, run_sweep
from ..tradeoff3 import tradeoff_sum
from ..verify import run_suite
from .schemas import (
    AnalyzeRequest,
    HealthResponse,
    RandomRequest,
    SearchRequest,
    SweepRequest,
    VerifyRequest,
)

_JSON = "application/json"
_CSV = "text/csv"


def _bad_request(exc: ChshTradeoffError) -> HTTPException:
    code = "normalization" if isinstance(exc, NormalizationError) else "parse"
    field = getattr(exc, "field", "")
    return HTTPException(
        status_code=400, detail={"code": code, "field": field, "message": str(exc)}
    )


def _parse_state(payload) -> PureState:
    try:
        return state_from_dict(payload.model_dump(exclude_none=True))
    except ChshTradeoffError as exc:
        raise _bad_request(exc) from exc


def _fmt(x: float) -> str:
    return format(x, ".12g")


def _analyze_dict(state: PureState) -> dict:
    if state.n_qubits == 3:
        r = tradeoff_sum(state)
        return {
            "kind": "tradeoff",
            "report": {
                "s_ab": r.s_ab,
                "s_ac": r.s_ac,
                "s_bc": r.s_bc,
                "total": r.total,
                "closed_form_total": r.closed_form_total,
                "discrepancy": r.discrepancy,
                "class": {
                    "tag": r.class_tag.tag,
                    "ranks": list(r.class_tag.ranks),
                    "tangle": r.class_tag.tangle,
                    "note": r.class_tag.note,
                },
            },
        }
    if state.n_qubits >= 4:
        r = conjecture_sum_n(state, "A")
        return {
            "kind": "conjecture",
            "report": {
                "anchored_qubit": r.anchored_qubit,
                "n_qubits": r.n_qubits,
                "per_pair": r.per_pair,
                "total": r.total,
            },
        }
    raise HTTPException(
        status_code=400,
        detail={
            "code": "parse",
            "field": "n",
            "message": f"analyze needs 3 to 6 qubits, got {state.n_qubits}",
        },
    )


def _analyze_csv(body: dict, config: dict) -> str:
    lines = [
        f"# format_version: {FORMAT_VERSION}",
        "# config: " + json.dumps(config, sort_keys=True),
        "name,value",
        f"kind,{body['kind']}",
    ]
    report = body["report"]
    if body["kind"] == "tradeoff":
        for key in ("s_ab", "s_ac", "s_bc", "total"):
            lines.append(f"{key},{_fmt(report[key])}")
        for key in ("closed_form_total", "discrepancy"):
            val = report[key]
            lines.append(f"{key},{'' if val is None else _fmt(val)}")
        lines.append(f"class,{report['class']['tag']}")
    else:
        lines.append(f"anchor,{report['anchored_qubit']}")
        for pair, val in report["per_pair"].items():
            lines.append(f"pair_{pair},{_fmt(val)}")
        lines.append(f"total,{_fmt(report['total'])}")
    return "\n".join(lines) + "\n"


def create_app() -> FastAPI:
    app = FastAPI(
        title="chsh-tradeoff",
        version=__version__,
        description="Pairwise CHSH trade-offs and correlation-tensor bounds for small pure states.",
    )

    @app.get("/health", response_model=HealthResponse)
    def health() -> HealthResponse:
        return HealthResponse(status="ok", version=__version__)

    @app.post("/analyze")
    def analyze(req: AnalyzeRequest) -> PlainTextResponse:
        state = _parse_state(req.state)
        body = _analyze_dict(state)
        if req.format == "csv":
            return PlainTextResponse(_analyze_csv(body, req.config), media_type=_CSV)
        artifact = {"format_version": FORMAT_VERSION, "config": req.config, **body}
        return PlainTextResponse(canonical_json(artifact), media_type=_JSON)

    @app.post("/sweep")
    def sweep(req: SweepRequest) -> PlainTextResponse:
        try:
            axes = parse_grid(req.family, req.grid)
        except ChshTradeoffError as exc:
            raise _bad_request(exc) from exc
        result = run_sweep(req.family, axes, phi=req.phi, threads=req.threads)
        return PlainTextResponse(render_csv(result, req.config), media_type=_CSV)

    @app.post("/search")
    def search(req: SearchRequest) -> PlainTextResponse:
        warm = tuple(_parse_state(w) for w in req.warm_starts)
        try:
            result = search_max(
                req.n,
                req.samples,
                req.restarts,
                req.seed,
                anchor=req.anchor,
                warm_starts=warm,
                threads=req.threads,
            )
        except ChshTradeoffError as exc:
            raise _bad_request(exc) from exc
        return PlainTextResponse(canonical_json(search_report(result, req.config)), media_type=_JSON)

    @app.post("/random")
    def random_states(req: RandomRequest) -> PlainTextResponse:
        states = [state_to_dict(haar_random_state(req.n, req.seed + i)) for i in range(req.count)]
        artifact = {"format_version": FORMAT_VERSION, "config": req.config, "states": states}
        return PlainTextResponse(canonical_json(artifact), media_type=_JSON)

    @app.post("/verify")
    def verify(req: VerifyRequest) -> PlainTextResponse:
        try:
            reports = run_suite(req.suite, samples=req.samples, restarts=req.restarts, seed=req.seed)
        except ChshTradeoffError as exc:
            raise _bad_request(exc) from exc
        artifact = {
            "format_version": FORMAT_VERSION,
            "config": req.config,
            "suites": [
                {
                    "suite": rep.suite,
                    "passed": rep.passed,
                    "checks": [
                        {
                            "name": c.name,
                            "passed": c.passed,
                            "max_error": c.max_error,
                            "tolerance": c.tolerance,
                            "detail": c.detail,
                        }
                        for c in rep.checks
                    ],
                }
                for rep in reports
            ],
            "passed": all(rep.passed for rep in reports),
        }
        return PlainTextResponse(canonical_json(artifact), media_type=_JSON)

    return app


app = create_app()
