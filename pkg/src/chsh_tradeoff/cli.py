"""Thin command-line client for the service.

Every command builds a request, sends it through the HTTP API (in-process
by default, or to a remote instance given ``--server``), and persists the
response body untouched, so artifacts are byte-identical however the
service is reached. All angles in arguments are radians.

Exit codes: 0 success, 1 verification failure, 2 malformed input,
3 normalization failure, 10 conjecture violation found by a search.
"""

from __future__ import annotations

import asyncio
import json
from pathlib import Path

import click
import httpx

from .constants import FORMAT_VERSION
from .stateio import atomic_write

EXIT_OK = 0
EXIT_VERIFY_FAILED = 1
EXIT_PARSE = 2
EXIT_INVARIANT = 3
EXIT_VIOLATION = 10

_PI_2 = 1.5707963267948966


def _post(server: str | None, path: str, body: dict) -> httpx.Response:
    """POST to a remote service, or to the in-process app when no URL is given."""

    async def go() -> httpx.Response:
        if server:
            kwargs = {"base_url": server}
        else:
            from .service.app import app

            kwargs = {"transport": httpx.ASGITransport(app=app), "base_url": "http://service"}
        async with httpx.AsyncClient(timeout=None, **kwargs) as client:
            return await client.post(path, json=body)

    try:
        return asyncio.run(go())
    except httpx.HTTPError as exc:
        _fail(f"cannot reach service: {exc}", EXIT_PARSE)


def _fail(message: str, code: int) -> None:
    click.echo(f"error: {message}", err=True)
    raise SystemExit(code)


def _check_response(resp: httpx.Response) -> None:
    if resp.status_code == 200:
        return
    if resp.status_code == 400:
        detail = resp.json().get("detail", {})
        code = EXIT_INVARIANT if detail.get("code") == "normalization" else EXIT_PARSE
        field = detail.get("field") or "input"
        _fail(f"{detail.get('message', 'bad request')} (field: {field})", code)
    if resp.status_code == 422:
        errors = resp.json().get("detail", [])
        spots = "; ".join(
            ".".join(str(p) for p in e.get("loc", [])[1:]) + ": " + e.get("msg", "")
            for e in errors
        )
        _fail(f"invalid request ({spots})", EXIT_PARSE)
    _fail(f"service returned HTTP {resp.status_code}: {resp.text[:200]}", EXIT_PARSE)


def _load_state_payload(path: str) -> dict:
    """Read a state file (or a one-state artifact) into the wire format."""
    try:
        obj = json.loads(Path(path).read_text())
    except OSError as exc:
        _fail(f"cannot read {path}: {exc}", EXIT_PARSE)
    except json.JSONDecodeError as exc:
        _fail(f"invalid JSON in {path}: {exc}", EXIT_PARSE)
    if isinstance(obj, dict) and "states" in obj and "n" not in obj:
        states = obj["states"]
        if not isinstance(states, list) or len(states) != 1:
            _fail(f"{path} holds multiple states; expected exactly one (field: states)", EXIT_PARSE)
        obj = states[0]
    if not isinstance(obj, dict):
        _fail(f"{path} must hold a JSON object (field: <root>)", EXIT_PARSE)
    return obj


def _emit(text: str, out: str | None) -> None:
    if out:
        atomic_write(out, text)
    else:
        click.echo(text, nl=False)


@click.group()
@click.option("--server", default=None, metavar="URL",
              help="Base URL of a running service; default runs the service in-process.")
@click.pass_context
def main(ctx: click.Context, server: str | None) -> None:
    """Pairwise CHSH trade-offs and correlation-tensor bounds for small pure states.

    All angles are radians and probabilities are raw fractions, both on the
    command line and in JSON files. State files hold {"n": ..., "amplitudes":
    [[re, im], ...]} with qubit 0 as the most significant bit, or a 3-qubit
    family record such as {"family": "w", "a": 0.2, "b": 0.3, "c": 0.4}.
    """
    ctx.obj = server


@main.command()
@click.option("--state", "state_path", required=True, type=click.Path(), help="State file (JSON).")
@click.option("--format", "fmt", type=click.Choice(["json", "csv"]), default="json",
              show_default=True, help="Artifact format.")
@click.option("--out", default=None, type=click.Path(), help="Output file (default: stdout).")
@click.pass_obj
def analyze(server: str | None, state_path: str, fmt: str, out: str | None) -> None:
    """Trade-off report for a 3-qubit state, anchored tensor sum for 4-6 qubits."""
    payload = _load_state_payload(state_path)
    config = {"command": "analyze", "state": state_path, "format": fmt,
              "format_version": FORMAT_VERSION}
    resp = _post(server, "/analyze", {"state": payload, "format": fmt, "config": config})
    _check_response(resp)
    _emit(resp.text, out)


@main.command()
@click.option("--family", required=True, type=click.Choice(["biseparable", "w", "ghz"]))
@click.option("--grid", required=True, metavar="SPEC",
              help="Comma-separated axes, each name=min:max:count (angles in radians).")
@click.option("--out", required=True, type=click.Path(), help="CSV output file.")
@click.option("--phi", default=_PI_2, show_default="pi/2",
              help="Relative phase used when building GHZ-family states.")
@click.option("--threads", default=1, show_default=True, help="Worker cap; never changes results.")
@click.pass_obj
def sweep(server: str | None, family: str, grid: str, out: str, phi: float, threads: int) -> None:
    """Sweep a family grid and compare numeric totals against the closed form."""
    config = {"command": "sweep", "family": family, "grid": grid, "phi": phi,
              "out": out, "format_version": FORMAT_VERSION}
    resp = _post(server, "/sweep", {"family": family, "grid": grid, "phi": phi,
                                    "threads": threads, "config": config})
    _check_response(resp)
    _emit(resp.text, out)
    skipped = next((ln for ln in resp.text.splitlines() if ln.startswith("# skipped_points:")), None)
    if skipped and not skipped.endswith(" 0"):
        click.echo(f"warning: {skipped[2:]} grid points outside the family ranges", err=True)


@main.command()
@click.option("--qubits", "n", required=True, type=click.IntRange(3, 6))
@click.option("--samples", required=True, type=click.IntRange(min=1))
@click.option("--restarts", default=10, show_default=True, type=click.IntRange(min=0))
@click.option("--seed", default=0, show_default=True, type=int)
@click.option("--out", required=True, type=click.Path(), help="JSON report file.")
@click.option("--anchor", default="A", show_default=True, help="Anchored qubit label.")
@click.option("--warm-start", "warm", multiple=True, type=click.Path(),
              help="State file(s) added as ascent starting points.")
@click.option("--threads", default=1, show_default=True, help="Worker cap; never changes results.")
@click.pass_obj
def search(server: str | None, n: int, samples: int, restarts: int, seed: int,
           out: str, anchor: str, warm: tuple[str, ...], threads: int) -> None:
    """Search for states violating the anchored correlation-tensor bound."""
    config = {"command": "search", "qubits": n, "samples": samples, "restarts": restarts,
              "seed": seed, "anchor": anchor, "out": out, "warm_start": list(warm),
              "format_version": FORMAT_VERSION}
    body = {"n": n, "samples": samples, "restarts": restarts, "seed": seed, "anchor": anchor,
            "threads": threads, "warm_starts": [_load_state_payload(p) for p in warm],
            "config": config}
    resp = _post(server, "/search", body)
    _check_response(resp)
    _emit(resp.text, out)
    report = json.loads(resp.text)
    if report["violation_found"]:
        click.echo(
            "VIOLATION FOUND: anchored total "
            f"{report['best_total']!r} exceeds the conjectured bound; "
            f"state saved in {out}",
            err=True,
        )
        raise SystemExit(EXIT_VIOLATION)
    click.echo(f"best total {report['best_total']:.12g} (bound respected)", err=True)


@main.command()
@click.option("--suite", default="all", show_default=True,
              type=click.Choice(["theorem1", "theorem2", "theorem3", "theorem4",
                                 "identity", "horodecki", "conjecture", "all"]))
@click.option("--samples", default=None, type=click.IntRange(min=1),
              help="Override sample counts (smoke runs).")
@click.option("--restarts", default=None, type=click.IntRange(min=0))
@click.option("--seed", default=None, type=int)
@click.pass_obj
def verify(server: str | None, suite: str, samples: int | None, restarts: int | None,
           seed: int | None) -> None:
    """Run a named verification suite and print one line per check."""
    config = {"command": "verify", "suite": suite, "samples": samples,
              "restarts": restarts, "seed": seed, "format_version": FORMAT_VERSION}
    body = {"suite": suite, "samples": samples, "restarts": restarts, "seed": seed,
            "config": config}
    resp = _post(server, "/verify", body)
    _check_response(resp)
    artifact = json.loads(resp.text)
    for rep in artifact["suites"]:
        for c in rep["checks"]:
            status = "PASS" if c["passed"] else "FAIL"
            line = f"{status} {rep['suite']}: {c['name']} (max error {c['max_error']:.3e}, tol {c['tolerance']:.1e})"
            if c["detail"]:
                line += f" [{c['detail']}]"
            click.echo(line)
    if not artifact["passed"]:
        raise SystemExit(EXIT_VERIFY_FAILED)


@main.command()
@click.option("--qubits", "n", required=True, type=click.IntRange(1, 6))
@click.option("--count", required=True, type=click.IntRange(min=1))
@click.option("--seed", default=0, show_default=True, type=int)
@click.option("--out", required=True, type=click.Path(), help="States artifact file.")
@click.pass_obj
def random(server: str | None, n: int, count: int, seed: int, out: str) -> None:
    """Write Haar-random states (sample i uses seed+i)."""
    config = {"command": "random", "qubits": n, "count": count, "seed": seed, "out": out,
              "format_version": FORMAT_VERSION}
    resp = _post(server, "/random", {"n": n, "count": count, "seed": seed, "config": config})
    _check_response(resp)
    _emit(resp.text, out)


@main.command()
@click.option("--host", default="127.0.0.1", show_default=True)
@click.option("--port", default=8000, show_default=True, type=int)
def serve(host: str, port: int) -> None:
    """Run the HTTP service."""
    import uvicorn

    from .service.app import app

    uvicorn.run(app, host=host, port=port)


if __name__ == "__main__":
    main()
