"""State file format and deterministic artifact writing.

State files are JSON objects ``{"n": 3, "amplitudes": [[re, im], ...]}``
with exactly 2**n entries, qubit 0 being the most significant bit of the
basis index. Readers reject vectors whose norm deviates from 1 by more than
1e-6 relative and silently renormalize smaller deviations. A 3-qubit family
parameter record is accepted wherever a state is, e.g.
``{"family": "ghz", "delta": 0.5, "alpha": 1.0, "beta": 1.0, "gamma": 1.0,
"phi": 1.57}`` (angles in radians, probabilities raw).

Artifacts are rendered by ``canonical_json`` so that re-running a config
reproduces the output byte for byte, and written via a temp-file rename so
no command ever leaves a partial file behind.
"""

from __future__ import annotations

import json
import math
import os
from pathlib import Path

from .constants import FILE_NORM_TOL, FORMAT_VERSION, MAX_QUBITS
from .errors import NormalizationError, ParamError, StateFormatError
from .qcore import PureState, pure_state
from .slocc import BiseparableParams, GhzParams, WParams, make_biseparable, make_ghz, make_product, make_w


def state_to_dict(state: PureState) -> dict:
    return {
        "n": state.n_qubits,
        "amplitudes": [[float(a.real), float(a.imag)] for a in state.amplitudes],
    }


_FAMILY_FIELDS = {
    "product": (),
    "biseparable": ("free_qubit", "delta"),
    "w": ("a", "b", "c"),
    "ghz": ("delta", "alpha", "beta", "gamma", "phi"),
}


def family_from_dict(obj: dict) -> PureState:
    """Build a structured 3-qubit state from a family parameter record."""
    family = obj.get("family")
    if family not in _FAMILY_FIELDS:
        raise StateFormatError(
            f"'family' must be one of {sorted(_FAMILY_FIELDS)}, got {family!r}", field="family"
        )
    fields = _FAMILY_FIELDS[family]
    missing = [f for f in fields if f not in obj]
    if missing:
        raise StateFormatError(f"family {family!r} needs fields {missing}", field=missing[0])
    try:
        if family == "product":
            return make_product()
        if family == "biseparable":
            return make_biseparable(BiseparableParams(obj["free_qubit"], float(obj["delta"])))
        if family == "w":
            return make_w(WParams(float(obj["a"]), float(obj["b"]), float(obj["c"])))
        return make_ghz(
            GhzParams(*(float(obj[f]) for f in ("delta", "alpha", "beta", "gamma", "phi")))
        )
    except (TypeError, ValueError) as exc:
        raise StateFormatError(f"bad family parameters: {exc}", field="family") from exc
    except ParamError as exc:
        raise StateFormatError(str(exc), field="family") from exc


def state_from_dict(obj: object) -> PureState:
    """Parse and validate the state format; errors name the offending field.

    Dispatches to ``family_from_dict`` when the object carries a ``family``
    key instead of raw amplitudes.
    """
    if not isinstance(obj, dict):
        raise StateFormatError("state must be a JSON object", field="")
    if "family" in obj:
        return family_from_dict(obj)
    if "n" not in obj:
        raise StateFormatError("missing field 'n'", field="n")
    n = obj["n"]
    if not isinstance(n, int) or isinstance(n, bool) or not 1 <= n <= MAX_QUBITS:
        raise StateFormatError(f"'n' must be an integer in 1..{MAX_QUBITS}, got {n!r}", field="n")
    if "amplitudes" not in obj:
        raise StateFormatError("missing field 'amplitudes'", field="amplitudes")
    raw = obj["amplitudes"]
    if not isinstance(raw, list) or len(raw) != 2 ** n:
        raise StateFormatError(
            f"'amplitudes' must list 2**{n} = {2 ** n} [re, im] pairs", field="amplitudes"
        )
    amps = []
    for k, pair in enumerate(raw):
        if (
            not isinstance(pair, (list, tuple))
            or len(pair) != 2
            or not all(isinstance(v, (int, float)) and not isinstance(v, bool) for v in pair)
        ):
            raise StateFormatError(
                f"amplitude {k} must be a [re, im] pair of numbers", field=f"amplitudes[{k}]"
            )
        amps.append(complex(pair[0], pair[1]))
    norm = math.sqrt(sum(abs(a) ** 2 for a in amps))
    if abs(norm - 1.0) > FILE_NORM_TOL:
        raise NormalizationError(
            f"state norm {norm!r} deviates from 1 by more than {FILE_NORM_TOL}"
        )
    return pure_state(n, amps)


def read_state_file(path: str | Path) -> PureState:
    """Read one state from a file holding either the state format directly
    or a states artifact with exactly one entry."""
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise StateFormatError(f"cannot read {path}: {exc}", field="") from exc
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise StateFormatError(f"invalid JSON in {path}: {exc}", field="") from exc
    if isinstance(obj, dict) and "states" in obj and "n" not in obj:
        states = obj["states"]
        if not isinstance(states, list) or len(states) != 1:
            raise StateFormatError(
                f"artifact holds {len(states) if isinstance(states, list) else '?'} states; "
                "expected exactly one",
                field="states",
            )
        obj = states[0]
    return state_from_dict(obj)


def canonical_json(obj: object) -> str:
    """Deterministic JSON rendering used for every artifact."""
    return json.dumps(obj, indent=2, ensure_ascii=False) + "\n"


def atomic_write(path: str | Path, data: str) -> None:
    """Write via temp file + rename so failures leave no partial output."""
    path = Path(path)
    tmp = path.with_name(f".{path.name}.tmp")
    tmp.write_text(data)
    os.replace(tmp, path)


def search_report(result, config: dict | None = None) -> dict:
    """Search artifact: the run's outcome plus the config that produced it."""
    return {
        "format_version": FORMAT_VERSION,
        "config": config or {},
        "n": result.n,
        "anchor": result.anchor,
        "samples": result.samples,
        "restarts": result.restarts,
        "seed": result.seed,
        "best_total": result.best_total,
        "best_state": state_to_dict(result.best_state),
        "histogram": result.histogram,
        "violation_found": result.violation_found,
    }
