"""Family parameter sweeps comparing the numeric pipeline to the closed forms.

A grid spec is a comma-separated list of ``name=min:max:count`` axes; points
are enumerated in row-major order with the last axis varying fastest. Rows
land in a CSV with 12-significant-digit values and ``\n`` line endings, the
run config embedded as leading ``#`` comment lines, so identical configs
produce identical bytes. Points outside a family's parameter ranges are
skipped and counted, not fatal.
"""

from __future__ import annotations

import itertools
import json
import math
from dataclasses import dataclass

import numpy as np

from .errors import ParamError, StateFormatError
from .constants import FORMAT_VERSION
from .slocc import BiseparableParams, GhzParams, WParams, make_biseparable, make_ghz, make_w
from .tradeoff3 import (
    closed_form_biseparable,
    closed_form_ghz,
    closed_form_w,
    pairwise_chsh_squares,
)

FAMILY_AXES = {
    "biseparable": ("delta",),
    "w": ("a", "b", "c"),
    "ghz": ("delta", "alpha", "beta", "gamma"),
}

CSV_COLUMNS = ("s_ab", "s_ac", "s_bc", "total", "closed_form_total", "discrepancy")


@dataclass(frozen=True)
class GridAxis:
    name: str
    lo: float
    hi: float
    count: int

    def values(self) -> np.ndarray:
        return np.linspace(self.lo, self.hi, self.count)


@dataclass(frozen=True)
class SweepRow:
    params: tuple[float, ...]
    s_ab: float
    s_ac: float
    s_bc: float
    total: float
    closed_form_total: float
    discrepancy: float


def parse_grid(family: str, spec: str) -> list[GridAxis]:
    """Parse ``name=min:max:count`` axes and check them against the family."""
    if family not in FAMILY_AXES:
        raise StateFormatError(
            f"unknown family {family!r}; expected one of {sorted(FAMILY_AXES)}", field="family"
        )
    axes: dict[str, GridAxis] = {}
    for part in spec.split(","):
        part = part.strip()
        if not part:
            continue
        try:
            name, rng = part.split("=")
            lo, hi, count = rng.split(":")
            axis = GridAxis(name.strip(), float(lo), float(hi), int(count))
        except ValueError as exc:
            raise StateFormatError(
                f"bad grid axis {part!r}; expected name=min:max:count", field="grid"
            ) from exc
        if axis.count < 1 or not (axis.lo <= axis.hi) or not math.isfinite(axis.lo + axis.hi):
            raise StateFormatError(f"bad grid axis {part!r}", field="grid")
        axes[axis.name] = axis
    expected = FAMILY_AXES[family]
    missing = [a for a in expected if a not in axes]
    extra = [a for a in axes if a not in expected]
    if missing or extra:
        raise StateFormatError(
            f"family {family!r} needs axes {expected}; missing {missing}, unknown {extra}",
            field="grid",
        )
    return [axes[name] for name in expected]


def _evaluate(family: str, point: tuple[float, ...], phi: float) -> SweepRow:
    if family == "biseparable":
        params = BiseparableParams("A", *point)
        state = make_biseparable(params)
        cf = closed_form_biseparable(params.delta, "A")[3]
    elif family == "w":
        params = WParams(*point)
        state = make_w(params)
        cf = closed_form_w(params.a, params.b, params.c)[3]
    else:
        params = GhzParams(*point, phi)
        state = make_ghz(params)
        cf = closed_form_ghz(params.delta, params.alpha, params.beta, params.gamma)[3]
    s_ab, s_ac, s_bc = pairwise_chsh_squares(state)
    total = s_ab + s_ac + s_bc
    return SweepRow(point, s_ab, s_ac, s_bc, total, cf, abs(total - cf))


@dataclass(frozen=True)
class SweepResult:
    family: str
    axes: tuple[GridAxis, ...]
    phi: float
    rows: list[SweepRow]
    skipped: int


def run_sweep(family: str, axes: list[GridAxis], phi: float = math.pi / 2, threads: int = 1) -> SweepResult:
    """Evaluate every grid point in order; out-of-range points are counted."""
    points = list(itertools.product(*(axis.values() for axis in axes)))

    def one(point) -> SweepRow | None:
        try:
            return _evaluate(family, tuple(float(v) for v in point), phi)
        except ParamError:
            return None

    if threads > 1:
        from concurrent.futures import ThreadPoolExecutor

        with ThreadPoolExecutor(max_workers=threads) as pool:
            evaluated = list(pool.map(one, points))
    else:
        evaluated = [one(p) for p in points]
    rows = [r for r in evaluated if r is not None]
    return SweepResult(family, tuple(axes), phi, rows, len(points) - len(rows))


def _fmt(x: float) -> str:
    return format(x, ".12g")


def render_csv(result: SweepResult, config: dict) -> str:
    """CSV artifact with the config embedded as comment lines."""
    param_names = FAMILY_AXES[result.family]
    if result.family == "ghz":
        param_names = (*param_names, "phi")
    lines = [
        f"# format_version: {FORMAT_VERSION}",
        "# config: " + json.dumps(config, sort_keys=True),
        f"# skipped_points: {result.skipped}",
        "family," + ",".join(param_names) + "," + ",".join(CSV_COLUMNS),
    ]
    for row in result.rows:
        params = row.params if result.family != "ghz" else (*row.params, result.phi)
        values = (row.s_ab, row.s_ac, row.s_bc, row.total, row.closed_form_total, row.discrepancy)
        lines.append(
            result.family + "," + ",".join(map(_fmt, params)) + "," + ",".join(map(_fmt, values))
        )
    return "\n".join(lines) + "\n"
