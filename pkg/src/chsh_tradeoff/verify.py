"""Named verification suites behind ``verify --suite <name>``.

Each suite compares the fully numeric pipeline against an independent
reference (closed forms, direct settings optimization, analytic identities)
at pinned tolerances and reports the largest observed error. Suite names:

  theorem1    product family: every pair contributes 4, total exactly 12
  theorem2    biseparable family: numeric vs 4*cos^2(2*delta) + 8 on a grid
  theorem3    W family: numeric vs the simplex closed form, totals in (8, 12)
  theorem4    GHZ family: closed form asserted on its validity domain
              (cos(a)cos(b)cos(g) = 0), recorded elsewhere; deficit
              polynomial within [-1, 0]; totals within [8, 12]
  identity    pair correlation traces sum to 3 on Haar-random pure states;
              trade-off totals within [8, 12] (upper bound also on mixtures)
  horodecki   direct settings ascent agrees with the eigenvalue formula
  conjecture  anchored 4-qubit totals: saturating families, search bound,
              byte-identical reports for identical seeds

All randomness is drawn from the package's documented stream with the fixed
seeds below, so every run checks the exact same states.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .chsh import chsh_value, max_chsh, optimize_settings
from .constants import TSIRELSON
from .conjecture4 import conjecture_sum, generalized_ghz4, search_max
from .errors import StateFormatError
from .prng import Stream
from .qcore import DensityMatrix, density, haar_random_state
from .slocc import (
    BiseparableParams,
    GhzParams,
    WParams,
    make_biseparable,
    make_ghz,
    make_product,
    make_w,
)
from .stateio import canonical_json, search_report
from .tradeoff3 import (
    closed_form_biseparable,
    closed_form_ghz,
    closed_form_w,
    pairwise_chsh_squares,
    pairwise_chsh_squares_density,
    tradeoff_sum,
    trace_identity,
)

SEED_THEOREM3 = 30_001
SEED_HORODECKI = 50_001
SEED_IDENTITY = 60_001
SEED_CONJECTURE = 90_001

SUITE_NAMES = (
    "theorem1",
    "theorem2",
    "theorem3",
    "theorem4",
    "identity",
    "horodecki",
    "conjecture",
)


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    max_error: float
    tolerance: float
    detail: str = ""


@dataclass(frozen=True)
class SuiteReport:
    suite: str
    checks: list[CheckResult]

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)


def _check(name: str, max_error: float, tolerance: float, detail: str = "") -> CheckResult:
    return CheckResult(name, max_error <= tolerance, float(max_error), tolerance, detail)


def random_mixture(n: int, seed: int, components: int) -> DensityMatrix:
    """Convex mixture of Haar-random pure states with random weights."""
    stream = Stream(seed)
    weights = stream.uniforms(components) + 1e-3
    weights /= weights.sum()
    dim = 2 ** n
    rho = np.zeros((dim, dim), dtype=complex)
    for i, w in enumerate(weights):
        psi = haar_random_state(n, seed + 1000 * (i + 1)).amplitudes
        rho += w * np.outer(psi, psi.conj())
    rho.setflags(write=False)
    return DensityMatrix(n, rho)


def suite_theorem1() -> list[CheckResult]:
    report = tradeoff_sum(make_product())
    pair_err = max(abs(s - 4.0) for s in (report.s_ab, report.s_ac, report.s_bc))
    return [
        _check("product pair squares equal 4", pair_err, 1e-10),
        _check("product total equals 12", abs(report.total - 12.0), 1e-10),
        _check(
            "product classifies as ProductABC",
            0.0 if report.class_tag.tag == "ProductABC" else 1.0,
            0.0,
            f"tag={report.class_tag.tag}",
        ),
    ]


def suite_theorem2() -> list[CheckResult]:
    deltas = np.linspace(0.01, math.pi / 4, 50)
    match_err = 0.0
    lo, hi = math.inf, -math.inf
    for delta in deltas:
        total = sum(pairwise_chsh_squares(make_biseparable(BiseparableParams("A", delta))))
        closed = closed_form_biseparable(delta)[3]
        match_err = max(match_err, abs(total - closed))
        lo, hi = min(lo, total), max(hi, total)
    return [
        _check("biseparable numeric matches closed form", match_err, 1e-8),
        _check("biseparable totals >= 8", max(0.0, 8.0 - lo), 1e-9),
        _check("biseparable totals < 12", 0.0 if hi < 12.0 else 1.0, 0.0, f"max total {hi:.6f}"),
    ]


def _simplex_interior(stream: Stream, margin: float = 1e-3) -> tuple[float, float, float]:
    while True:
        e = -np.log(1.0 - stream.uniforms(4))
        a, b, c, _ = e / e.sum()
        if min(a, b, c) > margin:
            return float(a), float(b), float(c)


def suite_theorem3(samples: int = 200) -> list[CheckResult]:
    stream = Stream(SEED_THEOREM3)
    match_err = 0.0
    lo, hi = math.inf, -math.inf
    for _ in range(samples):
        a, b, c = _simplex_interior(stream)
        total = sum(pairwise_chsh_squares(make_w(WParams(a, b, c))))
        closed = closed_form_w(a, b, c)[3]
        match_err = max(match_err, abs(total - closed))
        lo, hi = min(lo, total), max(hi, total)
    golden = abs(sum(pairwise_chsh_squares(make_w(WParams(1 / 3, 1 / 3, 1 / 3)))) - 32.0 / 3.0)
    return [
        _check("W numeric matches closed form", match_err, 1e-8, f"{samples} samples"),
        _check("W totals > 8", max(0.0, 8.0 - lo), 1e-9),
        _check("W totals < 12", max(0.0, hi - 12.0), 1e-9),
        _check("W symmetric point gives 32/3", golden, 1e-8),
    ]


def suite_theorem4() -> list[CheckResult]:
    deltas = np.linspace(0.05, math.pi / 4, 10)
    angles = np.linspace(0.15, math.pi / 2, 5)
    phi = math.pi / 2
    grid_err = f_low = f_high = 0.0
    lo, hi = math.inf, -math.inf
    for d in deltas:
        for al in angles:
            for be in angles:
                for ga in angles:
                    state = make_ghz(GhzParams(d, al, be, ga, phi))
                    total = sum(pairwise_chsh_squares(state))
                    *_, closed, f = closed_form_ghz(d, al, be, ga)
                    grid_err = max(grid_err, abs(total - closed))
                    f_low = max(f_low, -1.0 - f)
                    f_high = max(f_high, f - 0.0)
                    lo, hi = min(lo, total), max(hi, total)
    # The closed form turns out to be exact only where cos(alpha)*cos(beta)
    # *cos(gamma) = 0, i.e. at least one angle equals pi/2 (then it holds for
    # every phase). Assert the match there; elsewhere record the discrepancy
    # instead of asserting either value.
    slice_err = 0.0
    sweep = np.linspace(0.2, math.pi / 2, 4)
    phis = (math.pi / 8, math.pi / 2, math.pi, 7 * math.pi / 4)
    for d in np.linspace(0.05, math.pi / 4, 6):
        for fixed in range(3):
            for x in sweep:
                for y in sweep:
                    abg = [x, y]
                    abg.insert(fixed, math.pi / 2)
                    for ph in phis:
                        state = make_ghz(GhzParams(d, *abg, ph))
                        total = sum(pairwise_chsh_squares(state))
                        slice_err = max(slice_err, abs(total - closed_form_ghz(d, *abg)[3]))
    drift = {}
    probe = np.linspace(0.2, math.pi / 2 - 0.2, 3)
    for other in (math.pi / 8, math.pi / 4, math.pi, 3 * math.pi / 2, 7 * math.pi / 4):
        worst = 0.0
        for d in (0.3, math.pi / 4):
            for al in probe:
                for be in probe[:2]:
                    for ga in probe[:2]:
                        state = make_ghz(GhzParams(d, al, be, ga, other))
                        total = sum(pairwise_chsh_squares(state))
                        worst = max(worst, abs(total - closed_form_ghz(d, al, be, ga)[3]))
        drift[f"{other:.4f}"] = f"{worst:.3e}"
    return [
        _check(
            "GHZ closed form exact where cos(a)cos(b)cos(g)=0, any phase",
            slice_err,
            1e-8,
            "one angle pinned to pi/2",
        ),
        CheckResult(
            "GHZ full-grid discrepancy at phi=pi/2 recorded (closed form is "
            "inexact when all angles are interior)",
            True,
            grid_err,
            math.inf,
            "numeric pipeline is authoritative; both values reported",
        ),
        _check("GHZ deficit polynomial >= -1", f_low, 1e-12),
        _check("GHZ deficit polynomial <= 0", f_high, 1e-12),
        _check("GHZ totals >= 8", max(0.0, 8.0 - lo), 1e-9),
        _check("GHZ totals <= 12", max(0.0, hi - 12.0), 1e-9),
        _check("GHZ phase drift recorded", 0.0, 0.0, f"max |numeric-closed| by phi: {drift}"),
    ]


def suite_identity(samples: int = 1000, mixtures: int = 200) -> list[CheckResult]:
    identity_err = 0.0
    lo, hi = math.inf, -math.inf
    for i in range(samples):
        state = haar_random_state(3, SEED_IDENTITY + i)
        identity_err = max(identity_err, abs(trace_identity(state) - 3.0))
        total = sum(pairwise_chsh_squares(state))
        lo, hi = min(lo, total), max(hi, total)
    mix_hi = -math.inf
    for i in range(mixtures):
        rho = random_mixture(3, SEED_IDENTITY + 10_000 + i, 2 + i % 5)
        mix_hi = max(mix_hi, sum(pairwise_chsh_squares_density(rho)))
    return [
        _check("pair correlation traces sum to 3", identity_err, 1e-9, f"{samples} Haar states"),
        _check("pure totals >= 8", max(0.0, 8.0 - lo), 1e-9),
        _check("pure totals <= 12", max(0.0, hi - 12.0), 1e-9),
        _check("mixture totals <= 12", max(0.0, mix_hi - 12.0), 1e-9, f"{mixtures} mixtures"),
    ]


def suite_horodecki(samples: int = 100) -> list[CheckResult]:
    agree_err = exceed = tsirelson = 0.0
    for i in range(samples):
        rhos = [
            density(haar_random_state(2, SEED_HORODECKI + i)),
            random_mixture(2, SEED_HORODECKI + 20_000 + i, 2 + i % 4),
        ]
        for rho in rhos:
            reference = max_chsh(rho)
            settings, value = optimize_settings(rho, restarts=8, seed=SEED_HORODECKI + 7 * i)
            agree_err = max(agree_err, abs(value - reference))
            exceed = max(exceed, chsh_value(rho, settings) - reference)
            tsirelson = max(tsirelson, reference - TSIRELSON)
    return [
        _check("settings ascent agrees with eigenvalue formula", agree_err, 1e-6,
               f"{samples} pure + {samples} mixed states"),
        _check("no settings beat the eigenvalue formula", max(0.0, exceed), 1e-9),
        _check("Tsirelson bound respected", max(0.0, tsirelson), 1e-9),
    ]


def suite_conjecture(samples: int = 10_000, restarts: int = 10, seed: int = SEED_CONJECTURE) -> list[CheckResult]:
    sat_err = abs(conjecture_sum(generalized_ghz4(0.0)).total - 3.0)
    for theta in np.linspace(0.0, math.pi, 20):
        sat_err = max(sat_err, abs(conjecture_sum(generalized_ghz4(theta)).total - 3.0))
    result = search_max(4, samples, restarts, seed)
    config = {"command": "verify", "suite": "conjecture", "samples": samples,
              "restarts": restarts, "seed": seed}
    text1 = canonical_json(search_report(result, config))
    text2 = canonical_json(search_report(search_max(4, samples, restarts, seed), config))
    return [
        _check("saturating families give exactly 3", sat_err, 1e-10),
        _check("search stays within the bound", max(0.0, result.best_total - 3.0), 1e-9,
               f"{samples} samples, {restarts} restarts, best {result.best_total:.12f}"),
        _check("identical seeds give byte-identical reports",
               0.0 if text1 == text2 else 1.0, 0.0),
    ]


_SUITES = {
    "theorem1": suite_theorem1,
    "theorem2": suite_theorem2,
    "theorem3": suite_theorem3,
    "theorem4": suite_theorem4,
    "identity": suite_identity,
    "horodecki": suite_horodecki,
    "conjecture": suite_conjecture,
}


def run_suite(name: str, samples: int | None = None, restarts: int | None = None,
              seed: int | None = None) -> list[SuiteReport]:
    """Run one named suite, or all of them; overrides apply where meaningful."""
    if name == "all":
        names = SUITE_NAMES
    elif name in _SUITES:
        names = (name,)
    else:
        raise StateFormatError(
            f"unknown suite {name!r}; expected one of {(*SUITE_NAMES, 'all')}", field="suite"
        )
    reports = []
    for suite in names:
        fn = _SUITES[suite]
        kwargs = {}
        if samples is not None and suite in ("theorem3", "identity", "horodecki", "conjecture"):
            kwargs["samples"] = samples
        if restarts is not None and suite == "conjecture":
            kwargs["restarts"] = restarts
        if seed is not None and suite == "conjecture":
            kwargs["seed"] = seed
        reports.append(SuiteReport(suite, fn(**kwargs)))
    return reports
