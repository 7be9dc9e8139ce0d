"""Pairwise CHSH trade-off sums for 3-qubit states.

For any 3-qubit state the squared maximal CHSH values of the three 2-qubit
reductions sum to at most 12, and for pure states to at least 8. The
``tradeoff_sum`` pipeline is fully numeric (partial trace, Bloch
decomposition, eigenvalues); the ``closed_form_*`` functions evaluate the
published per-family expressions verbatim so the two routes can be compared.
The numeric pipeline is the ground truth: where a closed form disagrees
beyond TOL.match the report carries both values and the discrepancy instead
of asserting either.

Known caveats of the closed forms, found numerically and kept verbatim:

* the W and GHZ per-pair expressions label the AB and BC pairs the opposite
  way round from this package's explicit tensor-product construction; the
  W totals agree to machine precision either way;
* the GHZ expressions carry no dependence on the relative phase and are
  exact only where cos(alpha)*cos(beta)*cos(gamma) = 0 (at least one local
  state orthogonal to |0>), in which case they hold for every phase; with
  all three angles interior they are approximations, off by up to ~0.4 even
  at phase pi/2, so GHZ comparisons are recorded rather than asserted there.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .constants import TOL
from .errors import DimensionError, ParamError
from .chsh import max_chsh, mtm_eigs
from .qcore import DensityMatrix, PureState, bloch_decompose, density, partial_trace
from .slocc import BiseparableParams, GhzParams, SloccClass, WParams, classify

PAIRS = ((0, 1), (0, 2), (1, 2))  # AB, AC, BC


@dataclass(frozen=True)
class TradeoffReport:
    """Per-pair squared CHSH values, their sum and the closed-form shadow."""

    s_ab: float
    s_ac: float
    s_bc: float
    total: float
    closed_form_total: float | None
    discrepancy: float | None
    class_tag: SloccClass | None

    @property
    def closed_form_matches(self) -> bool | None:
        if self.discrepancy is None:
            return None
        return self.discrepancy <= TOL.match


def pairwise_chsh_squares(state: PureState) -> tuple[float, float, float]:
    """Squared maximal CHSH value of each 2-qubit reduction (AB, AC, BC)."""
    if state.n_qubits != 3:
        raise DimensionError("pairwise_chsh_squares needs a 3-qubit state")
    return pairwise_chsh_squares_density(density(state))


def pairwise_chsh_squares_density(rho: DensityMatrix) -> tuple[float, float, float]:
    """Same as ``pairwise_chsh_squares`` but for an arbitrary 3-qubit state."""
    if rho.n_qubits != 3:
        raise DimensionError("expected a 3-qubit density matrix")
    return tuple(max_chsh(partial_trace(rho, pair)) ** 2 for pair in PAIRS)


def _closed_form_total(source: object) -> float | None:
    if source is None:
        return None
    if isinstance(source, BiseparableParams):
        return closed_form_biseparable(source.delta, source.free_qubit)[3]
    if isinstance(source, WParams):
        return closed_form_w(source.a, source.b, source.c)[3]
    if isinstance(source, GhzParams):
        return closed_form_ghz(source.delta, source.alpha, source.beta, source.gamma)[3]
    return None


def tradeoff_sum(state: PureState) -> TradeoffReport:
    """Numeric trade-off report with class tag and closed-form comparison.

    The closed-form column is filled in only when the state was built by one
    of the structured generators (the product state |000> counts, with the
    exact total 12).
    """
    s_ab, s_ac, s_bc = pairwise_chsh_squares(state)
    total = s_ab + s_ac + s_bc
    tag = classify(state)
    if state.source is None and tag.tag == "ProductABC":
        closed = 12.0
    else:
        closed = _closed_form_total(state.source)
    disc = None if closed is None else abs(total - closed)
    return TradeoffReport(s_ab, s_ac, s_bc, total, closed, disc, tag)


def closed_form_biseparable(
    delta: float, free_qubit: str = "A"
) -> tuple[float, float, float, float]:
    """Closed-form (s_ab, s_ac, s_bc, total) for the biseparable family.

    In the free-qubit-A frame the pair values are 4*(cos^2 - sin^2)^2 twice
    and 16*cos^2*sin^2 + 4 for the entangled pair; the tuple is permuted for
    the B and C variants. The total is 4*cos^2(2*delta) + 8 regardless.
    """
    if not 0.0 < delta <= math.pi / 4:
        raise ParamError(f"delta must lie in (0, pi/4], got {delta}")
    c2, s2 = math.cos(delta) ** 2, math.sin(delta) ** 2
    weak = 4.0 * (c2 - s2) ** 2
    strong = 16.0 * c2 * s2 + 4.0
    total = 4.0 * math.cos(2.0 * delta) ** 2 + 8.0
    if free_qubit == "A":
        out = (weak, weak, strong)  # entangled pair BC
    elif free_qubit == "B":
        out = (weak, strong, weak)  # entangled pair AC
    elif free_qubit == "C":
        out = (strong, weak, weak)  # entangled pair AB
    else:
        raise ParamError(f"free_qubit must be one of A, B, C, got {free_qubit!r}")
    return (*out, total)


def closed_form_w(a: float, b: float, c: float) -> tuple[float, float, float, float, float]:
    """Closed-form (s_ab, s_ac, s_bc, total, V) for the W family, verbatim.

    V is the product of the four simplex factors ((+-sqrt(a) +- sqrt(b)
    +- sqrt(c))^2 + d) with an even number of minus signs. The per-pair
    labels follow the published convention, which swaps AB and BC relative
    to the numeric pipeline; the total is unaffected.
    """
    if min(a, b, c) <= 0.0:
        raise ParamError("a, b, c must all be positive")
    d = 1.0 - (a + b + c)
    if d < 0.0:
        raise ParamError(f"a + b + c = {a + b + c} exceeds 1")
    ra, rb, rc = math.sqrt(a), math.sqrt(b), math.sqrt(c)
    V = (
        ((ra + rb + rc) ** 2 + d)
        * ((ra + rb - rc) ** 2 + d)
        * ((ra - rb + rc) ** 2 + d)
        * ((-ra + rb + rc) ** 2 + d)
    )
    rv = math.sqrt(V)
    s_ab = 2.0 * (1.0 + 12.0 * a * b - 4.0 * a * c - 4.0 * b * c + rv)
    s_ac = 2.0 * (1.0 + 12.0 * a * c - 4.0 * a * b - 4.0 * b * c + rv)
    s_bc = 2.0 * (1.0 + 12.0 * b * c - 4.0 * a * b - 4.0 * a * c + rv)
    total = 2.0 * (3.0 * (1.0 + rv) + 4.0 * (a * b + a * c + b * c))
    return s_ab, s_ac, s_bc, total, V


def ghz_f(a: float, b: float, c: float) -> float:
    """The GHZ-family deficit polynomial in (cos^2 alpha, cos^2 beta, cos^2 gamma).

    Bounded in [-1, 0] on the unit cube: each term of the factored form
    a(b-1)(1-c) + b(c-1)(1-a) + c(a-1)(1-b) is nonpositive there.
    """
    return 2.0 * (a * b + a * c + b * c) - (a + b + c) - 3.0 * a * b * c


def closed_form_ghz(
    delta: float, alpha: float, beta: float, gamma: float
) -> tuple[float, float, float, float, float]:
    """Closed-form (s_ab, s_ac, s_bc, total, f) for the GHZ family, verbatim.

    The expressions carry no phase argument; see the module docstring for
    where they agree with the numeric pipeline. Boundary angles (alpha, beta
    or gamma equal to 0) are accepted here because the formulas are
    continuous there, even though the state generator keeps its open ranges.
    """
    if not 0.0 < delta <= math.pi / 4:
        raise ParamError(f"delta must lie in (0, pi/4], got {delta}")
    for name, v in (("alpha", alpha), ("beta", beta), ("gamma", gamma)):
        if not 0.0 <= v <= math.pi / 2:
            raise ParamError(f"{name} must lie in [0, pi/2], got {v}")
    a = math.cos(alpha) ** 2
    b = math.cos(beta) ** 2
    c = math.cos(gamma) ** 2
    s2 = math.sin(2.0 * delta) ** 2
    den = (1.0 + a * b * c * s2) ** 2
    s_ab = 4.0 * (1.0 + ((a - b - c + 2.0 * b * c) * s2 - a * b * c * s2) / den)
    s_ac = 4.0 * (1.0 + ((b - a - c + 2.0 * a * c) * s2 - a * b * c * s2) / den)
    s_bc = 4.0 * (1.0 + ((c - a - b + 2.0 * a * b) * s2 - a * b * c * s2) / den)
    f = ghz_f(a, b, c)
    total = 12.0 + 4.0 * f * s2 / den
    return s_ab, s_ac, s_bc, total, f


def trace_identity(state: PureState) -> float:
    """Sum of tr(M^T M) over the three pair correlation matrices.

    Equals 3 for every 3-qubit pure state; this is the identity behind the
    lower bound of 8 on the pure-state trade-off total (each M^T M keeps its
    two largest of three eigenvalues, hence at least 2/3 of its trace).
    """
    if state.n_qubits != 3:
        raise DimensionError("trace_identity needs a 3-qubit state")
    rho = density(state)
    out = 0.0
    for pair in PAIRS:
        m = bloch_decompose(partial_trace(rho, pair)).M.m
        out += float(np.sum(m * m))
    return out


def eig_lower_bound_holds(M: np.ndarray | object) -> bool:
    """tau1 + tau2 >= (2/3) tr(M^T M), the mechanism behind the pure-state lower bound."""
    taus = mtm_eigs(M)
    return taus.tau1 + taus.tau2 >= (2.0 / 3.0) * (taus.tau1 + taus.tau2 + taus.tau3) - 1e-12
