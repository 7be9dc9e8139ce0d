"""Structured 3-qubit families and a numerical class tag for pure states.

Pure 3-qubit states fall into six inequivalent classes under stochastic
local operations and classical communication: the full product class, three
biseparable classes (one qubit factors out), and the W and GHZ classes.
``classify`` tags a state from the ranks of its single-qubit reduced states
plus a 3-tangle discriminator (the Cayley hyperdeterminant of the amplitude
tensor), which vanishes on the W class and not on the GHZ class.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from .constants import TOL
from .errors import DimensionError, ParamError
from .qcore import PureState, density, partial_trace, pure_state

PRODUCT_ABC = "ProductABC"
BISEP_TAGS = {0: "BisepA_BC", 1: "BisepB_AC", 2: "BisepC_AB"}
W_TAG = "W"
GHZ_TAG = "GHZ"
AMBIGUOUS = "Ambiguous"

TANGLE_TOL = 1e-9
# Rank/tangle calls within a factor 10 of their threshold are refused:
# classification that close to a class boundary is numerically ill-posed.
AMBIGUITY_BAND = 10.0


@dataclass(frozen=True)
class BiseparableParams:
    """One factored qubit; the other two share cos(delta)|00> + sin(delta)|11>."""

    free_qubit: str  # "A", "B" or "C"
    delta: float  # in (0, pi/4]


@dataclass(frozen=True)
class WParams:
    """Weights of sqrt(a)|001> + sqrt(b)|010> + sqrt(c)|100> + sqrt(d)|000>."""

    a: float
    b: float
    c: float

    @property
    def d(self) -> float:
        return 1.0 - (self.a + self.b + self.c)


@dataclass(frozen=True)
class GhzParams:
    """Angles of sqrt(kappa)(cos(delta)|000> + sin(delta)e^{i phi}|pA>|pB>|pC>)
    with |pX> = cos(x)|0> + sin(x)|1>."""

    delta: float  # (0, pi/4]
    alpha: float  # (0, pi/2]
    beta: float  # (0, pi/2]
    gamma: float  # (0, pi/2]
    phi: float  # (0, 2 pi]

    @property
    def kappa(self) -> float:
        return 1.0 / (
            1.0
            + 2.0
            * math.cos(self.delta)
            * math.sin(self.delta)
            * math.cos(self.alpha)
            * math.cos(self.beta)
            * math.cos(self.gamma)
            * math.cos(self.phi)
        )


@dataclass(frozen=True)
class SloccClass:
    """Class tag plus the evidence it was decided on."""

    tag: str
    ranks: tuple[int, int, int]
    tangle: float
    note: str = ""


def make_product() -> PureState:
    """|000>, the fully separable representative."""
    amps = np.zeros(8, dtype=complex)
    amps[0] = 1.0
    return pure_state(3, amps, source=None)


_FREE_INDEX = {"A": 0, "B": 1, "C": 2}


def make_biseparable(p: BiseparableParams) -> PureState:
    """Biseparable state with one free qubit in |0>.

    The entangled pair keeps the cos|00> + sin|11> form on the two non-free
    qubits taken in label order, e.g. free C gives cos|000> + sin|110>.
    """
    if p.free_qubit not in _FREE_INDEX:
        raise ParamError(f"free_qubit must be one of A, B, C, got {p.free_qubit!r}")
    if not 0.0 < p.delta <= math.pi / 4:
        raise ParamError(f"delta must lie in (0, pi/4], got {p.delta}")
    free = _FREE_INDEX[p.free_qubit]
    pair = [q for q in range(3) if q != free]
    amps = np.zeros(8, dtype=complex)
    amps[0] = math.cos(p.delta)
    hi = (1 << (2 - pair[0])) | (1 << (2 - pair[1]))
    amps[hi] = math.sin(p.delta)
    return pure_state(3, amps, source=p)


def make_w(p: WParams) -> PureState:
    """W-class state sqrt(a)|001> + sqrt(b)|010> + sqrt(c)|100> + sqrt(d)|000>."""
    if min(p.a, p.b, p.c) <= 0.0:
        raise ParamError("a, b, c must all be positive")
    if p.d < 0.0:
        raise ParamError(f"a + b + c = {p.a + p.b + p.c} exceeds 1")
    amps = np.zeros(8, dtype=complex)
    amps[0] = math.sqrt(p.d)
    amps[1] = math.sqrt(p.a)
    amps[2] = math.sqrt(p.b)
    amps[4] = math.sqrt(p.c)
    return pure_state(3, amps, source=p)


def make_ghz(p: GhzParams) -> PureState:
    """GHZ-class state; the kappa prefactor makes the norm exactly 1."""
    if not 0.0 < p.delta <= math.pi / 4:
        raise ParamError(f"delta must lie in (0, pi/4], got {p.delta}")
    for name in ("alpha", "beta", "gamma"):
        v = getattr(p, name)
        if not 0.0 < v <= math.pi / 2:
            raise ParamError(f"{name} must lie in (0, pi/2], got {v}")
    if not 0.0 < p.phi <= 2 * math.pi:
        raise ParamError(f"phi must lie in (0, 2*pi], got {p.phi}")
    root_kappa = math.sqrt(p.kappa)
    phase = cmath.exp(1j * p.phi)
    locals_ = [
        (math.cos(a), math.sin(a)) for a in (p.alpha, p.beta, p.gamma)
    ]
    amps = np.zeros(8, dtype=complex)
    for idx in range(8):
        bits = ((idx >> 2) & 1, (idx >> 1) & 1, idx & 1)
        term = math.sin(p.delta) * phase
        for (c, s), bit in zip(locals_, bits):
            term *= s if bit else c
        if idx == 0:
            term += math.cos(p.delta)
        amps[idx] = root_kappa * term
    return pure_state(3, amps, source=p)


def three_tangle(state: PureState) -> float:
    """3-tangle = 4 |hyperdeterminant| of the 2x2x2 amplitude tensor.

    Zero on product, biseparable and W states, positive on the GHZ class
    (1 for the balanced GHZ state).
    """
    if state.n_qubits != 3:
        raise DimensionError("three_tangle needs a 3-qubit state")
    a = state.amplitudes

    def t(i: int, j: int, k: int) -> complex:
        return a[(i << 2) | (j << 1) | k]

    d1 = (
        t(0, 0, 0) ** 2 * t(1, 1, 1) ** 2
        + t(0, 0, 1) ** 2 * t(1, 1, 0) ** 2
        + t(0, 1, 0) ** 2 * t(1, 0, 1) ** 2
        + t(1, 0, 0) ** 2 * t(0, 1, 1) ** 2
    )
    d2 = (
        t(0, 0, 0) * t(1, 1, 1) * t(0, 1, 1) * t(1, 0, 0)
        + t(0, 0, 0) * t(1, 1, 1) * t(1, 0, 1) * t(0, 1, 0)
        + t(0, 0, 0) * t(1, 1, 1) * t(1, 1, 0) * t(0, 0, 1)
        + t(0, 1, 1) * t(1, 0, 0) * t(1, 0, 1) * t(0, 1, 0)
        + t(0, 1, 1) * t(1, 0, 0) * t(1, 1, 0) * t(0, 0, 1)
        + t(1, 0, 1) * t(0, 1, 0) * t(1, 1, 0) * t(0, 0, 1)
    )
    d3 = (
        t(0, 0, 0) * t(1, 1, 0) * t(1, 0, 1) * t(0, 1, 1)
        + t(1, 1, 1) * t(0, 0, 1) * t(0, 1, 0) * t(1, 0, 0)
    )
    return 4.0 * abs(d1 - 2.0 * d2 + 4.0 * d3)


def _in_band(value: float, threshold: float) -> bool:
    return threshold / AMBIGUITY_BAND <= value <= threshold * AMBIGUITY_BAND


def classify(state: PureState, tol: float = TANGLE_TOL) -> SloccClass:
    """Tag a 3-qubit pure state with its class.

    Ranks of the single-qubit reduced states decide between product,
    biseparable and genuinely tripartite; the 3-tangle (threshold ``tol``)
    separates GHZ from W. A rank eigenvalue or tangle within a factor 10 of
    its threshold yields the Ambiguous tag with the evidence attached.
    """
    if state.n_qubits != 3:
        raise DimensionError("classify needs a 3-qubit state")
    rho = density(state)
    ranks = []
    borderline = []
    for q in range(3):
        eigs = np.linalg.eigvalsh(partial_trace(rho, (q,)).entries)
        ranks.append(int(np.sum(eigs > TOL.rank)))
        small = float(min(eigs, key=abs))
        if _in_band(abs(small), TOL.rank):
            borderline.append(f"qubit {q} eigenvalue {small:.3e} near rank cutoff")
    ranks = tuple(ranks)
    tangle = three_tangle(state)
    if _in_band(tangle, tol):
        borderline.append(f"tangle {tangle:.3e} near threshold {tol:.1e}")
    if borderline:
        return SloccClass(AMBIGUOUS, ranks, tangle, "; ".join(borderline))
    ones = [q for q in range(3) if ranks[q] == 1]
    if len(ones) == 3:
        return SloccClass(PRODUCT_ABC, ranks, tangle)
    if len(ones) == 1:
        return SloccClass(BISEP_TAGS[ones[0]], ranks, tangle)
    if len(ones) == 0:
        tag = GHZ_TAG if tangle > tol else W_TAG
        return SloccClass(tag, ranks, tangle)
    # two rank-1 reductions cannot occur for a normalized pure state
    return SloccClass(AMBIGUOUS, ranks, tangle, "inconsistent rank pattern")
