"""Anchored correlation-tensor sums for 4..6 qubit pure states.

For a pair (X, Y) inside an n-qubit state, the pair tensor T has entries
tr(rho sigma_i^X sigma_j^Y) with identity on every other qubit. The
conjectured bound states that for 4-qubit pure states the anchored sum
tr(T_AB T_AB^T) + tr(T_AC T_AC^T) + tr(T_AD T_AD^T) never exceeds 3, with
the fully separable and generalized GHZ states saturating it. ``search_max``
hunts for counterexamples; finding one is a reportable output, never an
assertion failure.

The anchored-pair form of ``conjecture_sum_n`` is one reading of the n-qubit
generalization and is labeled as such in reports. For n = 3 the full
three-pair sum reproduces the trace identity (exactly 3 on pure states).
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .constants import LABELS, MAX_QUBITS
from .errors import DimensionError
from .qcore import (
    CorrelationMatrix,
    PureState,
    density,
    pauli_expectation,
    pure_state,
    haar_random_state,
)

VIOLATION_SLACK = 1e-9


def violation_bound(n: int) -> float:
    """Conjectured ceiling on the anchored total: 3 for 4 qubits.

    For other counts the same reasoning gives max(3, n-1): the fully
    separable state reaches n-1 (every pair tensor contributes 1) and a
    Bell pair containing the anchor reaches 3 whatever n is. This is one
    reading of the n-qubit extension and is labeled as such in reports.
    """
    return max(3.0, float(n - 1))

HIST_BIN_WIDTH = 0.05
HIST_RANGE = (0.0, 4.0)
HIST_BINS = int(round((HIST_RANGE[1] - HIST_RANGE[0]) / HIST_BIN_WIDTH))

# finite-difference ascent constants
FD_STEP = 1e-5
ASCENT_IMPROVEMENT = 1e-10
ASCENT_MAX_STEPS = 500

_AXES = "XYZ"


@dataclass(frozen=True, eq=False)
class PairTensor:
    """3x3 correlation tensor of an ordered qubit pair inside a larger state."""

    pair: tuple[str, str]
    t: np.ndarray

    def norm_sq(self) -> float:
        """tr(T T^T), the squared Frobenius norm."""
        return float(np.sum(self.t * self.t))


@dataclass(frozen=True)
class ConjectureResult:
    """Anchored pair-tensor trace sum; totals above the bound are recorded, not hidden."""

    per_pair: dict[str, float]
    total: float
    anchored_qubit: str
    n_qubits: int


def label_index(label: str, n: int) -> int:
    idx = LABELS.find(label.upper()) if isinstance(label, str) else int(label)
    if not 0 <= idx < n:
        raise DimensionError(f"label {label!r} is not a qubit of a {n}-qubit state")
    return idx


def pair_tensor(state: PureState, x: str, y: str) -> PairTensor:
    """Correlation tensor of qubits (x, y), from full-state Pauli expectations.

    Agrees with the Bloch matrix of the 2-qubit reduction to machine
    precision (the test suite checks both routes).
    """
    n = state.n_qubits
    if n < 2:
        raise DimensionError("pair_tensor needs at least 2 qubits")
    ix, iy = label_index(x, n), label_index(y, n)
    if ix == iy:
        raise DimensionError(f"pair labels must differ, got ({x}, {y})")
    rho = density(state)
    t = np.empty((3, 3))
    for i, ai in enumerate(_AXES):
        for j, aj in enumerate(_AXES):
            string = ["I"] * n
            string[ix], string[iy] = ai, aj
            t[i, j] = pauli_expectation(rho, "".join(string))
    t.setflags(write=False)
    return PairTensor((LABELS[ix], LABELS[iy]), t)


def pair_correlation(state: PureState, x: str, y: str) -> CorrelationMatrix:
    """The pair tensor as a plain correlation matrix."""
    return CorrelationMatrix(pair_tensor(state, x, y).t)


def conjecture_sum_n(state: PureState, anchor: str = "A") -> ConjectureResult:
    """Anchored sum of tr(T T^T) over all pairs (anchor, Y)."""
    n = state.n_qubits
    if n < 3:
        raise DimensionError("conjecture_sum_n needs at least 3 qubits")
    ia = label_index(anchor, n)
    per_pair: dict[str, float] = {}
    for q in range(n):
        if q == ia:
            continue
        tensor = pair_tensor(state, LABELS[ia], LABELS[q])
        per_pair["".join(tensor.pair)] = tensor.norm_sq()
    return ConjectureResult(per_pair, sum(per_pair.values()), LABELS[ia], n)


def conjecture_sum(state: PureState) -> ConjectureResult:
    """The 4-qubit anchored sum tr(T_AB T_AB^T) + tr(T_AC T_AC^T) + tr(T_AD T_AD^T)."""
    if state.n_qubits != 4:
        raise DimensionError(f"conjecture_sum needs 4 qubits, got {state.n_qubits}")
    return conjecture_sum_n(state, "A")


def generalized_ghz4(theta: float) -> PureState:
    """cos(theta)|0000> + sin(theta)|1111>; saturates the bound for every theta."""
    amps = np.zeros(16, dtype=complex)
    amps[0] = np.cos(theta)
    amps[15] = np.sin(theta)
    return pure_state(4, amps)


@lru_cache(maxsize=8)
def _pauli_stack(n: int, anchor_index: int) -> np.ndarray:
    """Stacked pair-tensor observables, ordered by (other qubit, i, j)."""
    from .qcore import _pauli_matrix

    mats = []
    for q in range(n):
        if q == anchor_index:
            continue
        for ai in _AXES:
            for aj in _AXES:
                string = ["I"] * n
                string[anchor_index], string[q] = ai, aj
                mats.append(_pauli_matrix("".join(string)))
    return np.stack(mats)


def _anchored_total(amps: np.ndarray, n: int, anchor_index: int) -> float:
    """Anchored total straight from the amplitude vector.

    Same expression as ``conjecture_sum_n`` (the suite checks agreement to
    1e-12); kept separate so the search inner loop avoids per-call object
    construction.
    """
    vals = np.einsum("i,pij,j->p", amps.conj(), _pauli_stack(n, anchor_index), amps).real
    return float(np.sum(vals * vals))


def _histogram(totals: np.ndarray) -> list[int]:
    idx = np.floor((totals - HIST_RANGE[0]) / HIST_BIN_WIDTH).astype(int)
    idx = np.clip(idx, 0, HIST_BINS - 1)
    return np.bincount(idx, minlength=HIST_BINS).tolist()


def local_ascent(
    state: PureState, anchor: str = "A"
) -> tuple[PureState, float]:
    """Gradient ascent on the anchored total over the raw amplitude components.

    The 2**(n+1) real parameters are the real and imaginary parts of the
    amplitudes, renormalized at every evaluation. Gradients are central
    finite differences with step 1e-5; steps use backtracking line search
    and the climb stops once the improvement falls below 1e-10.
    """
    n = state.n_qubits
    ia = label_index(anchor, n)
    dim = 2 ** n

    def unpack(x: np.ndarray) -> np.ndarray:
        amps = x[:dim] + 1j * x[dim:]
        return amps / np.linalg.norm(amps)

    def f(x: np.ndarray) -> float:
        return _anchored_total(unpack(x), n, ia)

    x = np.concatenate([state.amplitudes.real, state.amplitudes.imag])
    fx = f(x)
    for _ in range(ASCENT_MAX_STEPS):
        grad = np.empty_like(x)
        for k in range(x.size):
            xk = x[k]
            x[k] = xk + FD_STEP
            fp = f(x)
            x[k] = xk - FD_STEP
            fm = f(x)
            x[k] = xk
            grad[k] = (fp - fm) / (2.0 * FD_STEP)
        gnorm_sq = float(grad @ grad)
        if gnorm_sq == 0.0:
            break
        t = 0.25
        improved = False
        while t > 1e-14:
            x_new = x + t * grad
            f_new = f(x_new)
            if f_new > fx + 1e-4 * t * gnorm_sq:
                improved = True
                break
            t *= 0.5
        if not improved:
            break
        gain = f_new - fx
        amps = unpack(x_new)
        x = np.concatenate([amps.real, amps.imag])
        fx = f(x)
        if gain < ASCENT_IMPROVEMENT:
            break
    return pure_state(n, unpack(x)), fx


@dataclass(frozen=True)
class SearchResult:
    """Outcome of a conjecture search run."""

    n: int
    anchor: str
    samples: int
    restarts: int
    seed: int
    best_total: float
    best_state: PureState
    histogram: list[int]
    violation_found: bool


def search_max(
    n: int,
    samples: int,
    restarts: int,
    seed: int,
    anchor: str = "A",
    warm_starts: tuple[PureState, ...] = (),
    threads: int = 1,
) -> SearchResult:
    """Two-phase search for states maximizing the anchored total.

    Phase 1 scores ``samples`` Haar-random states (sample i drawn from seed
    ``seed + i``); phase 2 runs the finite-difference ascent from the top
    ``restarts`` of them plus any warm starts. The histogram covers the
    phase-1 totals. Partitioning by sample index makes the result
    independent of the thread count, and the whole run is a pure function
    of its arguments.
    """
    if samples < 1:
        raise DimensionError("samples must be >= 1")
    if not 3 <= n <= MAX_QUBITS:
        raise DimensionError(f"search supports 3..{MAX_QUBITS} qubits, got {n}")
    ia = label_index(anchor, n)

    def score(i: int) -> float:
        return _anchored_total(haar_random_state(n, seed + i).amplitudes, n, ia)

    if threads > 1:
        from concurrent.futures import ThreadPoolExecutor

        with ThreadPoolExecutor(max_workers=threads) as pool:
            totals = np.fromiter(pool.map(score, range(samples)), dtype=float, count=samples)
    else:
        totals = np.fromiter(map(score, range(samples)), dtype=float, count=samples)

    # top indices by total, ties broken toward the earlier sample
    order = sorted(range(samples), key=lambda i: (-totals[i], i))
    top = order[: max(restarts, 0)]

    candidates: list[PureState] = [haar_random_state(n, seed + order[0])]
    for i in top:
        candidates.append(local_ascent(haar_random_state(n, seed + i), anchor)[0])
    for ws in warm_starts:
        if ws.n_qubits != n:
            raise DimensionError("warm start qubit count differs from search dimension")
        candidates.append(ws)
        candidates.append(local_ascent(ws, anchor)[0])

    best_state = candidates[0]
    best_total = conjecture_sum_n(best_state, anchor).total
    for cand in candidates[1:]:
        val = conjecture_sum_n(cand, anchor).total
        if val > best_total:
            best_state, best_total = cand, val

    return SearchResult(
        n=n,
        anchor=LABELS[ia],
        samples=samples,
        restarts=restarts,
        seed=seed,
        best_total=best_total,
        best_state=best_state,
        histogram=_histogram(totals),
        violation_found=best_total > violation_bound(n) + VIOLATION_SLACK,
    )
