"""Multi-qubit pure states, density operators and Bloch-basis expectations.

Basis convention used everywhere in this package: qubit 0 (label A) is the
most significant bit of a computational-basis index, qubit n-1 the least
significant. For n = 3 the index 0b011 therefore means |0>_A |1>_B |1>_C.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Sequence

import numpy as np

from .constants import MAX_QUBITS, TOL
from .errors import DegenerateInput, DimensionError, NumericalError
from .prng import Stream

PAULI = {
    "I": np.eye(2, dtype=complex),
    "X": np.array([[0, 1], [1, 0]], dtype=complex),
    "Y": np.array([[0, -1j], [1j, 0]], dtype=complex),
    "Z": np.array([[1, 0], [0, -1]], dtype=complex),
}

_AXES = "XYZ"


@dataclass(frozen=True, eq=False)
class PureState:
    """Normalized n-qubit state vector.

    ``renormalized`` records whether the input needed rescaling by more than
    TOL.norm. ``source`` carries the generator parameters when the state was
    produced by one of the structured families, and None otherwise.
    """

    n_qubits: int
    amplitudes: np.ndarray
    renormalized: bool = False
    source: object | None = None


@dataclass(frozen=True, eq=False)
class DensityMatrix:
    """Hermitian unit-trace operator on ``n_qubits`` qubits (row-major)."""

    n_qubits: int
    entries: np.ndarray

    def validate(self) -> None:
        """Check Hermiticity, unit trace and positive semidefiniteness."""
        m = self.entries
        dim = 2 ** self.n_qubits
        if m.shape != (dim, dim):
            raise DimensionError(f"expected {dim}x{dim} matrix, got {m.shape}")
        if np.max(np.abs(m - m.conj().T)) > TOL.herm:
            raise NumericalError("matrix is not Hermitian within tolerance")
        if abs(np.trace(m).real - 1.0) > TOL.norm or abs(np.trace(m).imag) > TOL.norm:
            raise NumericalError("trace differs from 1 beyond tolerance")
        if np.linalg.eigvalsh(m).min() < -TOL.psd:
            raise NumericalError("matrix has an eigenvalue below -tolerance")


@dataclass(frozen=True, eq=False)
class CorrelationMatrix:
    """Real 3x3 matrix of Pauli-Pauli expectations."""

    m: np.ndarray


@dataclass(frozen=True, eq=False)
class BlochData:
    """Bloch decomposition of a 2-qubit state: local vectors r, s and M."""

    r: np.ndarray
    s: np.ndarray
    M: CorrelationMatrix


def _locked(a: np.ndarray) -> np.ndarray:
    a.setflags(write=False)
    return a


def pure_state(
    n: int,
    amplitudes: Sequence[complex] | np.ndarray,
    source: object | None = None,
) -> PureState:
    """Build a normalized PureState from raw amplitudes.

    Raises DimensionError on a length mismatch and DegenerateInput for the
    zero vector. Any other vector is divided by its norm; the result records
    whether that rescaling exceeded TOL.norm.
    """
    if not 1 <= n <= MAX_QUBITS:
        raise DimensionError(f"qubit count must be in 1..{MAX_QUBITS}, got {n}")
    amps = np.asarray(amplitudes, dtype=complex).ravel()
    if amps.size != 2 ** n:
        raise DimensionError(f"expected 2**{n} = {2 ** n} amplitudes, got {amps.size}")
    norm = np.linalg.norm(amps)
    if norm == 0.0 or not np.isfinite(norm):
        raise DegenerateInput("amplitude vector has zero or non-finite norm")
    return PureState(n, _locked(amps / norm), abs(norm - 1.0) > TOL.norm, source)


def density(state: PureState) -> DensityMatrix:
    """Rank-one density operator |psi><psi| of a pure state."""
    rho = np.outer(state.amplitudes, state.amplitudes.conj())
    return DensityMatrix(state.n_qubits, _locked(rho))


def _check_labels(n: int, keep: Iterable[int]) -> list[int]:
    keep = list(keep)
    if not keep:
        raise DimensionError("keep must name at least one qubit")
    if len(set(keep)) != len(keep):
        raise DimensionError(f"duplicate qubit labels in {keep}")
    for q in keep:
        if not 0 <= q < n:
            raise DimensionError(f"qubit label {q} outside 0..{n - 1}")
    return keep


def partial_trace(rho: DensityMatrix, keep: Iterable[int]) -> DensityMatrix:
    """Reduced density matrix on the kept qubits, in the order given.

    Works by reindexing the 2n-axis tensor view of the matrix; no operator
    Kronecker products are formed.
    """
    n = rho.n_qubits
    keep = _check_labels(n, keep)
    traced = [q for q in range(n) if q not in keep]
    t = rho.entries.reshape((2,) * (2 * n))
    # row axis of qubit q is q, column axis is n+q
    perm = [*keep, *traced, *(n + q for q in keep), *(n + q for q in traced)]
    t = t.transpose(perm)
    dk, dt = 2 ** len(keep), 2 ** len(traced)
    t = t.reshape(dk, dt, dk, dt)
    red = np.einsum("ajbj->ab", t)
    return DensityMatrix(len(keep), _locked(np.ascontiguousarray(red)))


@lru_cache(maxsize=None)
def _pauli_matrix(pauli_string: str) -> np.ndarray:
    p = PAULI[pauli_string[0]]
    for ch in pauli_string[1:]:
        p = np.kron(p, PAULI[ch])
    return _locked(p)


def pauli_expectation(rho: DensityMatrix, pauli_string: str) -> float:
    """Re tr(rho P) for a tensor product P of I/X/Y/Z, one letter per qubit.

    Raises NumericalError when the imaginary residue exceeds TOL.imag, which
    signals a non-Hermitian input.
    """
    s = pauli_string.upper()
    if len(s) != rho.n_qubits or any(ch not in PAULI for ch in s):
        raise DimensionError(f"invalid Pauli string {pauli_string!r} for {rho.n_qubits} qubits")
    val = np.einsum("ij,ji->", rho.entries, _pauli_matrix(s))
    if abs(val.imag) > TOL.imag:
        raise NumericalError(f"tr(rho*{s}) has imaginary residue {val.imag:.3e}")
    return float(val.real)


def bloch_decompose(rho: DensityMatrix) -> BlochData:
    """Local Bloch vectors and correlation matrix of a 2-qubit state.

    Satisfies the reconstruction identity
    rho = (I*I + sum r_i s_i*I + sum s_j I*s_j + sum M_ij s_i*s_j) / 4.
    """
    if rho.n_qubits != 2:
        raise DimensionError(f"bloch_decompose needs a 2-qubit state, got {rho.n_qubits}")
    r = np.array([pauli_expectation(rho, ax + "I") for ax in _AXES])
    s = np.array([pauli_expectation(rho, "I" + ax) for ax in _AXES])
    m = np.array([[pauli_expectation(rho, ai + aj) for aj in _AXES] for ai in _AXES])
    return BlochData(_locked(r), _locked(s), CorrelationMatrix(_locked(m)))


def bloch_reconstruct(data: BlochData) -> DensityMatrix:
    """Inverse of bloch_decompose; mainly used to test the round trip."""
    rho = np.eye(4, dtype=complex)
    for i, ax in enumerate(_AXES):
        rho += data.r[i] * np.kron(PAULI[ax], PAULI["I"])
        rho += data.s[i] * np.kron(PAULI["I"], PAULI[ax])
    for i, ai in enumerate(_AXES):
        for j, aj in enumerate(_AXES):
            rho += data.M.m[i, j] * np.kron(PAULI[ai], PAULI[aj])
    return DensityMatrix(2, _locked(rho / 4.0))


def haar_random_state(n: int, seed: int) -> PureState:
    """Haar-distributed pure state, deterministic per (n, seed).

    Draws 2**(n+1) standard normals from the SplitMix64/Box-Muller stream
    documented in ``prng`` and normalizes real/imag pairs. Sweeps seed
    sample i with ``base_seed + i``.
    """
    if not 1 <= n <= MAX_QUBITS:
        raise DimensionError(f"qubit count must be in 1..{MAX_QUBITS}, got {n}")
    g = Stream(seed).normals(2 ** (n + 1))
    return pure_state(n, g[0::2] + 1j * g[1::2])


def purity(rho: DensityMatrix) -> float:
    """tr(rho^2); 1 for pure states, 1/2**n for maximally mixed ones."""
    return float(np.einsum("ij,ji->", rho.entries, rho.entries).real)
