"""Shared helpers for the test suite."""

from __future__ import annotations

import numpy as np
import pytest

from chsh_tradeoff.qcore import DensityMatrix, PureState, haar_random_state, pure_state


def random_unitary(dim: int, rng: np.random.Generator) -> np.ndarray:
    """Haar-ish unitary from QR of a complex Gaussian matrix (test plumbing)."""
    z = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
    q, r = np.linalg.qr(z)
    return q * (np.diag(r) / np.abs(np.diag(r)))


def random_mixture(n: int, rng: np.random.Generator, components: int) -> DensityMatrix:
    """Random convex mixture of Haar-random pure states."""
    weights = rng.dirichlet(np.ones(components))
    dim = 2 ** n
    rho = np.zeros((dim, dim), dtype=complex)
    for w in weights:
        psi = rng.normal(size=dim) + 1j * rng.normal(size=dim)
        psi /= np.linalg.norm(psi)
        rho += w * np.outer(psi, psi.conj())
    return DensityMatrix(n, rho)


def apply_product_unitary(state: PureState, unitaries: dict[int, np.ndarray]) -> PureState:
    """Apply single-qubit unitaries on the given qubits of a pure state."""
    op = np.array([[1.0 + 0j]])
    for q in range(state.n_qubits):
        op = np.kron(op, unitaries.get(q, np.eye(2, dtype=complex)))
    return pure_state(state.n_qubits, op @ state.amplitudes)


def permute_qubits(state: PureState, perm: tuple[int, ...]) -> PureState:
    """Relabel qubits: new qubit q is old qubit perm[q]."""
    n = state.n_qubits
    t = state.amplitudes.reshape((2,) * n)
    return pure_state(n, t.transpose(perm).ravel())


@pytest.fixture
def rng() -> np.random.Generator:
    return np.random.default_rng(1234)


@pytest.fixture
def haar3() -> PureState:
    return haar_random_state(3, 777)
