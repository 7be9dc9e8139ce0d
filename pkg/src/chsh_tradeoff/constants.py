"""Centralized numerical tolerances and shared constants."""

from dataclasses import dataclass


@dataclass(frozen=True)
class Tolerances:
    """Every tolerance used by the package, in one record.

    norm   -- acceptable deviation of a state vector norm from 1
    herm   -- elementwise Hermiticity / trace-preservation slack
    match  -- closed-form vs numeric pipeline agreement
    rank   -- eigenvalue cutoff when counting ranks of reduced states
    imag   -- largest imaginary residue tolerated before taking real parts
    psd    -- how far below zero an eigenvalue of a PSD matrix may sit
    """

    norm: float = 1e-10
    herm: float = 1e-12
    match: float = 1e-8
    rank: float = 1e-8
    imag: float = 1e-10
    psd: float = 1e-10


TOL = Tolerances()

# Qubit labels, index 0 = letter A = most significant bit of a basis index.
LABELS = "ABCDEF"

MAX_QUBITS = 6

# Version string embedded in every file artifact the service or CLI writes.
FORMAT_VERSION = "1"

# State files must be normalized to this relative accuracy; smaller
# deviations are silently renormalized on read.
FILE_NORM_TOL = 1e-6

TSIRELSON = 2.0 * 2.0 ** 0.5
