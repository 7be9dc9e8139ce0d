"""Reproducible random streams from a documented, portable generator.

The generator is SplitMix64 (Steele, Lea & Flood 2014), chosen because its
output is a pure function of a 64-bit seed and a counter, so any language
with 64-bit integer arithmetic reproduces it exactly:

    gamma  = 0x9E3779B97F4A7C15
    z      = (seed + (k + 1) * gamma) mod 2**64        for k = 0, 1, 2, ...
    z      = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) mod 2**64
    z      = ((z ^ (z >> 27)) * 0x94D049BB133111EB) mod 2**64
    out_k  = z ^ (z >> 31)

Uniforms map the top 53 bits to doubles, normals come from the Box-Muller
transform on consecutive uniform pairs:

    u1_k = ((out_{2k} >> 11) + 1) * 2**-53        in (0, 1]
    u2_k = (out_{2k+1} >> 11) * 2**-53            in [0, 1)
    n_{2k}   = sqrt(-2 ln u1_k) * cos(2 pi u2_k)
    n_{2k+1} = sqrt(-2 ln u1_k) * sin(2 pi u2_k)

Sweeps derive the stream for sample ``i`` from ``base_seed + i``, so
partitioning samples across workers cannot change any result.
"""

from __future__ import annotations

import numpy as np

_GAMMA = np.uint64(0x9E3779B97F4A7C15)
_MIX1 = np.uint64(0xBF58476D1CE4E5B9)
_MIX2 = np.uint64(0x94D049BB133111EB)
_U53 = 2.0 ** -53


def _mix(z: np.ndarray) -> np.ndarray:
    z = (z ^ (z >> np.uint64(30))) * _MIX1
    z = (z ^ (z >> np.uint64(27))) * _MIX2
    return z ^ (z >> np.uint64(31))


def raw64(seed: int, start: int, count: int) -> np.ndarray:
    """SplitMix64 outputs ``start .. start+count-1`` for the given seed."""
    ks = np.arange(start + 1, start + count + 1, dtype=np.uint64)
    with np.errstate(over="ignore"):
        return _mix(np.uint64(seed & 0xFFFFFFFFFFFFFFFF) + ks * _GAMMA)


class Stream:
    """Stateful view over one SplitMix64 output sequence."""

    def __init__(self, seed: int):
        self.seed = seed & 0xFFFFFFFFFFFFFFFF
        self._pos = 0

    def uniforms(self, count: int) -> np.ndarray:
        """``count`` doubles uniform on [0, 1)."""
        z = raw64(self.seed, self._pos, count)
        self._pos += count
        return (z >> np.uint64(11)).astype(np.float64) * _U53

    def normals(self, count: int) -> np.ndarray:
        """``count`` standard normals via Box-Muller (consumes pairs)."""
        npairs = (count + 1) // 2
        z = raw64(self.seed, self._pos, 2 * npairs)
        self._pos += 2 * npairs
        u1 = ((z[0::2] >> np.uint64(11)).astype(np.float64) + 1.0) * _U53
        u2 = (z[1::2] >> np.uint64(11)).astype(np.float64) * _U53
        r = np.sqrt(-2.0 * np.log(u1))
        theta = 2.0 * np.pi * u2
        out = np.empty(2 * npairs)
        out[0::2] = r * np.cos(theta)
        out[1::2] = r * np.sin(theta)
        return out[:count]

    def unit_vector(self, dim: int = 3) -> np.ndarray:
        """A random direction, redrawn in the measure-zero degenerate case."""
        while True:
            v = self.normals(dim)
            n = np.linalg.norm(v)
            if n > 1e-12:
                return v / n
