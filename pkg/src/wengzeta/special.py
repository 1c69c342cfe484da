"""Riemann zeta, log-gamma and the completed xi at complex arguments.

Vectorized over numpy arrays.  zeta uses Euler-Maclaurin summation on
Re s >= 1/2; xi is evaluated there and reflected through xi(s) = xi(1-s)
elsewhere.  Gamma uses the Lanczos approximation (g = 7, 9 terms) with
the reflection formula for Re z < 1/2.
"""
from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import comb, factorial

import numpy as np

POLE_RADIUS = 1e-8

_LANCZOS_G = 7
_LANCZOS = np.array(
    [
        0.99999999999980993,
        676.5203681218851,
        -1259.1392167224028,
        771.32342877765313,
        -176.61502916214059,
        12.507343278686905,
        -0.13857109526572012,
        9.9843695780195716e-6,
        1.5056327351493116e-7,
    ]
)
_HALF_LOG_2PI = 0.5 * np.log(2 * np.pi)


class PoleError(ArithmeticError):
    """Evaluation too close to a pole; carries the pole location and residue."""

    def __init__(self, where: complex, residue: float | None, message: str):
        self.where = where
        self.residue = residue
        super().__init__(message)


@lru_cache(maxsize=None)
def bernoulli_even(m: int) -> tuple[float, ...]:
    """B_2, B_4, ..., B_{2m} as floats (exact recurrence in rationals)."""
    B = [Fraction(1)]
    for n in range(1, 2 * m + 1):
        B.append(-sum(comb(n + 1, k) * B[k] for k in range(n)) / (n + 1))
    return tuple(float(B[2 * k]) for k in range(1, m + 1))


def _loggamma_right(z: np.ndarray) -> np.ndarray:
    z = z - 1
    x = np.full_like(z, _LANCZOS[0])
    for i in range(1, len(_LANCZOS)):
        x = x + _LANCZOS[i] / (z + i)
    t = z + _LANCZOS_G + 0.5
    return _HALF_LOG_2PI + (z + 0.5) * np.log(t) - t + np.log(x)


def loggamma(z) -> np.ndarray:
    """log Gamma(z) up to a multiple of 2 pi i (exponentiate before comparing)."""
    z = np.atleast_1d(np.asarray(z, dtype=complex))
    out = np.empty_like(z)
    right = z.real >= 0.5
    out[right] = _loggamma_right(z[right])
    zl = z[~right]
    if zl.size:
        out[~right] = np.log(np.pi) - np.log(np.sin(np.pi * zl)) - _loggamma_right(1 - zl)
    return out


def gamma(z) -> np.ndarray:
    return np.exp(loggamma(z))


def _zeta_em(s: np.ndarray) -> np.ndarray:
    """Euler-Maclaurin zeta for Re s >= 1/2 (s != 1)."""
    if s.size == 0:
        return s.copy()
    big = float(np.max(np.abs(s.imag))) if s.size else 0.0
    N = 24 + int(big)
    m = 24
    n = np.arange(1, N, dtype=float)
    head = np.exp(-np.outer(s, np.log(n))).sum(axis=1)
    NS = np.exp(-s * np.log(N))
    tail = NS * N / (s - 1) + 0.5 * NS
    B = bernoulli_even(m)
    poch = s.copy()  # s (s+1) ... (s+2k-2)
    power = NS / N  # N^{-s-1}
    for k in range(1, m + 1):
        term = B[k - 1] / factorial(2 * k) * poch * power
        tail = tail + term
        poch = poch * (s + 2 * k - 1) * (s + 2 * k)
        power = power / (N * N)
    return head + tail


def zeta(s) -> np.ndarray:
    """Riemann zeta for Re s >= 1/2 directly; elsewhere via the functional equation."""
    s = np.atleast_1d(np.asarray(s, dtype=complex))
    out = np.empty_like(s)
    right = s.real >= 0.5
    out[right] = _zeta_em(s[right])
    sl = s[~right]
    if sl.size:
        # zeta(s) = xi(1-s) / (pi^{-s/2} Gamma(s/2))
        out[~right] = xi(1 - sl) / np.exp(-0.5 * sl * np.log(np.pi) + loggamma(sl / 2))
    return out


def _check_poles(s: np.ndarray) -> None:
    for pole, res in ((0.0, -1.0), (1.0, 1.0)):
        near = np.abs(s - pole) < POLE_RADIUS
        if near.any():
            z = complex(s[near][0])
            raise PoleError(pole, res, f"xi evaluated at {z}, within {POLE_RADIUS} of its pole at {pole} (residue {res:+g})")


def xi(s) -> np.ndarray:
    """Completed zeta xi(s) = pi^{-s/2} Gamma(s/2) zeta(s)."""
    s = np.atleast_1d(np.asarray(s, dtype=complex))
    _check_poles(s)
    t = np.where(s.real >= 0.5, s, 1 - s)
    return np.exp(-0.5 * t * np.log(np.pi) + loggamma(t / 2)) * _zeta_em(t)


def xi_completed(s: complex) -> complex:
    """Scalar xi; raises PoleError near 0 or 1."""
    v = complex(xi(np.array([s]))[0])
    if not np.isfinite(v):
        raise ArithmeticError(f"non-finite xi({s})")
    return v


def log_xi(s) -> np.ndarray:
    """log xi(s) (branch unspecified) computed without overflow."""
    s = np.atleast_1d(np.asarray(s, dtype=complex))
    _check_poles(s)
    t = np.where(s.real >= 0.5, s, 1 - s)
    return -0.5 * t * np.log(np.pi) + loggamma(t / 2) + np.log(_zeta_em(t))
