"""Jacobi elliptic functions and the complete elliptic integral K(m).

Both are computed from the arithmetic-geometric mean (descending Landen)
sequence of the parameter ``m``; no special-function library is used.
Arguments may be scalars or numpy arrays.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

__all__ = [
    "EllipticDomainError",
    "JacobiValues",
    "agm_sequence",
    "complete_K",
    "jacobi",
    "sn",
    "cn",
    "dn",
]

# descending modulus c_n below which the Landen sequence is considered converged
_LANDEN_TOL = 1e-15
_MAX_STEPS = 64


class EllipticDomainError(ValueError):
    """Raised for a parameter outside 0 <= m < 1 or a non-finite argument."""


@dataclass(frozen=True)
class JacobiValues:
    x: np.ndarray | float
    sn: np.ndarray | float
    cn: np.ndarray | float
    dn: np.ndarray | float


def _check_m(m: float) -> float:
    m = float(m)
    if not math.isfinite(m) or m < 0.0 or m >= 1.0:
        raise EllipticDomainError(f"elliptic parameter must satisfy 0 <= m < 1, got {m!r}")
    return m


@lru_cache(maxsize=256)
def agm_sequence(m: float) -> tuple[tuple[float, ...], tuple[float, ...]]:
    """Return the AGM columns ``(a_n, c_n)`` for parameter ``m``.

    Iteration stops once the descending modulus ``c_n`` drops below 1e-15.
    """
    m = _check_m(m)
    a, b, c = 1.0, math.sqrt(1.0 - m), math.sqrt(m)
    a_seq, c_seq = [a], [c]
    for _ in range(_MAX_STEPS):
        if abs(c) < _LANDEN_TOL:
            break
        a, b, c = 0.5 * (a + b), math.sqrt(a * b), 0.5 * (a - b)
        a_seq.append(a)
        c_seq.append(c)
    return tuple(a_seq), tuple(c_seq)


def complete_K(m: float) -> float:
    """Quarter period K(m) = pi / (2 AGM(1, sqrt(1-m)))."""
    a_seq, _ = agm_sequence(_check_m(m))
    return math.pi / (2.0 * a_seq[-1])


def _amplitude(x: np.ndarray, m: float) -> np.ndarray:
    a_seq, c_seq = agm_sequence(m)
    n = len(a_seq) - 1
    phi = (2.0**n) * a_seq[n] * x
    for k in range(n, 0, -1):
        phi = 0.5 * (phi + np.arcsin(c_seq[k] / a_seq[k] * np.sin(phi)))
    return phi


def jacobi(x, m: float) -> JacobiValues:
    """Evaluate sn, cn, dn at ``x`` (scalar or array) for parameter ``m``.

    The argument is first reduced into [-2K, 2K) using the 4K period of sn
    and cn; dn is taken from dn^2 = 1 - m sn^2, which is positive on the
    real line.
    """
    m = _check_m(m)
    scalar = np.ndim(x) == 0
    xa = np.asarray(x, dtype=float)
    if not np.all(np.isfinite(xa)):
        raise EllipticDomainError("jacobi() requires finite real arguments")

    period = 4.0 * complete_K(m)
    xr = xa - period * np.round(xa / period)
    phi = _amplitude(xr, m)
    s = np.sin(phi)
    c = np.cos(phi)
    d = np.sqrt(1.0 - m * s * s)
    if scalar:
        return JacobiValues(float(xa), float(s), float(c), float(d))
    return JacobiValues(xa, s, c, d)


def sn(x, m: float):
    return jacobi(x, m).sn


def cn(x, m: float):
    return jacobi(x, m).cn


def dn(x, m: float):
    return jacobi(x, m).dn
