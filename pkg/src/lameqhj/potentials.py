"""Lamé and associated Lamé (a = b = j) periodic potentials."""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass, replace

import numpy as np

from .elliptic import complete_K, jacobi

__all__ = [
    "Family",
    "PotentialSpec",
    "SusyOffset",
    "evaluate",
    "susy_offset",
    "fundamental_period",
]


class Family(str, enum.Enum):
    LAME = "lame"
    ASSOCIATED = "associated"

    @classmethod
    def parse(cls, value: "str | Family") -> "Family":
        if isinstance(value, Family):
            return value
        key = str(value).strip().lower().replace("_", "-")
        aliases = {
            "lame": cls.LAME,
            "associated": cls.ASSOCIATED,
            "associated-lame": cls.ASSOCIATED,
            "assoc": cls.ASSOCIATED,
        }
        try:
            return aliases[key]
        except KeyError:
            raise ValueError(f"unknown potential family {value!r}") from None


@dataclass(frozen=True)
class PotentialSpec:
    """A potential j(j+1) m [sn^2 (+ cn^2/dn^2)] + offset.

    ``j`` is the positive integer strength parameter, ``m`` the elliptic
    parameter with 0 < m < 1.
    """

    family: Family
    j: int
    m: float
    offset: float = 0.0

    def __post_init__(self):
        object.__setattr__(self, "family", Family.parse(self.family))
        if isinstance(self.j, bool) or int(self.j) != self.j:
            raise ValueError(f"j must be an integer, got {self.j!r}")
        object.__setattr__(self, "j", int(self.j))
        if self.j < 1:
            raise ValueError("j must be ≥ 1")
        m = float(self.m)
        if not (0.0 < m < 1.0):
            raise ValueError(f"m must satisfy 0 < m < 1, got {self.m!r}")
        object.__setattr__(self, "m", m)
        object.__setattr__(self, "offset", float(self.offset))

    @property
    def strength(self) -> int:
        """The coefficient j(j+1); unchanged under j -> -j-1."""
        return self.j * (self.j + 1)

    def with_offset(self, offset: float) -> "PotentialSpec":
        return replace(self, offset=float(offset))


def _shape(family: Family, x, m: float):
    v = jacobi(x, m)
    if family is Family.LAME:
        return v.sn**2
    return v.sn**2 + (v.cn / v.dn) ** 2


def evaluate(spec: PotentialSpec, x, *, strength: int | None = None):
    """Potential value(s) at ``x``.

    ``strength`` overrides the coefficient j(j+1); it exists so the
    j -> -j-1 reflection can be checked by direct substitution.
    """
    coeff = spec.strength if strength is None else strength
    return coeff * spec.m * _shape(spec.family, x, spec.m) + spec.offset


@dataclass(frozen=True)
class SusyOffset:
    value: float
    published: bool


def susy_offset(spec: PotentialSpec) -> SusyOffset:
    """Additive constant that moves the lowest band edge to zero.

    Only the Lamé j=2 and associated j=1 constants have closed forms here;
    any other spec gets 0 with ``published=False``.
    """
    m = spec.m
    if spec.family is Family.LAME and spec.j == 2:
        delta = math.sqrt(1.0 - m + m * m)
        return SusyOffset(-2.0 * m - 2.0 + 2.0 * delta, True)
    if spec.family is Family.ASSOCIATED and spec.j == 1:
        return SusyOffset(-2.0 - m + 2.0 * math.sqrt(1.0 - m), True)
    return SusyOffset(0.0, False)


def fundamental_period(spec: PotentialSpec) -> float:
    # sn^2 has period 2K; sn^2 + cn^2/dn^2 is invariant under the K shift
    K = complete_K(spec.m)
    return 2.0 * K if spec.family is Family.LAME else K


def sample(spec: PotentialSpec, n: int, period: float | None = None) -> tuple[np.ndarray, np.ndarray]:
    """``n`` equispaced samples of V over one period starting at x=0."""
    L = fundamental_period(spec) if period is None else period
    x = np.arange(n) * (L / n)
    return x, np.asarray(evaluate(spec, x))
