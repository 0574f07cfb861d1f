"""Plane-wave (Hill matrix) Bloch eigenvalues used to cross-check band edges.

For a potential of period L and Bloch phase theta (0 or pi), eigenfunctions
are expanded as exp(i (theta/L + 2 pi q / L) x), |q| <= N, which turns the
Schrödinger operator into a Hermitian matrix with kinetic diagonal and a
Toeplitz potential part built from the Fourier coefficients of V.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .potentials import PotentialSpec, evaluate, fundamental_period

__all__ = [
    "PERIODIC",
    "ANTIPERIODIC",
    "OracleConfig",
    "BlochSpectrum",
    "LabeledEdge",
    "VerificationReport",
    "potential_fourier",
    "hill_matrix",
    "bloch_eigenvalues",
    "band_edges",
    "expected_phase",
    "verify",
]

PERIODIC = "p"
ANTIPERIODIC = "a"


@dataclass(frozen=True)
class OracleConfig:
    modes: int
    theta: float  # 0 or pi
    period: float

    def __post_init__(self):
        if self.modes < 1:
            raise ValueError("modes must be positive")
        if not (self.period > 0):
            raise ValueError("period must be positive")
        if not (math.isclose(self.theta, 0.0, abs_tol=1e-15) or math.isclose(self.theta, math.pi)):
            raise ValueError("Bloch phase must be 0 or pi")

    @property
    def label(self) -> str:
        return PERIODIC if self.theta < 1.0 else ANTIPERIODIC


@dataclass(frozen=True)
class BlochSpectrum:
    theta: float
    eigenvalues: np.ndarray
    modes: int


def _as_function(spec_or_fn):
    if isinstance(spec_or_fn, PotentialSpec):
        return lambda x: evaluate(spec_or_fn, x)
    return spec_or_fn


def potential_fourier(spec, L: float, M: int) -> np.ndarray:
    """Fourier coefficients V_q, q = -M..M, of a potential with period L.

    ``spec`` is a PotentialSpec or any vectorized callable.  Uses the
    trapezoid rule on 8M points (the FFT of the samples).
    """
    shift = 0.0
    if isinstance(spec, PotentialSpec):
        # a constant offset only moves V_0; add it after the transform
        shift, spec = spec.offset, spec.with_offset(0.0)
    fn = _as_function(spec)
    npts = 8 * max(M, 1)
    x = np.arange(npts) * (L / npts)
    v = np.asarray(fn(x), dtype=float) * np.ones(npts)
    c = np.fft.fft(v) / npts
    q = np.arange(-M, M + 1)
    out = c[q % npts]
    out[M] += shift
    return out


def hill_matrix(coeffs: np.ndarray, modes: int, theta: float, L: float) -> np.ndarray:
    """Hermitian matrix of -d^2/dx^2 + V on the Bloch plane-wave basis.

    ``coeffs`` are V_q for q = -2N..2N.
    """
    N = modes
    q = np.arange(-N, N + 1)
    k = theta / L + 2.0 * np.pi * q / L
    diff = q[:, None] - q[None, :]
    H = coeffs[diff + 2 * N].astype(complex)
    # V real: V_{-q} = conj(V_q); symmetrize exactly
    H = 0.5 * (H + H.conj().T)
    H[np.diag_indices_from(H)] += k * k
    return H


def bloch_eigenvalues(spec, config: OracleConfig) -> BlochSpectrum:
    coeffs = potential_fourier(spec, config.period, 2 * config.modes)
    # the mean of V is an exact spectral shift; keep it off the diagonal
    mean = coeffs[2 * config.modes].real
    coeffs = coeffs.copy()
    coeffs[2 * config.modes] = 0.0
    H = hill_matrix(coeffs, config.modes, config.theta, config.period)
    ev = np.linalg.eigvalsh(H) + mean
    return BlochSpectrum(theta=config.theta, eigenvalues=np.sort(ev), modes=config.modes)


@dataclass(frozen=True)
class LabeledEdge:
    energy: float
    phase: str


def band_edges(spec: PotentialSpec, modes: int = 128, count: int | None = None,
               period: float | None = None) -> list[LabeledEdge]:
    """Lowest ``count`` eigenvalues of the periodic and antiperiodic problems, merged.

    ``count`` defaults to 2j+3: the 2j+1 finite-gap edges plus the first
    (closed) pair above them.
    """
    L = fundamental_period(spec) if period is None else period
    n = 2 * spec.j + 3 if count is None else count
    merged = []
    for theta, label in ((0.0, PERIODIC), (math.pi, ANTIPERIODIC)):
        bs = bloch_eigenvalues(spec, OracleConfig(modes, theta, L))
        merged.extend(LabeledEdge(float(e), label) for e in bs.eigenvalues[:n])
    merged.sort(key=lambda e: e.energy)
    return merged[:n]


def expected_phase(index: int) -> str:
    """Bloch phase of the index-th band edge in Hill ordering p, a, a, p, p, a, a, ..."""
    return PERIODIC if ((index + 1) // 2) % 2 == 0 else ANTIPERIODIC


@dataclass
class EdgeCheck:
    energy: float
    oracle_energy: float
    delta: float
    phase: str
    matched: bool


@dataclass
class VerificationReport:
    family: str
    j: int
    m: float
    offset: float
    modes: int
    tol: float
    edges: list[EdgeCheck] = field(default_factory=list)

    @property
    def max_delta(self) -> float:
        return max((e.delta for e in self.edges), default=0.0)

    @property
    def passed(self) -> bool:
        return bool(self.edges) and all(e.matched for e in self.edges)

    @property
    def phases(self) -> list[str]:
        return [e.phase for e in self.edges]

    @property
    def unmatched(self) -> list[float]:
        return [e.energy for e in self.edges if not e.matched]

    def to_dict(self) -> dict:
        return {
            "family": self.family,
            "j": self.j,
            "m": self.m,
            "offset": self.offset,
            "modes": self.modes,
            "tol": self.tol,
            "passed": self.passed,
            "max_delta": self.max_delta,
            "phases": self.phases,
            "edges": [
                {
                    "energy": e.energy,
                    "oracle_energy": e.oracle_energy,
                    "delta": e.delta,
                    "phase": e.phase,
                    "matched": e.matched,
                }
                for e in self.edges
            ],
        }


def verify(spec: PotentialSpec, spectrum, modes: int = 128, tol: float = 1e-8) -> VerificationReport:
    """Match every analytic band edge to a distinct oracle edge within ``tol``.

    ``spectrum`` is a BandEdgeSpectrum (its solutions get their
    ``bloch_phase`` filled in) or a plain sequence of energies.
    """
    solutions = list(getattr(spectrum, "solutions", []))
    energies = [s.energy for s in solutions] if solutions else [float(e) for e in spectrum]
    edges = band_edges(spec, modes, count=len(energies) + 2)
    report = VerificationReport(spec.family.value, spec.j, spec.m, spec.offset, modes, tol)
    taken: set[int] = set()
    for i, E in enumerate(energies):
        free = [k for k in range(len(edges)) if k not in taken]
        best = min(free, key=lambda k: abs(edges[k].energy - E))
        delta = abs(edges[best].energy - E)
        matched = delta <= tol
        if matched:
            taken.add(best)
        report.edges.append(EdgeCheck(E, edges[best].energy, delta, edges[best].phase, matched))
        if solutions:
            solutions[i].bloch_phase = (
                {"p": "periodic", "a": "antiperiodic"}[edges[best].phase] if matched else "unknown")
    return report
