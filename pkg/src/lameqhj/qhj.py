"""Band-edge solutions from the singularity structure of the quantum momentum function.

With t = sn(x) the logarithmic derivative chi(t) of the wavefunction is
rational: simple poles at the fixed points t = +-1, +-1/sqrt(m) with
residues b1, d1, unit-residue moving poles at the zeros of a polynomial P_n,
and bounded behaviour at infinity.  Each admissible residue choice fixes the
exponents of cn and dn in

    psi(x) = cn(x)**alpha * dn(x)**beta * P_n(sn x),

and the degree n.  The ODE left for P_n is linear in E and preserves
parity, so restricting to the parity-allowed powers of t gives a square
pencil (A0 + E A1) c = 0 whose eigenvalues are the band-edge energies.
"""
from __future__ import annotations

import enum
import itertools
import math
import warnings
from dataclasses import dataclass, field, replace
from fractions import Fraction

import mpmath
import numpy as np
from numpy.polynomial import Polynomial

from .elliptic import jacobi
from .potentials import Family, PotentialSpec, evaluate, fundamental_period

__all__ = [
    "QHJError",
    "Parity",
    "ResidueCandidates",
    "SolutionFamily",
    "ParityPolynomial",
    "ChiExpansion",
    "MatrixPencil",
    "BandEdgeSolution",
    "BandEdgeSpectrum",
    "fixed_residues",
    "riccati_coefficient",
    "residue_quadratic_check",
    "enumerate_families",
    "build_pencil",
    "band_edge_energies",
    "band_edge_eigenpairs",
    "assemble_solution",
    "full_spectrum",
    "zero_census",
    "evaluate_wavefunction",
    "chi_expansion",
    "schrodinger_residual",
]

QUARTER = Fraction(1, 4)
THREE_QUARTERS = Fraction(3, 4)

# tolerances for internal consistency of the cleared polynomial identity
_POLE_TOL = 1e-10
_ROW_TOL = 1e-10
_IMAG_TOL = 1e-8


class QHJError(RuntimeError):
    """Internal inconsistency: bookkeeping, complex energies, or count mismatch."""


class Parity(str, enum.Enum):
    EVEN = "even"
    ODD = "odd"

    @classmethod
    def of(cls, n: int) -> "Parity":
        return cls.EVEN if n % 2 == 0 else cls.ODD


@dataclass(frozen=True)
class ResidueCandidates:
    b1: tuple[Fraction, Fraction]
    d1: tuple[Fraction, Fraction]


@dataclass(frozen=True)
class SolutionFamily:
    set_id: int
    b1: Fraction
    d1: Fraction
    lambda1: int
    alpha: int
    beta: int
    n: int
    parity: Parity
    expected_count: int
    j: int  # parameter value the family was enumerated with (may be the reflected one)

    @property
    def form(self) -> str:
        parts = []
        if self.alpha:
            parts.append("cn x" if self.alpha == 1 else f"cn^{self.alpha} x")
        if self.beta > 0:
            parts.append("dn x" if self.beta == 1 else f"dn^{self.beta} x")
        parts.append(f"P_{self.n}(sn x)")
        text = " * ".join(parts)
        if self.beta < 0:
            text += " / dn x" if self.beta == -1 else f" / dn^{-self.beta} x"
        return text


def _two_sum(a, b):
    s = a + b
    z = s - a
    return s, (a - (s - z)) + (b - z)


def _split(a):
    c = 134217729.0 * a  # 2**27 + 1
    hi = c - (c - a)
    return hi, a - hi


def _two_prod(a, b):
    p = a * b
    ah, al = _split(a)
    bh, bl = _split(b)
    return p, al * bl - (((p - ah * bh) - al * bh) - ah * bl)


def compensated_horner(coeffs_desc, t):
    """Horner evaluation carrying the rounding error of every step.

    Accurate to about twice working precision, which matters because band-edge
    polynomials of high degree cancel heavily on [-1, 1].
    """
    t = np.asarray(t, dtype=float)
    s = np.full_like(t, coeffs_desc[0])
    c = np.zeros_like(t)
    for a in coeffs_desc[1:]:
        p, pi = _two_prod(s, t)
        s, sigma = _two_sum(p, a)
        c = c * t + (pi + sigma)
    out = s + c
    return float(out) if out.ndim == 0 else out


@dataclass(frozen=True)
class ParityPolynomial:
    """P_n with only the powers t^n, t^(n-2), ... present.

    ``coeffs[i]`` multiplies t^(n - 2 i).
    """

    parity: Parity
    degree: int
    coeffs: tuple[float, ...]

    def __post_init__(self):
        if len(self.coeffs) != self.degree // 2 + 1:
            raise ValueError("coefficient count does not match degree")

    @property
    def powers(self) -> list[int]:
        return list(range(self.degree, -1, -2))

    def dense(self) -> np.ndarray:
        """Ascending coefficient array of length degree + 1."""
        out = np.zeros(self.degree + 1)
        for p, c in zip(self.powers, self.coeffs):
            out[p] = c
        return out

    def as_polynomial(self) -> Polynomial:
        return Polynomial(self.dense())

    def __call__(self, t):
        if np.iscomplexobj(t):
            return self.as_polynomial()(t)
        return compensated_horner(self.dense()[::-1], t)

    @property
    def actual_degree(self) -> int:
        scale = max(abs(c) for c in self.coeffs)
        for p, c in zip(self.powers, self.coeffs):
            if abs(c) > 1e-12 * scale:
                return p
        return 0

    def roots(self) -> np.ndarray:
        return self.as_polynomial().trim(1e-14).roots()


@dataclass(frozen=True)
class MatrixPencil:
    A0: np.ndarray
    A1: np.ndarray
    family: SolutionFamily
    powers: tuple[int, ...]
    consistency_residual: float  # largest discarded row entry, relative
    pole_residual: float  # cleared zero-order coefficient at the fixed poles, relative
    exact: tuple | None = None  # A0 in rationals, A1 is the identity

    @property
    def dim(self) -> int:
        return self.A0.shape[0]


@dataclass
class BandEdgeSolution:
    energy: float
    family: SolutionFamily
    poly: ParityPolynomial
    spec: PotentialSpec
    raw_energy: float
    total_zeros: int = -1
    real_zeros_in_period: int = -1
    bloch_phase: str = "unknown"
    degree_deficient: bool = False

    @property
    def alpha(self) -> int:
        return self.family.alpha

    @property
    def beta(self) -> int:
        return self.family.beta

    @property
    def set_id(self) -> int:
        return self.family.set_id

    def __call__(self, x):
        return evaluate_wavefunction(self, x)


@dataclass
class BandEdgeSpectrum:
    spec: PotentialSpec
    solutions: list[BandEdgeSolution] = field(default_factory=list)

    @property
    def energies(self) -> np.ndarray:
        return np.array([s.energy for s in self.solutions])

    def __len__(self) -> int:
        return len(self.solutions)

    def __iter__(self):
        return iter(self.solutions)

    def __getitem__(self, i) -> BandEdgeSolution:
        return self.solutions[i]


# ---------------------------------------------------------------------------
# residues and the Riccati equation for chi


def _d1_options(family: Family, j: int) -> tuple[Fraction, Fraction]:
    if family is Family.LAME:
        return (THREE_QUARTERS, QUARTER)
    return (Fraction(3 + 2 * j, 4), Fraction(1 - 2 * j, 4))


def fixed_residues(spec: PotentialSpec, *, j: int | None = None) -> ResidueCandidates:
    """The two admissible residues at t = 1 (b1) and at t = 1/sqrt(m) (d1)."""
    jj = spec.j if j is None else j
    return ResidueCandidates(b1=(THREE_QUARTERS, QUARTER), d1=_d1_options(spec.family, jj))


def _R(m: float) -> Polynomial:
    # (1 - t^2)(1 - m t^2) = (dt/dx)^2
    return Polynomial([1.0, 0.0, -(1.0 + m), 0.0, m])


def riccati_coefficient(spec: PotentialSpec, energy: float, t):
    """W(t) in chi^2 + chi' + W(t) = 0 for the offset-free potential.

    ``t`` may be complex.
    """
    m = spec.m
    s = spec.strength
    t = np.asarray(t)
    R = _R(m)
    r, r1, r2 = R(t), R.deriv(1)(t), R.deriv(2)(t)
    v = s * m * t * t
    if spec.family is Family.ASSOCIATED:
        v = v + s * m * (1 - t * t) / (1 - m * t * t)
    return (energy - v) / r - r2 / (4 * r) + 3 * r1 * r1 / (16 * r * r)


def _pole_location(spec: PotentialSpec, pole: str) -> float:
    key = pole.replace(" ", "").lower()
    if key.startswith("t="):
        key = key[2:]
    table = {
        "1": 1.0,
        "-1": -1.0,
        "1/sqrt(m)": 1.0 / math.sqrt(spec.m),
        "-1/sqrt(m)": -1.0 / math.sqrt(spec.m),
    }
    try:
        return table[key]
    except KeyError:
        raise ValueError(f"unknown fixed pole {pole!r}") from None


def residue_quadratic_check(spec: PotentialSpec, pole: str = "t=1") -> tuple[float, float]:
    """Residues at a fixed pole from the leading Laurent order, numerically.

    Substituting chi = r/(t - t0) + a0 + ... into the Riccati equation, the
    (t - t0)^-2 order gives r^2 - r + c = 0, where c is the double-pole
    coefficient of W.  c is extracted from symmetric evaluations of
    (t - t0)^2 W(t) with one Richardson step.  Returns the roots, larger first.
    """
    t0 = _pole_location(spec, pole)

    def sym(eps):
        return 0.5 * (
            eps * eps * riccati_coefficient(spec, 0.0, t0 + eps)
            + eps * eps * riccati_coefficient(spec, 0.0, t0 - eps)
        )

    eps = 1e-3
    c = float((4.0 * sym(eps / 2) - sym(eps)) / 3.0)
    disc = 1.0 - 4.0 * c
    if disc < 0:
        raise QHJError(f"negative discriminant {disc:g} in the residue quadratic at {pole}")
    root = math.sqrt(disc)
    return (0.5 * (1.0 + root), 0.5 * (1.0 - root))


# ---------------------------------------------------------------------------
# families


def _set_id(family: Family, j: int, b1: Fraction, d1: Fraction) -> int:
    if family is Family.LAME:
        return {(QUARTER, QUARTER): 1, (THREE_QUARTERS, QUARTER): 2,
                (QUARTER, THREE_QUARTERS): 3, (THREE_QUARTERS, THREE_QUARTERS): 4}[(b1, d1)]
    low = Fraction(1 - 2 * j, 4)
    if d1 == low:
        return 1 if b1 == THREE_QUARTERS else 2
    return 3 if b1 == QUARTER else 4


def _exponent(residue: Fraction) -> int:
    e = (4 * residue - 1) / 2
    if e.denominator != 1:
        raise QHJError(f"residue {residue} gives a non-integer exponent")
    return int(e)


def _all_families(spec: PotentialSpec, reflect: bool) -> list[SolutionFamily]:
    jp = -spec.j - 1 if reflect else spec.j
    cands = fixed_residues(spec, j=jp)
    out = []
    for lam in (jp + 1, -jp):
        for b1, d1 in itertools.product(cands.b1, cands.d1):
            n = lam - 2 * b1 - 2 * d1
            if n.denominator != 1:
                raise QHJError(f"non-integer degree {n} for b1={b1}, d1={d1}")
            n = int(n)
            out.append(SolutionFamily(
                set_id=_set_id(spec.family, spec.j, b1, d1),
                b1=b1,
                d1=d1,
                lambda1=lam,
                alpha=_exponent(b1),
                beta=_exponent(d1),
                n=n,
                parity=Parity.of(n),
                expected_count=n // 2 + 1 if n >= 0 else 0,
                j=jp,
            ))
    return out


def enumerate_families(spec: PotentialSpec, *, reflect: bool = False) -> list[SolutionFamily]:
    """Residue sets with a non-negative polynomial degree, ordered by set id.

    Both branches lambda1 = j+1 and lambda1 = -j of the large-t behaviour
    are tried; sets with n < 0 are dropped.  With ``reflect=True`` the
    enumeration runs on the equivalent parameter -j-1.
    """
    fams = [f for f in _all_families(spec, reflect) if f.n >= 0]
    fams.sort(key=lambda f: f.set_id)
    return fams


def all_residue_sets(spec: PotentialSpec, *, reflect: bool = False) -> list[SolutionFamily]:
    """Every (lambda1, b1, d1) combination, including the discarded n < 0 ones."""
    return _all_families(spec, reflect)


# ---------------------------------------------------------------------------
# pencil


def _cleared_operator(family: SolutionFamily, spec: PotentialSpec):
    """Coefficient polynomials of  R P'' + S P' + q P + E P = 0  and the pole residual.

    Obtained by inserting psi = (1-t^2)^(alpha/2) (1-m t^2)^(beta/2) P(t)
    into  R psi'' + R'/2 psi' + (E - V) psi = 0, multiplying by R and
    dividing the zero-order coefficient by R.  The division is exact only
    when the exponents solve the indicial equations at all four fixed poles.
    """
    m = spec.m
    s = float(spec.strength)
    a = family.alpha / 2.0
    b = family.beta / 2.0
    t = Polynomial([0.0, 1.0])
    one = Polynomial([1.0])
    u1 = one - t * t
    um = one - m * t * t
    R = u1 * um
    dR = R.deriv()

    U = -2 * a * t * um - 2 * b * m * t * u1  # R * (log w)'
    R2du = -2 * a * (one + t * t) * um**2 - 2 * b * m * (one + m * t * t) * u1**2  # R^2 * (log w)''
    N = R2du + U * U + 0.5 * dR * U
    C0 = N - s * m * t * t * R
    if spec.family is Family.ASSOCIATED:
        C0 = C0 - s * m * u1**2

    q, rem = divmod(C0, R)
    scale = max(1.0, float(np.max(np.abs(C0.coef))))
    probes = [1.0, -1.0, 1.0 / math.sqrt(m), -1.0 / math.sqrt(m)]
    pole_res = max(abs(C0(p)) for p in probes) / scale
    pole_res = max(pole_res, float(np.max(np.abs(rem.coef))) / scale)
    S = 2 * U + 0.5 * dR
    return R, S, q, pole_res


def _exact_operator_matrix(family: SolutionFamily, spec: PotentialSpec):
    """Tridiagonal coefficient matrix of the cleared P_n equation in exact rationals.

    With A = (alpha + beta)/2 the operator R P'' + S P' + q P maps t^k to
        k(k-1) t^(k-2)
        + [-(1+m) k(k-1) - s1 k + q0] t^k
        + [m k(k-1) + s3 k + q2] t^(k+2),
    where s1 = 4(a + b m) + 1 + m, s3 = m(4A + 2), q0 = -2(a + b m) [- j(j+1) m],
    q2 = m(4A^2 + 2A - j(j+1)).  The bracket is the float m converted exactly.
    """
    m = Fraction(spec.m)
    s = spec.strength
    a = Fraction(family.alpha, 2)
    b = Fraction(family.beta, 2)
    A = a + b
    s1 = 4 * (a + b * m) + 1 + m
    s3 = m * (4 * A + 2)
    q0 = -2 * (a + b * m) - (s * m if spec.family is Family.ASSOCIATED else 0)
    q2 = m * (4 * A * A + 2 * A - s)
    powers = list(range(family.n, -1, -2))
    index = {p: i for i, p in enumerate(powers)}
    dim = len(powers)
    M = [[Fraction(0)] * dim for _ in range(dim)]
    for k in powers:
        col = index[k]
        M[col][col] = -(1 + m) * k * (k - 1) - s1 * k + q0
        if k - 2 in index:
            M[index[k - 2]][col] = Fraction(k * (k - 1))
        if k + 2 in index:
            M[index[k + 2]][col] = m * k * (k - 1) + s3 * k + q2
    top = m * family.n * (family.n - 1) + s3 * family.n + q2
    return M, top


def build_pencil(family: SolutionFamily, spec: PotentialSpec) -> MatrixPencil:
    """Square pencil for the parity-allowed coefficients of P_n (offset-free energies).

    The entries come from the exact closed form; the same matrix is rebuilt
    by mechanically clearing denominators in floating point, and the two
    must agree, the double poles must cancel and every discarded row
    (wrong parity, or the t^(n+2) row) must vanish.
    """
    if family.n < 0:
        raise QHJError(f"family {family.set_id} has negative degree {family.n}")
    R, S, q, pole_res = _cleared_operator(family, spec)
    if pole_res > _POLE_TOL:
        raise QHJError(
            f"double poles do not cancel for set {family.set_id} (residual {pole_res:.3e})")

    n = family.n
    full = np.zeros((n + 3, n + 1))
    for k in range(n + 1):
        image = q * Polynomial.basis(k)
        if k >= 1:
            image = image + k * S * Polynomial.basis(k - 1)
        if k >= 2:
            image = image + k * (k - 1) * R * Polynomial.basis(k - 2)
        c = image.coef
        full[: len(c), k] = c

    powers = tuple(range(n, -1, -2))
    cols = list(powers)
    cleared = full[np.ix_(cols, cols)]
    others = [i for i in range(n + 3) if i not in powers]
    scale = max(1.0, float(np.max(np.abs(cleared))))
    row_res = float(np.max(np.abs(full[np.ix_(others, cols)]))) / scale if others else 0.0
    if row_res > _ROW_TOL:
        raise QHJError(
            f"cleared identity is over-determined for set {family.set_id}: "
            f"discarded rows residual {row_res:.3e}")

    exact, top = _exact_operator_matrix(family, spec)
    if top != 0:
        raise QHJError(f"degree n = {n} does not match the behaviour at infinity")
    A0 = np.array([[float(v) for v in row] for row in exact])
    if np.max(np.abs(A0 - cleared)) > 1e-12 * scale:
        raise QHJError(f"cleared pencil disagrees with the closed form for set {family.set_id}")
    A1 = np.eye(len(powers))
    if A0.shape[0] != A0.shape[1] or A0.shape[0] != family.n // 2 + 1:
        raise QHJError("pencil is not square of dimension floor(n/2)+1")
    return MatrixPencil(A0=A0, A1=A1, family=family, powers=powers,
                        consistency_residual=row_res, pole_residual=pole_res,
                        exact=tuple(tuple(r) for r in exact))


def band_edge_energies(pencil: MatrixPencil) -> np.ndarray:
    """Roots E of det(A0 + E A1) = 0, ascending."""
    A0, A1 = pencil.A0, pencil.A1
    d = pencil.dim
    if d == 1:
        return np.array([-A0[0, 0] / A1[0, 0]])
    if d == 2:
        # det(A0 + E A1) = a E^2 + b E + c
        a = A1[0, 0] * A1[1, 1] - A1[0, 1] * A1[1, 0]
        b = (A0[0, 0] * A1[1, 1] + A1[0, 0] * A0[1, 1]
             - A0[0, 1] * A1[1, 0] - A1[0, 1] * A0[1, 0])
        c = A0[0, 0] * A0[1, 1] - A0[0, 1] * A0[1, 0]
        disc = b * b - 4 * a * c
        if disc < 0:
            if math.sqrt(-disc) / (2 * abs(a)) > _IMAG_TOL:
                raise QHJError(f"complex band-edge energies (discriminant {disc:.3e})")
            disc = 0.0
        sq = math.sqrt(disc)
        qq = -0.5 * (b + math.copysign(sq, b)) if b != 0 else -0.5 * sq
        if qq == 0.0:
            roots = [0.0, 0.0]
        else:
            roots = [qq / a, c / qq]
        return np.sort(np.array(roots))
    ev = np.linalg.eigvals(-np.linalg.solve(A1, A0))
    if np.max(np.abs(ev.imag)) > _IMAG_TOL:
        raise QHJError(f"complex band-edge energies: {ev}")
    return np.sort(ev.real)


def _null_vector(M: np.ndarray) -> np.ndarray:
    _, _, vh = np.linalg.svd(M)
    return vh[-1].real


def _refine(exact, energy: float, vec: np.ndarray, steps: int = 4) -> tuple[float, np.ndarray]:
    # Newton on (A0 + E) c = 0, c_k = 1 in extended precision; the pencil is
    # far from normal for large j and the double-precision eigenvectors lose
    # digits that the band-edge polynomials then amplify.
    dim = len(exact)
    k = int(np.argmax(np.abs(vec)))
    with mpmath.workdps(40):
        A = mpmath.matrix([[mpmath.mpf(v.numerator) / v.denominator for v in row] for row in exact])
        c = mpmath.matrix([mpmath.mpf(float(v)) / float(vec[k]) for v in vec])
        E = mpmath.mpf(float(energy))
        for _ in range(steps):
            J = mpmath.zeros(dim + 1, dim + 1)
            F = mpmath.zeros(dim + 1, 1)
            r = A * c + E * c
            for i in range(dim):
                F[i] = r[i]
                J[i, dim] = c[i]
                for jj in range(dim):
                    J[i, jj] = A[i, jj] + (E if i == jj else 0)
            J[dim, k] = 1
            F[dim] = c[k] - 1
            delta = mpmath.lu_solve(J, -F)
            for i in range(dim):
                c[i] += delta[i]
            E += delta[dim]
        return float(E), np.array([float(v) for v in c])


def band_edge_eigenpairs(pencil: MatrixPencil, *, refine: bool = True) -> list[tuple[float, np.ndarray]]:
    """Eigenpairs (E, c) of the pencil, ascending in E.

    ``c`` holds the coefficients of t^n, t^(n-2), ...; with ``refine`` each
    pair is polished against the exact pencil.
    """
    out = []
    for E in band_edge_energies(pencil):
        vec = _null_vector(pencil.A0 + E * pencil.A1)
        if refine and pencil.exact is not None:
            E, vec = _refine(pencil.exact, E, vec)
        out.append((float(E), vec))
    out.sort(key=lambda p: p[0])
    return out


# ---------------------------------------------------------------------------
# solutions


def _normalize(coeffs) -> tuple[float, ...]:
    c = np.asarray(coeffs, dtype=float)
    if not np.any(c):
        raise QHJError("zero eigenvector")
    k = int(np.argmax(np.abs(c)))
    c = c / c[k]
    c[c == 0.0] = 0.0  # drop negative zeros
    return tuple(float(v) for v in c)


def assemble_solution(family: SolutionFamily, energy: float, coeffs, spec: PotentialSpec,
                      *, census: bool = True) -> BandEdgeSolution:
    """Wrap a pencil eigenpair as a band-edge solution.

    ``energy`` is offset-free; the stored ``energy`` has ``spec.offset`` added.
    The polynomial is scaled so that its largest-magnitude coefficient is 1.
    """
    poly = ParityPolynomial(family.parity, family.n, _normalize(coeffs))
    sol = BandEdgeSolution(
        energy=float(energy) + spec.offset,
        family=family,
        poly=poly,
        spec=spec,
        raw_energy=float(energy),
    )
    if poly.actual_degree < family.n:
        sol.degree_deficient = True
        warnings.warn(
            f"set {family.set_id}: polynomial degree {poly.actual_degree} < n = {family.n}",
            stacklevel=2)
    if census:
        sol.total_zeros, sol.real_zeros_in_period = zero_census(sol, spec)
    return sol


def full_spectrum(spec: PotentialSpec, *, reflect: bool = False,
                  census: bool = True) -> BandEdgeSpectrum:
    """All 2j+1 band-edge solutions, ascending in energy (offset applied)."""
    sols = []
    for fam in enumerate_families(spec, reflect=reflect):
        pairs = band_edge_eigenpairs(build_pencil(fam, spec))
        if len(pairs) != fam.expected_count:
            raise QHJError(
                f"set {fam.set_id}: {len(pairs)} solutions, expected {fam.expected_count}")
        sols.extend(assemble_solution(fam, E, c, spec, census=census) for E, c in pairs)
    if len(sols) != 2 * spec.j + 1:
        raise QHJError(f"{len(sols)} band edges found, expected {2 * spec.j + 1}")
    sols.sort(key=lambda s: (s.energy, s.set_id))
    return BandEdgeSpectrum(spec=spec, solutions=sols)


def evaluate_wavefunction(solution: BandEdgeSolution, x):
    """psi(x) = cn^alpha dn^beta P_n(sn x); dn > 0 on the real line."""
    v = jacobi(x, solution.spec.m)
    return v.cn**solution.alpha * v.dn**float(solution.beta) * solution.poly(v.sn)


def zero_census(solution: BandEdgeSolution, spec: PotentialSpec,
                samples: int = 4096) -> tuple[int, int]:
    """(total zeros, real zeros in one period).

    The total counts the roots of P_n (complex included) plus one for a cn
    factor.  Real zeros are sign changes over a grid offset by half a step,
    so that zeros sitting at x = 0 or x = K are not hit exactly.
    """
    total = solution.poly.actual_degree + (1 if solution.alpha == 1 else 0)
    L = fundamental_period(spec)
    h = L / samples
    x = (np.arange(samples + 1) + 0.5) * h
    psi = np.asarray(evaluate_wavefunction(solution, x))
    sign = np.sign(psi)
    real = int(np.count_nonzero(sign[1:] * sign[:-1] < 0))
    return total, real


# 8th-order central stencil for the second derivative
_D2_STENCIL = np.array([-1 / 560, 8 / 315, -1 / 5, 8 / 5, -205 / 72, 8 / 5, -1 / 5, 8 / 315, -1 / 560])


def schrodinger_residual(solution: BandEdgeSolution, points: int = 512,
                         step_divisions: int = 2048) -> float:
    """max |-psi'' + (V - E) psi| / max |psi| over ``points`` grid points of one period.

    psi'' uses a central difference with step L / step_divisions.
    """
    spec = solution.spec
    L = fundamental_period(spec)
    h = L / step_divisions
    x = np.arange(points) * (L / points)
    offsets = np.arange(-4, 5) * h
    samples = np.asarray(evaluate_wavefunction(solution, x[:, None] + offsets[None, :]))
    psi = samples[:, 4]
    d2 = samples @ _D2_STENCIL / (h * h)
    V = np.asarray(evaluate(spec, x))
    res = -d2 + (V - solution.energy) * psi
    return float(np.max(np.abs(res)) / np.max(np.abs(psi)))


@dataclass(frozen=True)
class ChiExpansion:
    """chi(t) = sum of fixed-pole terms + P'/P + constant."""

    b1: Fraction
    b1p: Fraction
    d1: Fraction
    d1p: Fraction
    poly: ParityPolynomial
    constant: float
    m: float

    def __call__(self, t):
        t = np.asarray(t)
        w = 1.0 / math.sqrt(self.m)
        P = self.poly.as_polynomial()
        return (float(self.b1) / (t - 1) + float(self.b1p) / (t + 1)
                + float(self.d1) / (t - w) + float(self.d1p) / (t + w)
                + P.deriv()(t) / P(t) + self.constant)

    def derivative(self, t):
        t = np.asarray(t)
        w = 1.0 / math.sqrt(self.m)
        P = self.poly.as_polynomial()
        p, p1, p2 = P(t), P.deriv()(t), P.deriv(2)(t)
        return (-float(self.b1) / (t - 1) ** 2 - float(self.b1p) / (t + 1) ** 2
                - float(self.d1) / (t - w) ** 2 - float(self.d1p) / (t + w) ** 2
                + p2 / p - (p1 / p) ** 2)


def chi_expansion(solution: BandEdgeSolution) -> ChiExpansion:
    fam = solution.family
    return ChiExpansion(b1=fam.b1, b1p=fam.b1, d1=fam.d1, d1p=fam.d1,
                        poly=solution.poly, constant=0.0, m=solution.spec.m)


def with_offset(spectrum: BandEdgeSpectrum, offset: float) -> BandEdgeSpectrum:
    """Re-label a spectrum for a shifted potential; polynomials are untouched."""
    spec = spectrum.spec.with_offset(offset)
    sols = [replace(s, spec=spec, energy=s.raw_energy + spec.offset) for s in spectrum]
    return BandEdgeSpectrum(spec=spec, solutions=sols)
