import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from lameqhj import oracle, qhj
from lameqhj.potentials import PotentialSpec, fundamental_period, susy_offset

# mean of 6 m sn^2 over a period at m = 0.5, Simpson rule on 100001 points
LAME_J2_MEAN = 1.6291602568666095


def test_config_validation():
    with pytest.raises(ValueError):
        oracle.OracleConfig(0, 0.0, 1.0)
    with pytest.raises(ValueError):
        oracle.OracleConfig(8, 1.0, 1.0)
    with pytest.raises(ValueError):
        oracle.OracleConfig(8, 0.0, -1.0)
    assert oracle.OracleConfig(8, math.pi, 1.0).label == "a"


def test_fourier_mean():
    spec = PotentialSpec("lame", 2, 0.5)
    c = oracle.potential_fourier(spec, fundamental_period(spec), 16)
    assert c[16].real == pytest.approx(LAME_J2_MEAN, abs=1e-12)


def test_fourier_of_cosine():
    L = 2.0
    c = oracle.potential_fourier(lambda x: 3 * np.cos(2 * np.pi * x / L), L, 4)
    np.testing.assert_allclose(c[[3, 5]], [1.5, 1.5], atol=1e-14)
    assert np.max(np.abs(np.delete(c, [3, 5]))) < 1e-14


def test_free_particle():
    L = 3.0
    for theta, k0 in ((0.0, 0.0), (math.pi, math.pi / L)):
        bs = oracle.bloch_eigenvalues(lambda x: np.zeros_like(x), oracle.OracleConfig(10, theta, L))
        q = np.arange(-10, 11)
        np.testing.assert_allclose(bs.eigenvalues, np.sort((k0 + 2 * np.pi * q / L) ** 2), atol=1e-12)


def test_hermitian_by_construction():
    spec = PotentialSpec("associated", 3, 0.8)
    L = fundamental_period(spec)
    c = oracle.potential_fourier(spec, L, 64)
    H = oracle.hill_matrix(c, 32, math.pi, L)
    assert np.max(np.abs(H - H.conj().T)) == 0.0


def test_lame_j1_edges():
    m = 0.3
    edges = oracle.band_edges(PotentialSpec("lame", 1, m), modes=64)
    np.testing.assert_allclose([e.energy for e in edges[:3]], [m, 1, 1 + m], atol=1e-12)


def test_associated_j1_edges_and_phases():
    spec = PotentialSpec("associated", 1, 0.5)
    spec = spec.with_offset(susy_offset(spec).value)
    edges = oracle.band_edges(spec, modes=128, count=3)
    np.testing.assert_allclose([e.energy for e in edges], [0, 2.8284271247, 2.9142135624], atol=1e-9)
    assert [e.phase for e in edges] == ["p", "a", "a"]


def test_expected_phase_pattern():
    assert [oracle.expected_phase(i) for i in range(9)] == list("paappaapp")


def test_finite_gap_closure():
    edges = oracle.band_edges(PotentialSpec("lame", 2, 0.5), modes=128, count=9)
    assert abs(edges[5].energy - edges[6].energy) < 1e-6
    assert abs(edges[7].energy - edges[8].energy) < 1e-6
    assert edges[4].energy < edges[5].energy - 1e-3


@pytest.mark.parametrize("family,j", [("lame", 2), ("lame", 4), ("associated", 2)])
def test_converged_lowest_edges(family, j):
    spec = PotentialSpec(family, j, 0.9)
    L = fundamental_period(spec)
    lows = {}
    for N in (32, 64, 128):
        for theta in (0.0, math.pi):
            lows[N, theta] = oracle.bloch_eigenvalues(spec, oracle.OracleConfig(N, theta, L)).eigenvalues[:2 * j + 1]
    for theta in (0.0, math.pi):
        for N in (32, 64):
            change = lows[N, theta] - lows[2 * N, theta]
            assert np.max(np.abs(change)) < 1e-9
            # variational: a larger basis never raises an eigenvalue beyond roundoff
            assert np.all(change > -1e-10)


def test_coarse_basis_is_variational():
    spec = PotentialSpec("lame", 3, 0.95)
    L = fundamental_period(spec)
    prev = None
    for N in (2, 3, 4, 6, 8):
        ev = oracle.bloch_eigenvalues(spec, oracle.OracleConfig(N, 0.0, L)).eigenvalues[:4]
        if prev is not None:
            assert np.all(ev <= prev + 1e-12)
        prev = ev


@given(c=st.floats(-100, 100, allow_nan=False), m=st.floats(0.05, 0.95),
       family=st.sampled_from(["lame", "associated"]))
@settings(max_examples=15, deadline=None)
def test_offset_equivariance(c, m, family):
    spec = PotentialSpec(family, 2, m)
    a = oracle.band_edges(spec, modes=32)
    b = oracle.band_edges(spec.with_offset(c), modes=32)
    assert [e.phase for e in a] == [e.phase for e in b]
    np.testing.assert_allclose([e.energy for e in b], [e.energy + c for e in a], rtol=0, atol=1e-12)


@pytest.mark.parametrize("m", [0.1, 0.5, 0.9])
def test_verify_lame_j3(m):
    spec = PotentialSpec("lame", 3, m)
    sp = qhj.full_spectrum(spec, census=False)
    report = oracle.verify(spec, sp, modes=128, tol=1e-8)
    assert report.passed and len(report.edges) == 7
    assert report.phases == [oracle.expected_phase(i) for i in range(7)]
    assert [s.bloch_phase for s in sp] == [
        {"p": "periodic", "a": "antiperiodic"}[p] for p in report.phases]


def test_verify_accepts_plain_energies():
    spec = PotentialSpec("lame", 2, 0.5)
    E = qhj.full_spectrum(spec, census=False).energies
    report = oracle.verify(spec, list(E))
    assert report.passed and report.max_delta < 1e-8


def test_verify_rejects_perturbed_energy():
    spec = PotentialSpec("lame", 2, 0.5)
    E = list(qhj.full_spectrum(spec, census=False).energies)
    E[2] += 1e-3
    report = oracle.verify(spec, E)
    assert not report.passed
    assert report.unmatched == [E[2]]


def test_truncated_basis_fails_tight_tolerance():
    spec = PotentialSpec("lame", 2, 0.5)
    sp = qhj.full_spectrum(spec, census=False)
    assert not oracle.verify(spec, sp, modes=4, tol=1e-12).passed
    assert oracle.verify(spec, sp, modes=8, tol=1e-12).passed


def test_report_dict_roundtrip():
    spec = PotentialSpec("associated", 1, 0.5)
    d = oracle.verify(spec, qhj.full_spectrum(spec, census=False)).to_dict()
    assert d["passed"] is True and d["phases"] == ["p", "a", "a"]
    assert len(d["edges"]) == 3
