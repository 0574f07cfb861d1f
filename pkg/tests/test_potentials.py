import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from lameqhj.elliptic import complete_K
from lameqhj.potentials import Family, PotentialSpec, evaluate, fundamental_period, susy_offset

K_HALF = 1.8540746773013719


def test_spec_validation():
    with pytest.raises(ValueError, match="j must be ≥ 1"):
        PotentialSpec("lame", 0, 0.5)
    with pytest.raises(ValueError):
        PotentialSpec("lame", 2, 1.0)
    with pytest.raises(ValueError):
        PotentialSpec("lame", 2, 0.0)
    with pytest.raises(ValueError):
        PotentialSpec("lame", 1.5, 0.5)
    with pytest.raises(ValueError):
        PotentialSpec("mathieu", 1, 0.5)
    assert PotentialSpec("associated", 1, 0.5).family is Family.ASSOCIATED


def test_evaluate_examples():
    lame = PotentialSpec("lame", 2, 0.5)
    assert evaluate(lame, 0.0) == 0.0
    assert evaluate(lame, complete_K(0.5)) == pytest.approx(3.0, abs=1e-14)
    assoc = PotentialSpec("associated", 1, 0.5)
    assert evaluate(assoc, 0.0) == pytest.approx(1.0, abs=1e-15)


def test_offset_is_additive():
    spec = PotentialSpec("associated", 2, 0.3)
    x = np.linspace(-3, 3, 17)
    np.testing.assert_allclose(evaluate(spec.with_offset(2.5), x), evaluate(spec, x) + 2.5)


def test_susy_offsets():
    lame = susy_offset(PotentialSpec("lame", 2, 0.5))
    assert lame.published
    assert lame.value == pytest.approx(-1.2679491924311228, abs=1e-15)
    assoc = susy_offset(PotentialSpec("associated", 1, 0.5))
    assert assoc.published
    assert assoc.value == pytest.approx(-1.0857864376269049, abs=1e-15)
    other = susy_offset(PotentialSpec("lame", 3, 0.5))
    assert other.value == 0.0 and not other.published


def test_fundamental_periods():
    assert fundamental_period(PotentialSpec("lame", 2, 0.5)) == pytest.approx(2 * K_HALF, abs=1e-14)
    assert fundamental_period(PotentialSpec("associated", 1, 0.5)) == pytest.approx(K_HALF, abs=1e-14)


specs = st.builds(
    PotentialSpec,
    family=st.sampled_from(["lame", "associated"]),
    j=st.integers(1, 8),
    m=st.floats(0.01, 0.99),
    offset=st.floats(-5, 5),
)


@given(spec=specs)
@settings(max_examples=60, deadline=None)
def test_period_and_evenness(spec):
    L = fundamental_period(spec)
    x = np.linspace(-L, L, 512)
    v = evaluate(spec, x)
    scale = max(1.0, float(np.max(np.abs(v))))
    assert np.max(np.abs(evaluate(spec, x + L) - v)) < 1e-10 * scale
    assert np.max(np.abs(evaluate(spec, -x) - v)) < 1e-12 * scale


@pytest.mark.parametrize("m", [0.1, 0.5, 0.9])
@pytest.mark.parametrize("j", [1, 2, 4])
def test_associated_period_is_minimal(j, m):
    spec = PotentialSpec("associated", j, m)
    K = complete_K(m)
    x = np.linspace(0, K, 512)
    assert np.max(np.abs(evaluate(spec, x + K / 2) - evaluate(spec, x))) > 1e-3


@pytest.mark.parametrize("family", ["lame", "associated"])
@pytest.mark.parametrize("j", [1, 2, 3, 7])
def test_reflection_leaves_potential_unchanged(family, j):
    spec = PotentialSpec(family, j, 0.37)
    jr = -j - 1
    x = np.linspace(-4, 4, 101)
    np.testing.assert_array_equal(evaluate(spec, x, strength=jr * (jr + 1)), evaluate(spec, x))
