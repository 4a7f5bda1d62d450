import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from scipy.special import spherical_jn

from hquant.core import DomainError
from hquant.specfun import (
    assoc_legendre,
    sph_bessel_all,
    sph_bessel_j,
    sph_bessel_j_pair,
    sph_harmonic,
    sph_harmonics_family,
)

# Explicit Legendre polynomials, independent of the recurrence.
LEGENDRE = [
    lambda x: 1.0 + 0 * x,
    lambda x: x,
    lambda x: (3 * x**2 - 1) / 2,
    lambda x: (5 * x**3 - 3 * x) / 2,
    lambda x: (35 * x**4 - 30 * x**2 + 3) / 8,
    lambda x: (63 * x**5 - 70 * x**3 + 15 * x) / 8,
    lambda x: (231 * x**6 - 315 * x**4 + 105 * x**2 - 5) / 16,
]


def test_legendre_examples():
    assert assoc_legendre(0, 0, 0.3) == 1.0
    assert assoc_legendre(1, 0, 0.3) == pytest.approx(0.3, abs=1e-16)
    # -3 x sqrt(1 - x^2) at x = 0.5
    assert assoc_legendre(2, 1, 0.5) == pytest.approx(-1.299038105676658, abs=1e-15)


def test_legendre_domain():
    with pytest.raises(DomainError):
        assoc_legendre(2, 3, 0.1)
    with pytest.raises(DomainError):
        assoc_legendre(2, 1, 1.5)


@pytest.mark.parametrize("n", range(7))
def test_legendre_matches_explicit_polynomials(n):
    x = np.linspace(-1, 1, 21)
    np.testing.assert_allclose(assoc_legendre(n, 0, x), LEGENDRE[n](x), rtol=0, atol=1e-13)


def test_harmonic_examples():
    assert sph_harmonic(0, 0, 0.4, 2.1) == pytest.approx(0.282094791773878 + 0j, abs=1e-15)
    assert sph_harmonic(1, 0, 0.0, 0.0) == pytest.approx(0.488602511902920 + 0j, abs=1e-15)
    lhs = sph_harmonic(5, -3, 1.1, 0.7)
    rhs = (-1) ** 3 * np.conj(sph_harmonic(5, 3, 1.1, 0.7))
    assert lhs == pytest.approx(rhs, abs=1e-15)


@settings(max_examples=60)
@given(
    n=st.integers(0, 25),
    data=st.data(),
    theta=st.floats(0, math.pi),
    phi=st.floats(0, 2 * math.pi),
)
def test_conjugation_symmetry(n, data, theta, phi):
    m = data.draw(st.integers(0, n))
    assert sph_harmonic(n, -m, theta, phi) == pytest.approx((-1) ** m * np.conj(sph_harmonic(n, m, theta, phi)), abs=1e-13)


@pytest.mark.parametrize("n", [0, 1, 2, 5, 10, 20])
def test_addition_theorem(n):
    rng = np.random.default_rng(n)
    theta = rng.uniform(0, np.pi, 40)
    phi = rng.uniform(0, 2 * np.pi, 40)
    total = np.sum(np.abs(sph_harmonics_family(n, theta, phi)) ** 2, axis=0)
    np.testing.assert_allclose(total, (2 * n + 1) / (4 * np.pi), rtol=0, atol=1e-11)


def test_no_overflow_up_to_order_60():
    values = sph_harmonics_family(60, np.array([0.3, 1.2, 2.9]), np.array([0.1, 4.0, 5.0]))
    assert np.all(np.isfinite(values))
    total = np.sum(np.abs(values) ** 2, axis=0)
    np.testing.assert_allclose(total, 121 / (4 * np.pi), rtol=1e-11)


def test_family_matches_single_evaluations():
    theta, phi = 0.9, 2.2
    fam = sph_harmonics_family(4, theta, phi)
    for i, m in enumerate(range(-4, 5)):
        assert fam[i] == pytest.approx(sph_harmonic(4, m, theta, phi), abs=1e-15)


def test_bessel_examples():
    assert sph_bessel_j(0, 1.0) == pytest.approx(0.841470984807897, abs=1e-15)
    assert sph_bessel_j(3, 0.0) == 0.0
    assert sph_bessel_j(0, 0.0) == 1.0
    assert sph_bessel_j(1, 1.0) == pytest.approx(0.301168678939757, abs=1e-15)
    with pytest.raises(DomainError):
        sph_bessel_j(0, -1.0)


def test_pair_examples():
    below, mid, above = sph_bessel_j_pair(0, math.pi / 2)
    assert below == pytest.approx(0.0, abs=1e-16)
    assert mid == pytest.approx(2 / math.pi, abs=1e-15)
    assert above == pytest.approx(4 / math.pi**2, abs=1e-15)
    assert sph_bessel_j_pair(1, 1.0) == pytest.approx((0.841470984807897, 0.301168678939757, 0.062035052011373), abs=1e-15)
    with pytest.raises(DomainError):
        sph_bessel_j_pair(1, 0.0)


@pytest.mark.parametrize("x", [0.1, 1.0, 10.0, 100.0])
def test_recurrence_consistency(x):
    for n in range(41):
        below, mid, above = sph_bessel_j_pair(n, x)
        assert abs(below + above - (2 * n + 1) / x * mid) <= 1e-12 * max(1.0, abs(mid))


def test_bessel_closed_forms_low_order():
    x = np.array([1e-3, 0.2, 0.9, 1.0, 2.5, 7.0, 31.0, 500.0])
    s, c = np.sin(x), np.cos(x)
    closed = [s / x, s / x**2 - c / x, (3 / x**3 - 1 / x) * s - 3 * c / x**2,
              (15 / x**4 - 6 / x**2) * s - (15 / x**3 - 1 / x) * c]
    mask = x > 0.5  # closed forms cancel catastrophically below this
    for n, ref in enumerate(closed):
        got = sph_bessel_j(n, x)
        np.testing.assert_allclose(got[mask], ref[mask], rtol=1e-12, atol=1e-15)


@pytest.mark.parametrize("n", [0, 1, 5, 12, 25, 40])
def test_bessel_against_scipy(n):
    # scipy is an independent implementation used purely as a reference
    x = np.concatenate([np.geomspace(1e-3, 1, 7), np.linspace(1.5, 80, 40), [n - 0.5 if n else 0.5, n, n + 0.5, 1e4]])
    x = x[x > 0]
    ref = spherical_jn(n, x)
    got = sph_bessel_j(n, x)
    keep = np.abs(ref) > 1e-280
    np.testing.assert_allclose(got[keep], ref[keep], rtol=1e-12)


def test_bessel_vector_and_scalar_agree():
    # the sweep to order 8 may pick a different recurrence than order n alone
    x = np.array([0.0, 0.4, 3.0, 12.0, 90.0])
    all_orders = sph_bessel_all(8, x)
    for n in range(9):
        for i, xi in enumerate(x):
            assert all_orders[n, i] == pytest.approx(sph_bessel_j(n, float(xi)), rel=1e-13, abs=1e-300)
