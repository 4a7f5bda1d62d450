import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from hquant.angmom import (
    angle_to,
    beta_from_angmom,
    conservation_check,
    energy_spin_ratio,
    field_eval,
    intrinsic_angular_momentum,
    intrinsic_angular_momentum_re,
)
from hquant.core import SI, DomainError, FieldSpec, PhysicalSetup, Polarization
from hquant.energy import RadialMode, beta, mode_energy
from hquant.radial import radial_integral_closed

KHAT = (0.6, 0.0, 0.8)


def spec_(n, pol="plus", k=1.0, **kw):
    return FieldSpec(n=n, k=k, polarization=pol, khat=kw.pop("khat", KHAT), **kw)


def test_field_vanishes_at_bessel_zero():
    F = field_eval(spec_(0), math.pi, 0.3, 1.1)
    assert F.shape == (3,)
    assert np.max(np.abs(F)) < 1e-16


def test_linear_field_is_transverse():
    fs = spec_(3, "linear1")
    r = np.linspace(0.1, 9, 13)[:, None]
    theta = np.linspace(0, np.pi, 7)[None, :]
    F = field_eval(fs, r, theta, 0.4)
    assert F.shape == (13, 7, 3)
    assert np.max(np.abs(F @ np.array(KHAT))) < 1e-16


def test_field_modulus_in_time():
    circ = spec_(2)
    mods = [np.linalg.norm(field_eval(circ, 2.3, 0.8, 0.5, t)) for t in np.linspace(0, circ.period, 9)]
    assert max(mods) - min(mods) < 1e-15
    lin = spec_(2, "linear2")
    F0 = field_eval(lin, 2.3, 0.8, 0.5)
    real_mods = [np.linalg.norm(np.real(field_eval(lin, 2.3, 0.8, 0.5, t))) for t in np.linspace(0, lin.period, 9)]
    # |Re(a e^{-iwt})| = |a| |cos(wt - arg a)| for a scalar-times-real-vector field
    scalar = F0 @ np.conj(lin.polarization_vector())
    expected = [abs(scalar) * abs(math.cos(lin.omega * t - np.angle(scalar))) for t in np.linspace(0, lin.period, 9)]
    np.testing.assert_allclose(real_mods, expected, atol=1e-15)


def test_negative_radius_rejected():
    with pytest.raises(DomainError):
        field_eval(spec_(1), -1.0, 0.0, 0.0)


@pytest.mark.parametrize("n", [0, 1, 4])
def test_circular_spin_matches_analytic_value(n):
    # |<J>| = epsilon0 E0^2 R_n (2n+1) / (2 omega), along +khat
    fs = spec_(n, k=1.3, E0=0.9, epsilon0=2.0, c=1.7)
    R = 7.0
    J = intrinsic_angular_momentum(fs, R)
    expected = fs.epsilon0 * fs.E0**2 * radial_integral_closed(n, fs.k, R) * (2 * n + 1) / (2 * fs.omega)
    np.testing.assert_allclose(J, expected * np.array(KHAT), rtol=1e-12, atol=1e-15 * expected)


def test_n0_spin_is_mode_energy_over_omega():
    fs = spec_(0, k=2.0)
    R = 4.0
    setup = PhysicalSetup.natural(R=R)
    H = mode_energy(0, fs.k, setup, RadialMode.NUMERIC).total
    np.testing.assert_allclose(intrinsic_angular_momentum(fs, R), H / fs.omega * np.array(KHAT), rtol=1e-12)


@pytest.mark.parametrize("n", [0, 2, 5])
def test_helicity_antisymmetry_and_linear_zero(n):
    plus = intrinsic_angular_momentum(spec_(n, "plus"), 12.0)
    minus = intrinsic_angular_momentum(spec_(n, "minus"), 12.0)
    mag = np.linalg.norm(plus)
    assert np.max(np.abs(plus + minus)) <= 1e-12 * mag
    for pol in ("linear1", "linear2"):
        assert np.linalg.norm(intrinsic_angular_momentum(spec_(n, pol), 12.0)) <= 1e-12 * mag
    assert angle_to(plus, KHAT) <= 1e-10


@settings(max_examples=15, deadline=None)
@given(
    n=st.integers(0, 5),
    kR=st.floats(1.0, 60.0),
    direction=st.tuples(st.floats(-1, 1), st.floats(-1, 1), st.floats(-1, 1)),
)
def test_spin_direction_property(n, kR, direction):
    d = np.array(direction)
    if np.linalg.norm(d) < 0.1:
        return
    khat = tuple(d / np.linalg.norm(d))
    plus = intrinsic_angular_momentum(spec_(n, khat=khat), kR)
    minus = intrinsic_angular_momentum(spec_(n, "minus", khat=khat), kR)
    assert angle_to(plus, khat) <= 1e-10
    assert np.max(np.abs(plus + minus)) <= 1e-12 * np.linalg.norm(plus)


@pytest.mark.parametrize("pol", ["plus", "minus", "linear1"])
def test_two_cycle_average_formulas_agree(pol):
    fs = spec_(3, pol)
    a = intrinsic_angular_momentum(fs, 9.0)
    b = intrinsic_angular_momentum_re(fs, 9.0)
    scale = np.linalg.norm(intrinsic_angular_momentum(spec_(3), 9.0))
    assert np.max(np.abs(a - b)) <= 1e-10 * scale


def test_conservation_circular():
    fs = spec_(1)
    rep = conservation_check(fs, 10.0, np.linspace(0, fs.period, 8))
    assert rep.max_drift < 1e-10
    assert rep.helicity is Polarization.CIRCULAR_PLUS
    assert len(rep.samples) == 8
    np.testing.assert_allclose(rep.J_mean, intrinsic_angular_momentum(fs, 10.0), rtol=0, atol=1e-10 * rep.reference_magnitude)
    assert np.linalg.norm(rep.J_mean) == pytest.approx(rep.reference_magnitude, rel=1e-12)


def test_conservation_linear_stays_zero():
    fs = spec_(2, "linear1")
    rep = conservation_check(fs, 10.0, np.linspace(0, fs.period, 8))
    for _, J in rep.samples:
        assert np.linalg.norm(J) < 1e-12 * rep.reference_magnitude


@pytest.mark.parametrize("n", range(6))
@pytest.mark.parametrize("kR", [5.0, 20.0, 100.0])
def test_conservation_grid(n, kR):
    for pol in ("plus", "minus"):
        fs = spec_(n, pol)
        assert conservation_check(fs, kR, np.linspace(0, fs.period, 8)).max_drift <= 1e-10


def test_conservation_time_validation():
    fs = spec_(1)
    with pytest.raises(DomainError):
        conservation_check(fs, 5.0, [0.0])
    with pytest.raises(DomainError):
        conservation_check(fs, 5.0, [0.0, 0.0, 1.0])
    with pytest.raises(DomainError):
        conservation_check(fs, 5.0, np.linspace(0, fs.period / 3, 5))
    # endpoint-exclusive uniform sampling is accepted
    conservation_check(fs, 5.0, np.linspace(0, fs.period, 8, endpoint=False))


def test_report_serialization():
    fs = spec_(1)
    rep = conservation_check(fs, 5.0, np.linspace(0, fs.period, 4))
    d = rep.to_dict()
    assert d["helicity"] == "plus" and len(d["samples"]) == 4
    lines = rep.to_csv().splitlines()
    assert lines[0] == "t,Jx,Jy,Jz,|J|" and len(lines) == 5


@pytest.mark.parametrize("setup", [PhysicalSetup.natural(R=1.5, V=2.0, E0=0.7), SI])
def test_beta_from_spin(setup):
    omega = 3.0 * setup.c
    hats = [beta_from_angmom(FieldSpec.from_setup(setup, n, 1.0), omega, 10.0, setup) for n in (0, 3, 7)]
    for h in hats:
        assert h == pytest.approx(beta(setup), rel=1e-12)
    assert max(hats) - min(hats) <= 1e-12 * beta(setup)


def test_beta_from_spin_needs_positive_helicity(natural):
    with pytest.raises(DomainError):
        beta_from_angmom(FieldSpec(n=1, k=1.0, polarization="minus"), 1.0, 1.0, natural)


@pytest.mark.parametrize("n", [0, 1, 3, 5])
def test_energy_over_spin_is_omega(n):
    fs = spec_(n, k=2.0, c=3.0, E0=1.4)
    assert energy_spin_ratio(fs, 10.0) == pytest.approx(fs.omega, rel=1e-10)
