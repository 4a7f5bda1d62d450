"""Intrinsic (spin) angular momentum of a single multipole mode.

Phasor convention: the complex field is F(r) exp(-i omega t) with
F = E0 j_n(kr) sum_m Y_n^m(theta, phi) * e_pol. The real fields are

    E(r, t) = Re[F exp(-i omega t)]
    A(r, t) = Im[F exp(-i omega t)] / omega

so that E = -dA/dt holds identically.
"""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass

import numpy as np

from .angular import InsufficientQuadratureError, angular_profile
from .core import DomainError, FieldSpec, PhysicalSetup, Polarization, QuadratureSpec
from .energy import RadialMode, mode_energy, mode_sum_energy
from .quad import composite_rule, sphere_rule
from .specfun import sph_bessel_j


@dataclass(frozen=True)
class AngularMomentumReport:
    J_mean: np.ndarray
    samples: list[tuple[float, np.ndarray]]
    max_drift: float
    helicity: Polarization
    reference_magnitude: float

    def to_dict(self) -> dict:
        return {
            "J_mean": [float(v) for v in self.J_mean],
            "samples": [{"t": float(t), "J": [float(v) for v in J]} for t, J in self.samples],
            "max_drift": float(self.max_drift),
            "helicity": self.helicity.value,
            "reference_magnitude": float(self.reference_magnitude),
        }

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["t", "Jx", "Jy", "Jz", "|J|"])
        for t, J in self.samples:
            w.writerow([f"{v:.17g}" for v in (t, *J, float(np.linalg.norm(J)))])
        return buf.getvalue()


def field_eval(fs: FieldSpec, r, theta, phi, t: float = 0.0) -> np.ndarray:
    """Complex field F(r) exp(-i omega t); shape broadcast(r, theta, phi) + (3,)."""
    r = np.asarray(r, dtype=float)
    if np.any(r < 0):
        raise DomainError("radius must be >= 0")
    scalar = fs.E0 * sph_bessel_j(fs.n, fs.k * r) * angular_profile(fs.n, theta, phi)
    scalar = np.asarray(scalar) * np.exp(-1j * fs.omega * t)
    return scalar[..., None] * fs.polarization_vector()


class _BallGrid:
    """Radial x angular product grid over the ball of radius R."""

    def __init__(self, fs: FieldSpec, R: float, spec: QuadratureSpec | None):
        if not R > 0:
            raise DomainError(f"radius must be positive, got R={R}")
        spec = spec or QuadratureSpec().at_least(fs.n)
        if not spec.covers(fs.n):
            raise InsufficientQuadratureError(f"angular rule too coarse for order {fs.n}")
        radial = composite_rule(0.0, R, spec, k_max=2.0 * fs.k)
        sphere = sphere_rule(spec)
        self.r = radial.nodes[:, None]
        self.theta = sphere.theta[None, :]
        self.phi = sphere.phi[None, :]
        self.weights = (radial.weights * radial.nodes**2)[:, None] * sphere.weights[None, :]

    def integrate(self, values: np.ndarray) -> np.ndarray:
        """Sum over the grid of weights * values; values shaped (Nr, Nang, ...)."""
        return np.tensordot(self.weights, values, axes=([0, 1], [0, 1]))


def _spin_density_phasor(F: np.ndarray) -> np.ndarray:
    return np.imag(np.cross(F, np.conj(F)))


def intrinsic_angular_momentum(fs: FieldSpec, R: float, spec: QuadratureSpec | None = None) -> np.ndarray:
    """Cycle-averaged spin -epsilon0/(2 omega) * integral of Im[F x conj(F)]."""
    grid = _BallGrid(fs, R, spec)
    F = field_eval(fs, grid.r, grid.theta, grid.phi)
    return -fs.epsilon0 / (2.0 * fs.omega) * grid.integrate(_spin_density_phasor(F))


def intrinsic_angular_momentum_re(fs: FieldSpec, R: float, spec: QuadratureSpec | None = None) -> np.ndarray:
    """The same average written as epsilon0/2 * integral of Re[F x conj(A)]."""
    grid = _BallGrid(fs, R, spec)
    F = field_eval(fs, grid.r, grid.theta, grid.phi)
    A = -1j * F / fs.omega
    return 0.5 * fs.epsilon0 * grid.integrate(np.real(np.cross(F, np.conj(A))))


def _check_times(times, period: float) -> np.ndarray:
    times = np.asarray(sorted(float(t) for t in times))
    if times.size < 2 or np.any(np.diff(times) <= 0):
        raise DomainError("need at least two distinct sample times")
    n = times.size
    # uniform samples over one cycle may omit the endpoint
    if times[-1] - times[0] < period * (n - 1) / n * (1.0 - 1e-9):
        raise DomainError("sample times must cover a full period")
    return times


def conservation_check(fs: FieldSpec, R: float, times, spec: QuadratureSpec | None = None) -> AngularMomentumReport:
    """J_s(t) = epsilon0 * integral of E x A at each sample time.

    Drift is measured against the first sample and normalized by the spin
    magnitude a circular mode of the same profile would carry, so linear
    polarizations (J_s = 0) get a meaningful scale.
    """
    times = _check_times(times, fs.period)
    grid = _BallGrid(fs, R, spec)
    samples = []
    for t in times:
        z = field_eval(fs, grid.r, grid.theta, grid.phi, t)
        E = np.real(z)
        A = np.imag(z) / fs.omega
        samples.append((float(t), fs.epsilon0 * grid.integrate(np.cross(E, A))))
    F0 = field_eval(fs, grid.r, grid.theta, grid.phi)
    reference = fs.epsilon0 / (2.0 * fs.omega) * float(grid.integrate(np.sum(np.abs(F0) ** 2, axis=-1)))
    J0 = samples[0][1]
    drift = 0.0
    for _, J in samples[1:]:
        d = max(abs(np.linalg.norm(J) - np.linalg.norm(J0)), float(np.max(np.abs(J - J0))))
        drift = max(drift, d)
    scale = reference if reference > 0 else 1.0
    J_mean = np.mean([J for _, J in samples], axis=0)
    return AngularMomentumReport(J_mean, samples, drift / scale, fs.polarization, reference)


def beta_from_angmom(fs: FieldSpec, omega: float, k0: float, setup: PhysicalSetup,
                     radial_mode: RadialMode = RadialMode.ASYMPTOTIC,
                     spec: QuadratureSpec | None = None) -> float:
    """beta recovered as |<J_s>| / (n + 1/2) for a positive-helicity field.

    |<J_s>| is epsilon0/omega times the mode-summed field energy integral,
    i.e. mode_sum_energy / omega.
    """
    if fs.polarization is not Polarization.CIRCULAR_PLUS:
        raise DomainError("beta_from_angmom needs positive-helicity circular polarization")
    spin = mode_sum_energy(fs.n, omega, k0, setup, radial_mode, spec) / omega
    return spin / (fs.n + 0.5)


def energy_spin_ratio(fs: FieldSpec, R: float, spec: QuadratureSpec | None = None) -> float:
    """Single-mode <H> / |<J_s>|, with <H> from the energy module."""
    setup = PhysicalSetup(epsilon0=fs.epsilon0, c=fs.c, R=R, V=1.0, E0=fs.E0)
    H = mode_energy(fs.n, fs.k, setup, RadialMode.CLOSED).total
    J = intrinsic_angular_momentum(fs, R, spec)
    return H / float(np.linalg.norm(J))


def angle_to(J: np.ndarray, direction) -> float:
    d = np.asarray(direction, dtype=float)
    return math.atan2(float(np.linalg.norm(np.cross(J, d))), float(np.dot(J, d)))
