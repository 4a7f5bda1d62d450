"""Mode energy, the mode-sum over the band [k0, k0 + omega/c], and beta."""

from __future__ import annotations

import csv
import enum
import io
import math
from dataclasses import asdict, dataclass, field, replace

import numpy as np

from .angular import degeneracy_sum
from .core import DomainError, ModeIndex, PhysicalSetup, QuadratureSpec, validate_setup
from .quad import composite_rule, gauss_legendre
from .radial import radial_integral_asymptotic, radial_integral_closed, radial_integral_numeric

K_INDEPENDENT_E0 = "E0 treated as independent of k across [k0, k0 + omega/c]"


class RadialMode(enum.Enum):
    NUMERIC = "numeric"
    CLOSED = "closed"
    ASYMPTOTIC = "asymptotic"


@dataclass(frozen=True)
class ModeEnergyBreakdown:
    angular_factor: float
    radial_factor: float
    prefactor: float
    total: float


@dataclass(frozen=True)
class BetaReport:
    beta: float
    k0_values: list[float]
    energies: list[float]
    beta_hats: list[float]
    max_rel_variation: float
    n: int
    omega: float
    radial_mode: str
    assumptions: list[str] = field(default_factory=lambda: [K_INDEPENDENT_E0])

    def to_dict(self) -> dict:
        return asdict(self)


def cycle_average_factor() -> float:
    return 0.5


def numeric_cycle_average(f, period: float, samples: int = 64) -> float:
    """(1/T) * integral over one period of f(t)^2, periodic trapezoid rule.

    Exact for trigonometric polynomials f of degree < samples / 2.
    """
    if not period > 0:
        raise DomainError("period must be positive")
    t = period * np.arange(samples) / samples
    return float(np.mean(np.asarray(f(t), dtype=float) ** 2))


def _radial(n, k, R, mode: RadialMode, spec):
    if mode is RadialMode.ASYMPTOTIC:
        return radial_integral_asymptotic(k, R)
    if mode is RadialMode.CLOSED:
        return radial_integral_closed(n, k, R)
    if np.ndim(k):
        return np.array([radial_integral_numeric(n, float(kk), R, spec) for kk in np.ravel(k)]).reshape(np.shape(k))
    return radial_integral_numeric(n, k, R, spec)


def mode_energy(n: int, k: float, setup: PhysicalSetup,
                radial_mode: RadialMode = RadialMode.CLOSED,
                spec: QuadratureSpec | None = None,
                quadrature: bool = False) -> ModeEnergyBreakdown:
    """epsilon0 |E0|^2 R_n (n + 1/2) for one multipole mode.

    With ``quadrature=True`` the (n + 1/2) factor is rebuilt from the
    solid-angle degeneracy sum times a numerically cycle-averaged cos^2.
    """
    ModeIndex(n)
    validate_setup(setup)
    if not k > 0:
        raise DomainError(f"wavenumber must be positive, got k={k}")
    radial_mode = RadialMode(radial_mode)
    if quadrature:
        aspec = spec if spec is not None else QuadratureSpec.sufficient_for(n)
        omega = setup.c * k
        cyc = numeric_cycle_average(lambda t: np.cos(omega * t), 2.0 * math.pi / omega)
        angular = degeneracy_sum(n, aspec) * cyc
    else:
        angular = (2 * n + 1) * cycle_average_factor()
    radial = float(_radial(n, k, setup.R, radial_mode, spec))
    prefactor = setup.epsilon0 * setup.E0**2
    return ModeEnergyBreakdown(angular, radial, prefactor, prefactor * radial * angular)


def beta(setup: PhysicalSetup) -> float:
    """epsilon0 R V |E0|^2 / (2 pi^2 c)."""
    validate_setup(setup)
    return setup.epsilon0 * setup.R * setup.V * setup.E0**2 / (2.0 * math.pi**2 * setup.c)


def mode_sum_energy(n: int, omega: float, k0: float, setup: PhysicalSetup,
                    radial_mode: RadialMode = RadialMode.ASYMPTOTIC,
                    spec: QuadratureSpec | None = None) -> float:
    """(V/pi^2) * integral over [k0, k0 + omega/c] of k^2 * mode energy dk.

    The factor 2 for the two polarizations is inside V/pi^2.
    """
    ModeIndex(n)
    validate_setup(setup)
    if not (omega > 0 and k0 > 0):
        raise DomainError(f"need omega > 0 and k0 > 0, got omega={omega}, k0={k0}")
    radial_mode = RadialMode(radial_mode)
    spec = spec or QuadratureSpec()
    width = omega / setup.c
    a, b = k0, k0 + width
    if radial_mode is RadialMode.ASYMPTOTIC:
        # width taken directly: b - a cancels badly when k0 >> omega/c
        base = gauss_legendre(spec.radial_order)
        half = 0.5 * width
        nodes = a + half * (1.0 + base.nodes)
        weights = half * base.weights
    else:
        # R_n(k) oscillates like sin(2kR)
        rule = composite_rule(a, b, spec, k_max=2.0 * setup.R)
        nodes, weights = rule.nodes, rule.weights
    per_mode = setup.epsilon0 * setup.E0**2 * (n + 0.5) * _radial(n, nodes, setup.R, radial_mode, spec)
    return float(setup.V / math.pi**2 * np.dot(weights, nodes**2 * per_mode))


def k0_independence_scan(n: int, omega: float, k0_list, setup: PhysicalSetup,
                         radial_mode: RadialMode = RadialMode.ASYMPTOTIC,
                         spec: QuadratureSpec | None = None) -> BetaReport:
    k0_list = [float(k0) for k0 in k0_list]
    if not k0_list or any(k0 <= 0 for k0 in k0_list):
        raise DomainError("k0 values must be positive and non-empty")
    radial_mode = RadialMode(radial_mode)
    energies = [mode_sum_energy(n, omega, k0, setup, radial_mode, spec) for k0 in k0_list]
    hats = [e / ((n + 0.5) * omega) for e in energies]
    mean = sum(hats) / len(hats)
    variation = (max(hats) - min(hats)) / abs(mean) if mean else 0.0
    return BetaReport(
        beta=beta(setup),
        k0_values=k0_list,
        energies=energies,
        beta_hats=hats,
        max_rel_variation=variation,
        n=n,
        omega=float(omega),
        radial_mode=radial_mode.value,
    )


def calibrate_amplitude(setup: PhysicalSetup, beta_target: float) -> float:
    """Amplitude E0 at which beta(setup) equals ``beta_target``."""
    validate_setup(setup)
    if not beta_target > 0:
        raise DomainError(f"beta target must be positive, got {beta_target}")
    return math.sqrt(2.0 * math.pi**2 * setup.c * beta_target / (setup.epsilon0 * setup.R * setup.V))


def calibrated_setup(setup: PhysicalSetup, beta_target: float) -> PhysicalSetup:
    return replace(setup, E0=calibrate_amplitude(setup, beta_target))


ENERGY_HEADER = ["n", "omega", "k0", "energy", "beta_hat", "radial_mode"]


def report_to_csv(report: BetaReport) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(ENERGY_HEADER)
    for k0, e, b in zip(report.k0_values, report.energies, report.beta_hats):
        w.writerow([report.n, f"{report.omega:.17g}", f"{k0:.17g}", f"{e:.17g}", f"{b:.17g}", report.radial_mode])
    return buf.getvalue()
