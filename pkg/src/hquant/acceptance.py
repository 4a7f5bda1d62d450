"""Exit criteria for the whole library, shared by ``verify-all`` and the tests.

Each check returns a :class:`CriterionResult`; the printed line carries no
timing information so repeated runs are byte-identical.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .angmom import angle_to, conservation_check, energy_spin_ratio, intrinsic_angular_momentum, beta_from_angmom
from .angular import degeneracy_sum, gram_matrix
from .core import SI, FieldSpec, PhysicalSetup, Polarization, QuadratureSpec, spherical_volume
from .energy import RadialMode, beta, calibrated_setup, k0_independence_scan, mode_sum_energy
from .radial import asymptotic_deviation_scan, max_deviation_by_kR, radial_integral_closed, radial_integral_numeric

PROFILES = ("quick", "full")
KHATS = ((0.0, 0.0, 1.0), (0.6, 0.0, 0.8), (1 / math.sqrt(3),) * 3)


@dataclass(frozen=True)
class CriterionResult:
    number: int
    name: str
    passed: bool
    measured: float
    tolerance: float
    detail: str = ""

    def line(self) -> str:
        tag = "PASS" if self.passed else "FAIL"
        extra = f" ({self.detail})" if self.detail else ""
        return f"[{tag}] {self.number:2d} {self.name}: measured={self.measured:.3e} tol={self.tolerance:.0e}{extra}"

    def to_dict(self) -> dict:
        return {
            "number": self.number,
            "name": self.name,
            "passed": self.passed,
            "measured": self.measured,
            "tolerance": self.tolerance,
            "detail": self.detail,
        }


def _result(number, name, measured, tol, detail="", extra_ok=True):
    return CriterionResult(number, name, bool(measured <= tol and extra_ok), float(measured), tol, detail)


def degeneracy_identity(profile="full", scale=1.0):
    n_max = 20 if profile == "full" else 5
    err = max(abs(degeneracy_sum(n, QuadratureSpec.sufficient_for(n)) - (2 * n + 1)) for n in range(n_max + 1))
    return _result(1, f"degeneracy sum = 2n+1, n<={n_max}", err, 1e-9 * scale)


def gram_identity(profile="full", scale=1.0):
    n_max = 20 if profile == "full" else 5
    err = max(gram_matrix(n, QuadratureSpec.sufficient_for(n)).max_identity_error for n in range(n_max + 1))
    return _result(2, f"Gram matrix = identity, n<={n_max}", err, 1e-11 * scale)


def radial_oracle(profile="full", scale=1.0):
    n_max = 10 if profile == "full" else 5
    kRs = (1, 5, 10, 50, 100) if profile == "full" else (1, 5, 10)
    err = 0.0
    for n in range(n_max + 1):
        for kR in kRs:
            closed = radial_integral_closed(n, float(kR), 1.0)
            err = max(err, abs(radial_integral_numeric(n, float(kR), 1.0) - closed) / abs(closed))
    return _result(3, f"radial quadrature vs Lommel form, n<={n_max}", err, 1e-8 * scale)


def asymptotic_limit(profile="full", scale=1.0):
    n_max = 10 if profile == "full" else 5
    kRs = (1e2, 1e3, 1e4, 1e5) if profile == "full" else (1e4, 1e5)
    peaks = max_deviation_by_kR(asymptotic_deviation_scan(n_max, kRs))
    series = [peaks[k] for k in kRs]
    monotone = all(b < a for a, b in zip(series, series[1:]))
    detail = "decay " + ("monotone" if monotone else "NOT monotone")
    return _result(4, f"R_n -> R/(2k^2) at kR=1e5, n<={n_max}", series[-1], 1e-3 * scale, detail, monotone)


def quantization_rule(profile="full", scale=1.0):
    ns = (0, 1, 4, 9) if profile == "full" else (0, 1, 4)
    omegas = 10.0 ** np.arange(-3, 4) if profile == "full" else 10.0 ** np.arange(-1, 1)
    k0s = 10.0 ** np.arange(-1, 4) if profile == "full" else 10.0 ** np.arange(0, 2)
    worst_ratio = 0.0
    worst_var = 0.0
    for setup in (PhysicalSetup.natural(R=2.0, V=spherical_volume(2.0), E0=1.5), SI):
        b = beta(setup)
        for n in ns:
            for w in omegas:
                omega = float(w) * setup.c
                for k0 in k0s:
                    H = mode_sum_energy(n, omega, float(k0), setup, RadialMode.ASYMPTOTIC)
                    worst_ratio = max(worst_ratio, abs(H / (b * (n + 0.5) * omega) - 1.0))
                report = k0_independence_scan(n, omega, k0s, setup, RadialMode.ASYMPTOTIC)
                worst_var = max(worst_var, report.max_rel_variation)
    nat = PhysicalSetup.natural()
    closed_dev = 0.0
    for n in ns:
        closed = mode_sum_energy(n, 1.0, 1e4, nat, RadialMode.CLOSED)
        asym = mode_sum_energy(n, 1.0, 1e4, nat, RadialMode.ASYMPTOTIC)
        closed_dev = max(closed_dev, abs(closed / asym - 1.0))
    ok = worst_var <= 1e-13 * scale and closed_dev <= 1e-3 * scale
    detail = f"k0 variation={worst_var:.3e} tol=1e-13; closed dev at k0R=1e4={closed_dev:.3e} tol=1e-03"
    return _result(5, "<H> = beta (n+1/2) omega", worst_ratio, 1e-13 * scale, detail, ok)


def _spin_cases(profile):
    ns = range(6) if profile == "full" else range(3)
    kRs = (5.0, 20.0, 100.0) if profile == "full" else (5.0, 20.0)
    return ns, kRs


def conservation(profile="full", scale=1.0):
    ns, kRs = _spin_cases(profile)
    drift = 0.0
    for n in ns:
        for kR in kRs:
            for pol in (Polarization.CIRCULAR_PLUS, Polarization.CIRCULAR_MINUS):
                fs = FieldSpec(n=n, k=1.0, polarization=pol, khat=KHATS[1])
                times = np.linspace(0.0, fs.period, 8)
                drift = max(drift, conservation_check(fs, kR, times).max_drift)
    return _result(6, "dJ_s/dt = 0 over one cycle", drift, 1e-10 * scale)


def helicity_structure(profile="full", scale=1.0):
    ns, kRs = _spin_cases(profile)
    anti = lin = ang = 0.0
    for khat in KHATS:
        for n in ns:
            for kR in kRs:
                plus = intrinsic_angular_momentum(FieldSpec(n=n, k=1.0, polarization="plus", khat=khat), kR)
                minus = intrinsic_angular_momentum(FieldSpec(n=n, k=1.0, polarization="minus", khat=khat), kR)
                mag = float(np.linalg.norm(plus))
                anti = max(anti, float(np.max(np.abs(plus + minus))) / mag)
                for pol in ("linear1", "linear2"):
                    J = intrinsic_angular_momentum(FieldSpec(n=n, k=1.0, polarization=pol, khat=khat), kR)
                    lin = max(lin, float(np.linalg.norm(J)) / mag)
                ang = max(ang, angle_to(plus, khat))
    ok = lin <= 1e-12 * scale and ang <= 1e-10 * scale
    detail = f"linear |J|={lin:.3e} tol=1e-12; angle to khat={ang:.3e} rad tol=1e-10"
    return _result(7, "J_s(+1) = -J_s(-1)", anti, 1e-12 * scale, detail, ok)


def beta_constancy(profile="full", scale=1.0):
    ns = (0, 3, 7)
    to_formula = spread = 0.0
    for setup in (PhysicalSetup.natural(R=1.5, V=2.0, E0=0.7), SI):
        b = beta(setup)
        omega = 3.0 * setup.c
        hats = [beta_from_angmom(FieldSpec.from_setup(setup, n, 1.0), omega, 10.0, setup) for n in ns]
        to_formula = max(to_formula, max(abs(h / b - 1.0) for h in hats))
        spread = max(spread, (max(hats) - min(hats)) / b)
    spin_ns, kRs = _spin_cases(profile)
    ratio_err = 0.0
    for n in spin_ns:
        for kR in kRs:
            for c in (1.0, 2.5):
                fs = FieldSpec(n=n, k=1.3, c=c, epsilon0=0.8, E0=1.7, khat=KHATS[2])
                ratio_err = max(ratio_err, abs(energy_spin_ratio(fs, kR / fs.k) / fs.omega - 1.0))
    ok = spread <= 1e-12 * scale and ratio_err <= 1e-10 * scale
    detail = f"spread over n={spread:.3e} tol=1e-12; <H>/|J|/omega-1={ratio_err:.3e} tol=1e-10"
    return _result(8, "beta from spin = beta(setup)", to_formula, 1e-12 * scale, detail, ok)


def calibration_round_trip(profile="full", scale=1.0):
    err = 0.0
    for setup in (SI, PhysicalSetup.natural(R=0.3, V=7.0)):
        for target in np.logspace(-34, 0, 35):
            err = max(err, abs(beta(calibrated_setup(setup, float(target))) / target - 1.0))
    return _result(9, "beta(calibrate(t)) = t", err, 1e-12 * scale)


def determinism(profile="full", scale=1.0):
    from .cli import render

    commands = [
        ["degeneracy", "--n-max", "6"],
        ["radial", "--n-max", "3", "--kR", "10,100,1000"],
        ["energy", "--n", "2", "--k0", "1,10,100", "--radial-mode", "closed"],
        ["angmom", "--n", "1", "--kR", "5", "--polarization", "plus"],
    ]
    mismatches = sum(render(cmd) != render(cmd) for cmd in commands)
    return _result(10, "repeated runs give identical bytes", float(mismatches), 0.0)


CRITERIA = (
    degeneracy_identity,
    gram_identity,
    radial_oracle,
    asymptotic_limit,
    quantization_rule,
    conservation,
    helicity_structure,
    beta_constancy,
    calibration_round_trip,
    determinism,
)


def run_all(profile: str = "full", scale: float = 1.0, threads: int = 1) -> list[CriterionResult]:
    if profile not in PROFILES:
        raise ValueError(f"unknown profile {profile!r}")
    if threads > 1:
        from concurrent.futures import ThreadPoolExecutor

        with ThreadPoolExecutor(max_workers=threads) as pool:
            return list(pool.map(lambda check: check(profile, scale), CRITERIA))
    return [check(profile, scale) for check in CRITERIA]
