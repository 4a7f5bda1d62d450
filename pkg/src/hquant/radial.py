"""The radial integral of r^2 j_n(kr)^2 over the quantization ball.

Three evaluations are provided and cross-checked against each other:
composite quadrature, the closed Lommel form, and the large-kR limit
R/(2k^2).
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass

import numpy as np

from .core import DomainError, QuadratureSpec
from .quad import integrate_radial
from .specfun import sph_bessel_j, sph_bessel_j_pair


@dataclass(frozen=True)
class RadialResult:
    numeric: float
    closed: float
    asymptotic: float
    kR: float


@dataclass(frozen=True)
class ScanRow:
    n: int
    kR: float
    closed: float
    asymptotic: float
    rel_dev: float


def _check(k, R):
    if np.any(np.asarray(k) <= 0) or np.any(np.asarray(R) <= 0):
        raise DomainError(f"need k > 0 and R > 0, got k={k}, R={R}")


def radial_integral_numeric(n: int, k: float, R: float, spec: QuadratureSpec | None = None) -> float:
    _check(k, R)
    return integrate_radial(lambda r: r * r * sph_bessel_j(n, k * r) ** 2, 0.0, R, spec, k_max=2.0 * k)


def radial_integral_closed(n: int, k, R):
    """(R^3/2) [j_n(kR)^2 - j_{n-1}(kR) j_{n+1}(kR)], with j_{-1} = cos/x.

    Vectorized over k and R.
    """
    _check(k, R)
    k = np.asarray(k, dtype=float)
    R = np.asarray(R, dtype=float)
    below, mid, above = sph_bessel_j_pair(n, k * R)
    value = 0.5 * R**3 * (np.asarray(mid) ** 2 - np.asarray(below) * np.asarray(above))
    return value if np.ndim(value) else float(value)


def radial_integral_asymptotic(k, R):
    _check(k, R)
    return R / (2.0 * np.asarray(k, dtype=float) ** 2) if np.ndim(k) else R / (2.0 * k * k)


def radial_integral(n: int, k: float, R: float, spec: QuadratureSpec | None = None) -> RadialResult:
    return RadialResult(
        numeric=radial_integral_numeric(n, k, R, spec),
        closed=radial_integral_closed(n, k, R),
        asymptotic=radial_integral_asymptotic(k, R),
        kR=k * R,
    )


def asymptotic_deviation_scan(n_max: int, kR_values) -> list[ScanRow]:
    """|closed/asymptotic - 1| for n = 0..n_max at R = 1, k = kR."""
    kR_values = [float(v) for v in kR_values]
    if any(v <= 0 for v in kR_values):
        raise DomainError("kR values must be positive")
    if any(b < a for a, b in zip(kR_values, kR_values[1:])):
        raise DomainError("kR values must be ascending")
    rows = []
    for n in range(n_max + 1):
        for kR in kR_values:
            closed = radial_integral_closed(n, kR, 1.0)
            asym = radial_integral_asymptotic(kR, 1.0)
            rows.append(ScanRow(n, kR, closed, asym, abs(closed / asym - 1.0)))
    return rows


def max_deviation_by_kR(rows: list[ScanRow]) -> dict[float, float]:
    out: dict[float, float] = {}
    for row in rows:
        out[row.kR] = max(out.get(row.kR, 0.0), row.rel_dev)
    return out


SCAN_HEADER = ["n", "kR", "closed", "asymptotic", "rel_dev"]


def scan_to_csv(rows: list[ScanRow]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(SCAN_HEADER)
    for r in rows:
        w.writerow([r.n, f"{r.kR:.17g}", f"{r.closed:.17g}", f"{r.asymptotic:.17g}", f"{r.rel_dev:.17g}"])
    return buf.getvalue()
