"""Associated Legendre functions, spherical harmonics, spherical Bessel j_n.

All functions broadcast over numpy array arguments and return float64 /
complex128 arrays (or scalars for scalar input).
"""

from __future__ import annotations

import math

import numpy as np

from .core import DomainError, ModeIndex

_RESCALE_AT = 1e250


def _legendre_column(nmax: int, m: int, x: np.ndarray) -> np.ndarray:
    """P_l^m(x) for l = m..nmax, shape (nmax - m + 1, *x.shape)."""
    out = np.empty((nmax - m + 1,) + x.shape)
    # P_m^m = (-1)^m (2m-1)!! (1-x^2)^{m/2}
    pmm = np.ones_like(x)
    if m > 0:
        s = np.sqrt(np.clip((1.0 - x) * (1.0 + x), 0.0, None))
        fact = 1.0
        for _ in range(m):
            pmm = -pmm * fact * s
            fact += 2.0
    out[0] = pmm
    if nmax == m:
        return out
    out[1] = x * (2 * m + 1) * pmm
    for l in range(m + 2, nmax + 1):
        i = l - m
        out[i] = (x * (2 * l - 1) * out[i - 1] - (l + m - 1) * out[i - 2]) / (l - m)
    return out


def assoc_legendre(n: int, m: int, x):
    """P_n^m(x) with the Condon-Shortley phase, 0 <= m <= n, |x| <= 1."""
    if n < 0 or m < 0 or m > n:
        raise DomainError(f"need 0 <= m <= n, got n={n}, m={m}")
    xa = np.asarray(x, dtype=float)
    if np.any(np.abs(xa) > 1.0):
        raise DomainError("assoc_legendre needs |x| <= 1")
    value = _legendre_column(n, m, xa)[-1]
    return value if value.ndim else float(value)


def _norm(n: int, m: int) -> float:
    """sqrt((2n+1)/(4 pi) * (n-m)!/(n+m)!) for m >= 0, without factorials."""
    ratio = 1.0
    for j in range(n - m + 1, n + m + 1):
        ratio *= j
    return math.sqrt((2 * n + 1) / (4.0 * math.pi) / ratio)


def sph_harmonic(n: int, m: int, theta, phi):
    """Orthonormal Y_n^m(theta, phi), Condon-Shortley phase.

    theta is the polar angle, phi the azimuth. Negative m follows
    Y_n^{-m} = (-1)^m conj(Y_n^m).
    """
    ModeIndex(n, m)
    theta = np.asarray(theta, dtype=float)
    phi = np.asarray(phi, dtype=float)
    am = abs(m)
    p = _legendre_column(n, am, np.cos(theta))[-1]
    y = _norm(n, am) * p * np.exp(1j * am * phi)
    if m < 0:
        y = (-1) ** am * np.conj(y)
    return y if y.ndim else complex(y)


def sph_harmonics_family(n: int, theta, phi) -> np.ndarray:
    """Y_n^m for m = -n..n stacked along axis 0 (one Legendre sweep per |m|)."""
    theta = np.asarray(theta, dtype=float)
    phi = np.asarray(phi, dtype=float)
    x = np.cos(theta)
    shape = np.broadcast_shapes(theta.shape, phi.shape)
    out = np.empty((2 * n + 1,) + shape, dtype=complex)
    for am in range(n + 1):
        p = _legendre_column(n, am, x)[-1]
        y = _norm(n, am) * p * np.exp(1j * am * phi)
        out[n + am] = y
        if am:
            out[n - am] = (-1) ** am * np.conj(y)
    return out


def _j_upward(nmax: int, x: np.ndarray) -> np.ndarray:
    out = np.empty((nmax + 1,) + x.shape)
    s, c = np.sin(x), np.cos(x)
    out[0] = s / x
    if nmax >= 1:
        out[1] = s / x**2 - c / x
    for l in range(1, nmax):
        out[l + 1] = (2 * l + 1) / x * out[l] - out[l - 1]
    return out


def _j_miller(nmax: int, x: np.ndarray) -> np.ndarray:
    """Downward recurrence, normalized on whichever of j_0, j_1 is larger."""
    out = np.empty((nmax + 1,) + x.shape)
    start = nmax + 16 + int(math.ceil(float(x.max())))
    hi = np.zeros_like(x)
    cur = np.full_like(x, 1e-300)
    for l in range(start, 0, -1):
        if l <= nmax:
            out[l] = cur
        lo = (2 * l + 1) / x * cur - hi
        big = np.abs(lo) > _RESCALE_AT
        if big.any():
            scale = np.where(big, 1.0 / _RESCALE_AT, 1.0)
            lo *= scale
            cur *= scale
            if l <= nmax:
                out[l:] *= scale
        hi, cur = cur, lo
    out[0] = cur
    s, c = np.sin(x), np.cos(x)
    j0 = s / x
    j1 = s / x**2 - c / x
    with np.errstate(divide="ignore", invalid="ignore"):
        factor = np.where(np.abs(j0) >= np.abs(j1), j0 / cur, j1 / hi)
    return out * factor


def sph_bessel_all(nmax: int, x) -> np.ndarray:
    """j_0..j_nmax at x >= 0, stacked along axis 0.

    Upward recurrence from the closed forms where x > max(1, nmax), Miller's
    downward recurrence elsewhere; j_n(0) = delta_{n0}.
    """
    if nmax < 0:
        raise DomainError(f"order must be >= 0, got {nmax}")
    x = np.asarray(x, dtype=float)
    if np.any(x < 0) or np.any(~np.isfinite(x)):
        raise DomainError("spherical Bessel argument must be finite and >= 0")
    flat = x.ravel()
    out = np.zeros((nmax + 1, flat.size))
    zero = flat == 0
    out[0, zero] = 1.0
    up = flat > max(1.0, nmax)
    down = ~up & ~zero
    if up.any():
        out[:, up] = _j_upward(nmax, flat[up])
    if down.any():
        out[:, down] = _j_miller(nmax, flat[down])
    return out.reshape((nmax + 1,) + x.shape)


def sph_bessel_j(n: int, x):
    """Regular spherical Bessel function j_n(x) for x >= 0."""
    value = sph_bessel_all(n, x)[n]
    return value if value.ndim else float(value)


def sph_bessel_j_pair(n: int, x):
    """(j_{n-1}(x), j_n(x), j_{n+1}(x)) with j_{-1}(x) = cos(x)/x; x > 0."""
    xa = np.asarray(x, dtype=float)
    if np.any(xa <= 0):
        raise DomainError("sph_bessel_j_pair needs x > 0")
    if n < 0:
        raise DomainError(f"order must be >= 0, got {n}")
    js = sph_bessel_all(n + 1, xa)
    below = np.cos(xa) / xa if n == 0 else js[n - 1]
    triple = (below, js[n], js[n + 1])
    if xa.ndim == 0:
        return tuple(float(v) for v in triple)
    return triple
