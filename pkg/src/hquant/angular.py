"""Solid-angle integrals of order-n spherical harmonics."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import DomainError, ModeIndex, QuadratureSpec
from .quad import sphere_rule
from .specfun import sph_harmonics_family


class InsufficientQuadratureError(DomainError):
    """The angular rule cannot integrate order-n products exactly."""


@dataclass(frozen=True)
class GramMatrix:
    n: int
    entries: np.ndarray  # (2n+1, 2n+1), row m', column m, both ascending from -n

    @property
    def max_offdiagonal(self) -> float:
        off = self.entries - np.diag(np.diag(self.entries))
        return float(np.max(np.abs(off)))

    @property
    def max_identity_error(self) -> float:
        return float(np.max(np.abs(self.entries - np.eye(2 * self.n + 1))))


def _require(n: int, spec: QuadratureSpec):
    ModeIndex(n)
    if not spec.covers(n):
        raise InsufficientQuadratureError(
            f"order {n} needs theta_order >= {n + 1} and phi_points >= {2 * n + 2}; "
            f"got theta_order={spec.theta_order}, phi_points={spec.phi_points}"
        )


def gram_matrix(n: int, spec: QuadratureSpec | None = None, rotation=None) -> GramMatrix:
    """Quadrature overlaps <Y_n^{m'}|Y_n^m> on the sphere."""
    spec = spec or QuadratureSpec.sufficient_for(n)
    _require(n, spec)
    rule = sphere_rule(spec, rotation)
    Y = sph_harmonics_family(n, rule.theta, rule.phi)
    weighted = np.conj(Y) * rule.weights
    size = 2 * n + 1
    G = np.zeros((size, size), dtype=complex)
    for i in range(size):
        G[i, i:] = weighted[i] @ Y[i:].T
    upper = np.triu(G, 1)
    G = upper + np.conj(upper).T + np.diag(np.diag(G).real)
    return GramMatrix(n, G)


def degeneracy_sum(n: int, spec: QuadratureSpec | None = None, rotation=None) -> float:
    """Sum over all (m, m') of the solid-angle overlaps; analytically 2n + 1."""
    G = gram_matrix(n, spec, rotation).entries
    return float(np.sum(G).real)


def angular_profile(n: int, theta, phi):
    """Unit-weight sum of Y_n^m over m = -n..n."""
    total = sph_harmonics_family(n, theta, phi).sum(axis=0)
    return total if total.ndim else complex(total)
