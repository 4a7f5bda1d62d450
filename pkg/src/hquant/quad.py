"""Gauss-Legendre, composite radial and product sphere quadrature rules."""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .core import DomainError, QuadratureSpec


@dataclass(frozen=True)
class Rule1D:
    nodes: np.ndarray
    weights: np.ndarray

    def __len__(self):
        return len(self.nodes)

    def integrate(self, f) -> float:
        return float(np.dot(self.weights, f(self.nodes)))


@dataclass(frozen=True)
class SphereRule:
    theta: np.ndarray
    phi: np.ndarray
    weights: np.ndarray

    def __len__(self):
        return len(self.weights)

    @property
    def nodes(self) -> list[tuple[float, float, float]]:
        return list(zip(self.theta.tolist(), self.phi.tolist(), self.weights.tolist()))

    def integrate(self, f):
        """Sum of weights * f(theta, phi); f must broadcast over node arrays."""
        return np.dot(f(self.theta, self.phi), self.weights)


def _legendre_pair(order: int, x: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """(P_{order-1}(x), P_order(x)) by the three-term recurrence."""
    prev, cur = np.ones_like(x), x.copy()
    for l in range(2, order + 1):
        prev, cur = cur, ((2 * l - 1) * x * cur - (l - 1) * prev) / l
    return prev, cur


@lru_cache(maxsize=128)
def _gauss_legendre(order: int) -> tuple[np.ndarray, np.ndarray]:
    # Chebyshev-like initial guesses, descending
    i = np.arange(1, order + 1)
    x = np.cos(np.pi * (i - 0.25) / (order + 0.5))
    for _ in range(100):
        prev, cur = _legendre_pair(order, x)
        dp = order * (x * cur - prev) / (x * x - 1.0)
        dx = cur / dp
        x = x - dx
        if np.max(np.abs(dx)) < 1e-15:
            break
    prev, cur = _legendre_pair(order, x)
    dp = order * (x * cur - prev) / (x * x - 1.0)
    w = 2.0 / ((1.0 - x * x) * dp * dp)
    x, w = x[::-1], w[::-1]
    # enforce exact symmetry about 0
    x = 0.5 * (x - x[::-1])
    w = 0.5 * (w + w[::-1])
    x.setflags(write=False)
    w.setflags(write=False)
    return x, w


def gauss_legendre(order: int) -> Rule1D:
    """Gauss-Legendre rule on [-1, 1], exact through degree 2*order - 1."""
    if int(order) != order or order < 1:
        raise DomainError(f"Gauss-Legendre order must be >= 1, got {order}")
    x, w = _gauss_legendre(int(order))
    return Rule1D(x, w)


def composite_rule(a: float, b: float, spec: QuadratureSpec, k_max: float | None = None) -> Rule1D:
    """Composite Gauss-Legendre over equal panels of [a, b].

    With an oscillation hint ``k_max`` the panel count is raised to at least
    ceil((b - a) * k_max / pi), i.e. no panel is wider than half a period of
    sin(k_max * r).
    """
    if not a < b:
        raise DomainError(f"need a < b, got [{a}, {b}]")
    panels = spec.radial_panels
    if k_max is not None and k_max > 0:
        panels = max(panels, math.ceil((b - a) * k_max / math.pi))
    base = gauss_legendre(spec.radial_order)
    edges = np.linspace(a, b, panels + 1)
    half = 0.5 * np.diff(edges)
    mid = 0.5 * (edges[:-1] + edges[1:])
    nodes = (mid[:, None] + half[:, None] * base.nodes[None, :]).ravel()
    weights = (half[:, None] * base.weights[None, :]).ravel()
    return Rule1D(nodes, weights)


def integrate_radial(f, a: float, b: float, spec: QuadratureSpec | None = None,
                     k_max: float | None = None) -> float:
    """Integrate a vectorized real function over [a, b] by composite Gauss-Legendre."""
    rule = composite_rule(a, b, spec or QuadratureSpec(), k_max)
    return rule.integrate(f)


def rotation_matrix(axis, angle: float) -> np.ndarray:
    axis = np.asarray(axis, dtype=float)
    axis = axis / np.linalg.norm(axis)
    x, y, z = axis
    c, s = math.cos(angle), math.sin(angle)
    C = 1.0 - c
    return np.array([
        [c + x * x * C, x * y * C - z * s, x * z * C + y * s],
        [y * x * C + z * s, c + y * y * C, y * z * C - x * s],
        [z * x * C - y * s, z * y * C + x * s, c + z * z * C],
    ])


def sphere_rule(spec: QuadratureSpec, rotation: np.ndarray | None = None) -> SphereRule:
    """Gauss-Legendre in cos(theta) times the periodic trapezoid rule in phi.

    Exact for spherical polynomials of degree <= min(2*theta_order - 1,
    phi_points - 1). An optional 3x3 rotation is applied to the nodes
    (weights unchanged); rotated rules keep the same exactness degree.
    """
    gl = gauss_legendre(spec.theta_order)
    P = spec.phi_points
    phi = 2.0 * np.pi * np.arange(P) / P
    theta = np.arccos(gl.nodes)
    T, F = np.meshgrid(theta, phi, indexing="ij")
    W = np.outer(gl.weights, np.full(P, 2.0 * np.pi / P))
    T, F, W = T.ravel(), F.ravel(), W.ravel()
    if rotation is not None:
        xyz = np.stack([np.sin(T) * np.cos(F), np.sin(T) * np.sin(F), np.cos(T)])
        xyz = np.asarray(rotation) @ xyz
        T = np.arccos(np.clip(xyz[2], -1.0, 1.0))
        F = np.mod(np.arctan2(xyz[1], xyz[0]), 2.0 * np.pi)
    return SphereRule(T, F, W)
