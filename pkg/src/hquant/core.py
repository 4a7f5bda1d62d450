"""Domain types and physical constants shared by every other module."""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, replace

import numpy as np

EPSILON0_SI = 8.8541878128e-12  # F/m, CODATA 2018
C_SI = 299792458.0  # m/s, exact


class DomainError(ValueError):
    """An argument lies outside the domain of the operation."""


class SetupError(DomainError):
    """Aggregated report of every violated PhysicalSetup invariant."""

    def __init__(self, errors: list[str]):
        self.errors = list(errors)
        super().__init__("invalid setup: " + "; ".join(self.errors))


@dataclass(frozen=True)
class PhysicalSetup:
    """Constants and geometry of the quantization volume.

    ``R`` and ``V`` are independent; use :func:`spherical_volume` when the
    volume is meant to be the ball of radius ``R``.
    """

    epsilon0: float = EPSILON0_SI
    c: float = C_SI
    R: float = 1.0
    V: float = 1.0
    E0: float = 1.0

    @classmethod
    def natural(cls, R: float = 1.0, V: float = 1.0, E0: float = 1.0) -> "PhysicalSetup":
        return cls(epsilon0=1.0, c=1.0, R=R, V=V, E0=E0)

    @property
    def mu0(self) -> float:
        return 1.0 / (self.epsilon0 * self.c**2)

    def with_(self, **changes) -> "PhysicalSetup":
        return replace(self, **changes)


def spherical_volume(R: float) -> float:
    if not R > 0:
        raise DomainError(f"radius must be positive, got R={R}")
    return 4.0 / 3.0 * math.pi * R**3


def validate_setup(setup: PhysicalSetup) -> PhysicalSetup:
    """Return ``setup`` unchanged, or raise SetupError naming every bad field."""
    errors = []
    for name in ("epsilon0", "c", "R", "V"):
        value = getattr(setup, name)
        if not (math.isfinite(value) and value > 0):
            errors.append(f"{name} must be finite and > 0 (got {value})")
    if not (math.isfinite(setup.E0) and setup.E0 >= 0):
        errors.append(f"E0 must be finite and >= 0 (got {setup.E0})")
    if errors:
        raise SetupError(errors)
    return setup


@dataclass(frozen=True)
class ModeIndex:
    n: int
    m: int = 0

    def __post_init__(self):
        if int(self.n) != self.n or self.n < 0:
            raise DomainError(f"order n must be a non-negative integer, got {self.n}")
        if int(self.m) != self.m or abs(self.m) > self.n:
            raise DomainError(f"need |m| <= n, got n={self.n}, m={self.m}")

    @staticmethod
    def family(n: int) -> list["ModeIndex"]:
        """All 2n+1 indices of order n, m ascending."""
        return [ModeIndex(n, m) for m in range(-n, n + 1)]


class Polarization(enum.Enum):
    LINEAR1 = "linear1"
    LINEAR2 = "linear2"
    CIRCULAR_PLUS = "plus"
    CIRCULAR_MINUS = "minus"

    @property
    def helicity(self) -> int:
        return {"plus": 1, "minus": -1}.get(self.value, 0)

    @property
    def is_circular(self) -> bool:
        return self.helicity != 0


def transverse_basis(khat) -> tuple[np.ndarray, np.ndarray]:
    """Right-handed orthonormal pair (e1, e2) with e1 x e2 = khat.

    e1 comes from crossing khat with the coordinate axis along which khat has
    its smallest component (first such axis on ties), so the pair is a pure
    function of khat.
    """
    k = np.asarray(khat, dtype=float)
    axis = np.zeros(3)
    axis[int(np.argmin(np.abs(k)))] = 1.0
    e1 = np.cross(k, axis)
    e1 /= np.linalg.norm(e1)
    e2 = np.cross(k, e1)
    return e1, e2


@dataclass(frozen=True)
class FieldSpec:
    """A single-mode multipole field of order n and wavenumber k.

    ``epsilon0`` and ``c`` default to natural units; :meth:`from_setup` copies
    them (and E0) from a PhysicalSetup. The angular frequency is always c*k.
    """

    n: int
    k: float
    E0: float = 1.0
    polarization: Polarization = Polarization.CIRCULAR_PLUS
    khat: tuple[float, float, float] = (0.0, 0.0, 1.0)
    epsilon0: float = 1.0
    c: float = 1.0

    def __post_init__(self):
        ModeIndex(self.n)
        if not (math.isfinite(self.k) and self.k > 0):
            raise DomainError(f"wavenumber must be positive, got k={self.k}")
        if not (math.isfinite(self.E0) and self.E0 >= 0):
            raise DomainError(f"amplitude must be >= 0, got E0={self.E0}")
        if not (self.epsilon0 > 0 and self.c > 0):
            raise DomainError("epsilon0 and c must be positive")
        if not isinstance(self.polarization, Polarization):
            object.__setattr__(self, "polarization", Polarization(self.polarization))
        khat = tuple(float(v) for v in self.khat)
        if len(khat) != 3 or abs(math.sqrt(sum(v * v for v in khat)) - 1.0) > 1e-12:
            raise DomainError(f"khat must be a unit 3-vector, got {self.khat}")
        object.__setattr__(self, "khat", khat)

    @classmethod
    def from_setup(cls, setup: PhysicalSetup, n: int, k: float, **kwargs) -> "FieldSpec":
        validate_setup(setup)
        return cls(n=n, k=k, E0=setup.E0, epsilon0=setup.epsilon0, c=setup.c, **kwargs)

    @property
    def omega(self) -> float:
        return self.c * self.k

    @property
    def period(self) -> float:
        return 2.0 * math.pi / self.omega

    def polarization_vector(self) -> np.ndarray:
        """Complex unit polarization vector, shape (3,)."""
        e1, e2 = transverse_basis(self.khat)
        lam = self.polarization.helicity
        if self.polarization is Polarization.LINEAR1:
            return e1.astype(complex)
        if self.polarization is Polarization.LINEAR2:
            return e2.astype(complex)
        return (e1 + 1j * lam * e2) / math.sqrt(2.0)


def vec3c(x=0j, y=0j, z=0j) -> np.ndarray:
    """Complex 3-vector as a numpy array of shape (3,)."""
    return np.array([x, y, z], dtype=complex)


@dataclass(frozen=True)
class QuadratureSpec:
    """Orders of the angular and radial quadrature rules.

    The angular product rule with ``theta_order >= n+1`` and
    ``phi_points >= 2n+2`` integrates every product of two order-n spherical
    harmonics exactly.
    """

    theta_order: int = 8
    phi_points: int = 16
    radial_panels: int = 8
    radial_order: int = 16

    def __post_init__(self):
        for name in ("theta_order", "phi_points", "radial_panels", "radial_order"):
            value = getattr(self, name)
            if int(value) != value or value < 1:
                raise DomainError(f"{name} must be an integer >= 1, got {value}")

    @classmethod
    def sufficient_for(cls, n: int, **radial) -> "QuadratureSpec":
        return cls(theta_order=n + 1, phi_points=2 * n + 2, **radial)

    def covers(self, n: int) -> bool:
        return self.theta_order >= n + 1 and self.phi_points >= 2 * n + 2

    def at_least(self, n: int) -> "QuadratureSpec":
        """This spec with angular orders raised just enough to cover order n."""
        return replace(
            self,
            theta_order=max(self.theta_order, n + 1),
            phi_points=max(self.phi_points, 2 * n + 2),
        )


SI = PhysicalSetup()
NATURAL = PhysicalSetup.natural()
