"""Numerical verification of the classical multipole route to (n + 1/2) quantization."""

from .core import (
    NATURAL,
    SI,
    DomainError,
    FieldSpec,
    ModeIndex,
    PhysicalSetup,
    Polarization,
    QuadratureSpec,
    SetupError,
    spherical_volume,
    validate_setup,
)
from .energy import RadialMode, beta, calibrate_amplitude, mode_energy, mode_sum_energy

__version__ = "0.1.0"
