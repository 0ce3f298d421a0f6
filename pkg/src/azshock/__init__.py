"""Shock formation and development toolkit for azimuthal Euler flow."""

__version__ = "0.1.0"

from . import errors
from .riemann import (
    AzimuthalPoint,
    PhysicalState,
    WaveSpeeds,
    SpecificVorticity,
    AdmissibilityReport,
    wave_speeds,
    to_physical,
    entropy_jump_closed_form,
    entropy_jump_residual_general_gamma,
    entropy_series,
    lax_check,
    mass_flux,
    specific_vorticity,
)

__all__ = [
    "errors",
    "AzimuthalPoint",
    "PhysicalState",
    "WaveSpeeds",
    "SpecificVorticity",
    "AdmissibilityReport",
    "wave_speeds",
    "to_physical",
    "entropy_jump_closed_form",
    "entropy_jump_residual_general_gamma",
    "entropy_series",
    "lax_check",
    "mass_flux",
    "specific_vorticity",
]
