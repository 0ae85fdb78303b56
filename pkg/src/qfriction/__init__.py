"""Quantum-friction observables for an atom moving at constant speed
parallel to a material plane: transition amplitudes, the spatial density
of medium excitations, and total excitation rates, all cross-validated
against independent analytic oracles."""

from .density import (
    DensityPoint,
    DensityProfile,
    RateResult,
    amplitude_kernel_integral,
    density_profile,
    rate_from_density,
    rho_point,
    rho_tilde,
    rho_tilde_normalization,
    smeared_amplitude,
    total_rate,
)
from .dispersive import (
    OnShellSolution,
    dispersive_rate,
    on_shell_py,
    squared_amplitude_on_shell,
    threshold_allowed,
)
from .params import DerivedScales, ModelParams, derive_scales, validate
from .quadrature import (
    IntegrationResult,
    QuadratureSettings,
    cosine_transform_even,
    integrate_finite,
    integrate_semi_infinite_decaying,
)
from .specfun import SmearingWidths, bessel_k0, gaussian_profile

__version__ = "0.1.0"

__all__ = [
    "DensityPoint",
    "DensityProfile",
    "DerivedScales",
    "IntegrationResult",
    "ModelParams",
    "OnShellSolution",
    "QuadratureSettings",
    "RateResult",
    "SmearingWidths",
    "amplitude_kernel_integral",
    "bessel_k0",
    "cosine_transform_even",
    "density_profile",
    "derive_scales",
    "dispersive_rate",
    "gaussian_profile",
    "integrate_finite",
    "integrate_semi_infinite_decaying",
    "on_shell_py",
    "rate_from_density",
    "rho_point",
    "rho_tilde",
    "rho_tilde_normalization",
    "smeared_amplitude",
    "squared_amplitude_on_shell",
    "threshold_allowed",
    "total_rate",
    "validate",
]
