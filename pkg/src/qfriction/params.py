"""Physical parameters and derived kinematic scales.

All quantities are in natural units (c = hbar = 1). Frequencies, momenta
and inverse lengths share units; the conventional choice throughout the
package is Omega_e = 1, in which the figure-style inputs (Omega_e*a, f, v)
map onto absolute parameters by a pure rescaling.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace

from .errors import (
    DistanceNonPositive,
    FrequencyNonPositive,
    MassNonPositive,
    MediumSpeedOutOfRange,
    SpeedOutOfRange,
)


@dataclass(frozen=True)
class ModelParams:
    """Inputs of the scalar atom-plane model.

    Attributes
    ----------
    g : atom-field coupling.
    lam : medium-field coupling.
    m : mass of the electron oscillator.
    omega_e : atom gap frequency (> 0).
    omega_m : medium oscillator frequency (> 0).
    v : atom speed as a fraction of the light speed, 0 < v < 1.
    a : atom-plane distance (> 0).
    u : wave speed in the medium, 0 <= u < 1 (0 for the dispersionless
        medium).
    """

    omega_e: float
    omega_m: float
    v: float
    a: float
    g: float = 1.0
    lam: float = 1.0
    m: float = 1.0
    u: float = 0.0

    @classmethod
    def from_figure_inputs(
        cls,
        omega_e_a: float,
        f_ratio: float,
        v: float,
        *,
        u: float = 0.0,
        g: float = 1.0,
        lam: float = 1.0,
        m: float = 1.0,
    ) -> "ModelParams":
        """Build parameters from the dimensionless triple (Omega_e*a, f, v).

        Works in Omega_e = 1 units: a = omega_e_a, omega_m = f_ratio.
        """
        return cls(
            omega_e=1.0,
            omega_m=float(f_ratio),
            v=float(v),
            a=float(omega_e_a),
            u=float(u),
            g=float(g),
            lam=float(lam),
            m=float(m),
        )

    def with_(self, **changes) -> "ModelParams":
        """Copy with selected fields replaced."""
        return replace(self, **changes)


@dataclass(frozen=True)
class DerivedScales:
    """Kinematic scales fixed by the on-shell energy balance.

    omega_cap is the evanescent momentum scale
    sqrt(((omega_e + omega_m)/v)^2 - omega_m^2); k_transfer the fixed
    y-momentum transfer (omega_e + omega_m)/v; f_ratio = omega_m/omega_e.
    """

    omega_cap: float
    k_transfer: float
    f_ratio: float


def validate(params: ModelParams) -> ModelParams:
    """Check every model invariant, returning ``params`` unchanged.

    Raises the error named after the first violated invariant:
    MassNonPositive, FrequencyNonPositive, SpeedOutOfRange,
    DistanceNonPositive or MediumSpeedOutOfRange.
    """
    if not params.m > 0:
        raise MassNonPositive(f"m must be > 0, got {params.m}")
    if not params.omega_e > 0:
        raise FrequencyNonPositive(f"omega_e must be > 0, got {params.omega_e}")
    if not params.omega_m > 0:
        raise FrequencyNonPositive(f"omega_m must be > 0, got {params.omega_m}")
    if not 0.0 < params.v < 1.0:
        raise SpeedOutOfRange(f"v must satisfy 0 < v < 1, got {params.v}")
    if not params.a > 0:
        raise DistanceNonPositive(f"a must be > 0, got {params.a}")
    if not 0.0 <= params.u < 1.0:
        raise MediumSpeedOutOfRange(f"u must satisfy 0 <= u < 1, got {params.u}")
    return params


def derive_scales(params: ModelParams) -> DerivedScales:
    """Compute the evanescent scale and momentum transfer.

    The radicand ((omega_e + omega_m)/v)^2 - omega_m^2 is strictly positive
    for any 0 < v <= 1, so the result is always real; v = 1 is accepted
    here (the algebra still closes) although validate() rejects it.
    """
    k_transfer = (params.omega_e + params.omega_m) / params.v
    radicand = k_transfer * k_transfer - params.omega_m * params.omega_m
    return DerivedScales(
        omega_cap=math.sqrt(radicand),
        k_transfer=k_transfer,
        f_ratio=params.omega_m / params.omega_e,
    )
