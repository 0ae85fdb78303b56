"""Medium with nonzero wave speed u: on-shell kinematics from the energy
delta, threshold detection, the squared amplitude on shell, the excitation
rate, and its u -> 0 reduction.

The energy balance Omega_e + sqrt(u^2|p|^2 + Omega_m^2) = v*p_y restricts
the final momentum to roots of a quadratic in p_y; only roots with
v*p_y - Omega_e > 0 solve the unsquared constraint. For u < v exactly one
such root exists, and none exists for u >= v (the threshold).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from . import kernels
from .density import RateResult
from .errors import (
    DegenerateKinematics,
    EvanescenceViolated,
    ThresholdViolated,
)
from .params import ModelParams, derive_scales, validate
from .quadrature import (
    QuadratureSettings,
    integrate_semi_infinite_decaying,
    truncation_k_max,
)

__all__ = [
    "OnShellSolution",
    "on_shell_py",
    "threshold_allowed",
    "squared_amplitude_on_shell",
    "dispersive_rate",
]


@dataclass(frozen=True)
class OnShellSolution:
    """Root of the on-shell energy balance at fixed p_x.

    p_y: on-shell momentum along the motion; omega_p: medium dispersion
    energy sqrt(u^2|p|^2 + Omega_m^2); jacobian: |d/dp_y of
    (Omega_e + omega_p - v p_y)| on shell; admissible: v*p_y - Omega_e > 0.
    """

    p_y: float
    omega_p: float
    jacobian: float
    admissible: bool


def threshold_allowed(params: ModelParams) -> bool:
    """Kinematic threshold: the process requires v > u."""
    p = validate(params)
    return p.v > p.u


def on_shell_py(
    p_x: float,
    params: ModelParams,
    settings: QuadratureSettings | None = None,
) -> list[OnShellSolution]:
    """All admissible on-shell roots p_y at the given p_x.

    Solves (v^2-u^2) p_y^2 - 2 v Omega_e p_y + (Omega_e^2 - Omega_m^2
    - u^2 p_x^2) = 0 and keeps the roots with v*p_y - Omega_e > 0 (those
    are exactly the solutions of the unsquared energy balance). Returns an
    empty list when the process is forbidden; raises DegenerateKinematics
    at v = u where the quadratic collapses.
    """
    p = validate(params)
    v, u, oe, om = p.v, p.u, p.omega_e, p.omega_m
    if v == u:
        raise DegenerateKinematics(
            f"on-shell quadratic degenerates at v = u = {v}"
        )
    if u == 0.0:
        # quadratic factors exactly: roots (oe +- om)/v, only + admissible
        p_y = (oe + om) / v
        return [
            OnShellSolution(p_y=p_y, omega_p=om, jacobian=v, admissible=True)
        ]
    lead = v * v - u * u
    disc = v * v * oe * oe - lead * (oe * oe - om * om - u * u * p_x * p_x)
    if disc < 0.0:
        return []
    root = math.sqrt(disc)
    solutions = []
    for p_y in sorted({(v * oe - root) / lead, (v * oe + root) / lead}):
        if v * p_y - oe <= 0.0:
            continue
        omega_p = math.sqrt(u * u * (p_x * p_x + p_y * p_y) + om * om)
        jacobian = abs(v - u * u * p_y / omega_p)
        solutions.append(
            OnShellSolution(
                p_y=p_y, omega_p=omega_p, jacobian=jacobian, admissible=True
            )
        )
    return solutions


def squared_amplitude_on_shell(
    p_x: float, sol: OnShellSolution, params: ModelParams
) -> float:
    """|amplitude|^2 on the energy shell, stripped of box normalization
    and the squared delta:

        g^2 lam^2 exp(-2 a W) / (m Omega_e W^2 omega_p),

    with W = sqrt(|p|^2 (1 - u^2) - Omega_m^2).
    """
    p = validate(params)
    if not sol.admissible:
        raise EvanescenceViolated("amplitude requested on an inadmissible root")
    p_sq = p_x * p_x + sol.p_y * sol.p_y
    w_sq = p_sq * (1.0 - p.u * p.u) - p.omega_m * p.omega_m
    if w_sq <= 0.0:
        raise EvanescenceViolated(
            f"W^2 = {w_sq} <= 0 at p_x={p_x}, p_y={sol.p_y}"
        )
    w = math.sqrt(w_sq)
    return (p.g * p.lam) ** 2 * math.exp(-2.0 * p.a * w) / (
        p.m * p.omega_e * w_sq * sol.omega_p
    )


def dispersive_rate(
    params: ModelParams, settings: QuadratureSettings | None = None
) -> RateResult:
    """Excitation probability per unit time for medium wave speed u,

        P(u) = (1/2pi) integral dp_x  sum_roots |amplitude|^2 / jacobian,

    the squared energy delta having been traded for the per-unit-time
    division. p_x runs over the full line, folded to 2*[0, inf) by
    evenness. At u = 0 this reduces to
    g^2 lam^2/(pi m v Omega_e Omega_m) * integral_0^inf dp_x
    exp(-2aW)/W^2 with W^2 = p_x^2 + Omega^2.
    """
    settings = settings or QuadratureSettings()
    p = validate(params)
    if not threshold_allowed(p):
        raise ThresholdViolated(
            f"process forbidden: v = {p.v} <= u = {p.u}"
        )
    sc = derive_scales(p)

    def f(px):
        return kernels.dispersive_rate_integrand(
            px, p.v, p.u, p.omega_e, p.omega_m, p.a
        )

    # W >= sqrt(1-u^2)*p_x bounds the integrand tail by an exponential;
    # the evanescent scale W(0) marks where the flat region ends
    w0_sq = _w_squared_at_origin(p)
    decay = 1.0 / (2.0 * p.a * math.sqrt(1.0 - p.u * p.u))
    k_max = truncation_k_max(
        decay, settings, scale_hint=max(sc.omega_cap, math.sqrt(w0_sq))
    )
    res = integrate_semi_infinite_decaying(f, decay, settings, k_max=k_max)
    pref = (p.g * p.lam) ** 2 / (math.pi * p.m * p.omega_e)
    return RateResult(rate=pref * res.value, error_estimate=pref * res.error_estimate)


def _w_squared_at_origin(p: ModelParams) -> float:
    sols = on_shell_py(0.0, p)
    p_y = sols[0].p_y
    return p_y * p_y * (1.0 - p.u * p.u) - p.omega_m * p.omega_m
