import math

import numpy as np
import pytest

from qfriction.errors import (
    DistanceNonPositive,
    FrequencyNonPositive,
    MassNonPositive,
    MediumSpeedOutOfRange,
    SpeedOutOfRange,
)
from qfriction.params import ModelParams, derive_scales, validate


def test_figure_parameterization_is_valid():
    p = ModelParams.from_figure_inputs(0.01, 1.0, 0.1)
    assert validate(p) is p
    assert p.omega_e == 1.0 and p.omega_m == 1.0
    assert p.a == 0.01 and p.v == 0.1 and p.u == 0.0
    assert p.g == p.lam == p.m == 1.0


@pytest.mark.parametrize(
    "changes, error",
    [
        ({"v": 1.5}, SpeedOutOfRange),
        ({"v": 1.0}, SpeedOutOfRange),
        ({"v": 0.0}, SpeedOutOfRange),
        ({"a": 0.0}, DistanceNonPositive),
        ({"a": -1.0}, DistanceNonPositive),
        ({"m": 0.0}, MassNonPositive),
        ({"omega_e": 0.0}, FrequencyNonPositive),
        ({"omega_m": -2.0}, FrequencyNonPositive),
        ({"u": 1.0}, MediumSpeedOutOfRange),
        ({"u": -0.1}, MediumSpeedOutOfRange),
    ],
)
def test_validate_reports_first_violation(changes, error):
    p = ModelParams(omega_e=1.0, omega_m=1.0, v=0.1, a=0.01).with_(**changes)
    with pytest.raises(error):
        validate(p)


def test_derive_scales_direct_substitution():
    sc = derive_scales(ModelParams(omega_e=1.0, omega_m=1.0, v=0.1, a=0.01))
    assert sc.k_transfer == pytest.approx(20.0, rel=1e-15)
    assert sc.omega_cap**2 == pytest.approx(399.0, rel=1e-15)
    assert sc.f_ratio == 1.0

    sc = derive_scales(ModelParams(omega_e=1.0, omega_m=1.5, v=0.1, a=0.01))
    assert sc.omega_cap**2 == pytest.approx(622.75, rel=1e-15)


def test_derive_scales_limiting_speed():
    # v = 1 closes algebraically even though validate() rejects it
    sc = derive_scales(ModelParams(omega_e=1.0, omega_m=1.0, v=1.0, a=0.01))
    assert sc.omega_cap**2 == pytest.approx(3.0, rel=1e-15)


def test_scales_finite_and_positive_across_speed_range():
    for v in np.linspace(1e-3, 1.0, 200):
        for f in (0.25, 1.0, 4.0):
            sc = derive_scales(ModelParams(omega_e=1.0, omega_m=f, v=v, a=1.0))
            assert math.isfinite(sc.omega_cap)
            assert sc.omega_cap > 0.0
            assert sc.k_transfer > sc.omega_cap


def test_transfer_momentum_identity():
    # k_transfer^2 - Omega^2 = Omega_m^2 exactly, by construction
    for v in (0.05, 0.1, 0.3, 0.77):
        for f in (0.5, 1.0, 2.5):
            p = ModelParams(omega_e=1.0, omega_m=f, v=v, a=0.3)
            sc = derive_scales(p)
            identity = sc.k_transfer**2 - sc.omega_cap**2
            assert identity == pytest.approx(f * f, rel=4e-16)
