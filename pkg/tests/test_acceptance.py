"""Acceptance suite: one test per exit criterion, each printing a
PASS/FAIL line with the measured residual, its bound, and the runtime
where one is mandated.

Criterion 1 runs the full stress grid including corner points whose true
value lies as much as forty decades below the integrand scale; there the
relative target exceeds what 53-bit floating point can represent for any
real-axis quadrature (rounding noise eps*int|f| dominates), so that
criterion fails honestly at those points. The conditioning analysis is
printed alongside the result.
"""

import math
import time

import numpy as np
import pytest

from qfriction import kernels
from qfriction.cli import run_figure2, RunConfig
from qfriction.density import (
    amplitude_kernel_integral,
    rate_from_density,
    rho_point,
    smeared_amplitude,
    total_rate,
)
from qfriction.dispersive import dispersive_rate, on_shell_py
from qfriction.errors import ThresholdViolated
from qfriction.params import ModelParams, derive_scales
from qfriction.quadrature import (
    QuadratureSettings,
    cosine_transform_even,
    integrate_finite,
)
from qfriction.specfun import SmearingWidths, bessel_k0

SETTINGS = QuadratureSettings()
FIGURE2_SETS = ((0.01, 1.0), (0.01, 1.5), (0.02, 1.0), (0.02, 1.5))

SPEED_SWEEP = (
    (0.05, 1.0), (0.1, 0.5), (0.1, 1.0), (0.1, 1.5), (0.2, 2.0),
    (0.3, 1.0), (0.5, 0.5), (0.5, 1.5), (0.7, 1.0), (0.9, 0.75),
)


def _report(number, name, ok, measured, bound, extra=""):
    status = "PASS" if ok else "FAIL"
    print(
        f"ACCEPTANCE {number} {name} {status} "
        f"measured={measured:.6e} bound={bound:.6e}{extra}"
    )


def test_criterion_01_k0_oracle_equivalence():
    start = time.perf_counter()
    worst = 0.0
    failures = []
    for v, f in SPEED_SWEEP:
        omega = math.sqrt(((1.0 + f) / v) ** 2 - f * f)
        for om_a in np.geomspace(0.05, 5.0, 10):
            a = float(om_a) / omega
            p = ModelParams(omega_e=1.0, omega_m=f, v=v, a=a)
            for ratio in np.linspace(0.0, 20.0, 10):
                xi = float(ratio) * a
                got = amplitude_kernel_integral(xi, p, SETTINGS)
                want = 2.0 * bessel_k0(omega * math.hypot(xi, a))
                rel = abs(got / want - 1.0)
                worst = max(worst, rel)
                if rel > 1e-8:
                    failures.append((rel, float(om_a), float(ratio)))
    elapsed = time.perf_counter() - start
    ok = worst <= 1e-8 and elapsed < 10.0
    extra = f" runtime={elapsed:.2f}s"
    if failures:
        z_min = min(
            om_a * math.hypot(r, 1.0) for _, om_a, r in failures
        )
        extra += (
            f" exceeded_at={len(failures)}/1000 points, all with"
            f" Omega*sqrt(xi^2+a^2) >= {z_min:.1f}, where the true value"
            " sits below the eps*int|f| rounding floor of double-precision"
            " cosine quadrature"
        )
    _report(1, "k0_oracle_equivalence", ok, worst, 1e-8, extra)
    assert elapsed < 10.0
    assert worst <= 1e-8, (
        f"{len(failures)} grid points exceed the relative bound; the "
        f"smallest failing combined argument is z={z_min:.1f}, beyond the "
        "double-precision conditioning limit of the oscillatory integral"
    )


def test_criterion_02_parseval_consistency():
    start = time.perf_counter()
    worst = 0.0
    for om_a, f in FIGURE2_SETS:
        p = ModelParams.from_figure_inputs(om_a, f, 0.1)
        total = total_rate(p, SETTINGS)
        from_density = rate_from_density(p, SETTINGS)
        worst = max(worst, abs(from_density.rate / total.rate - 1.0))
    elapsed = time.perf_counter() - start
    ok = worst <= 1e-6 and elapsed < 5.0
    _report(2, "parseval_consistency", ok, worst, 1e-6, f" runtime={elapsed:.2f}s")
    assert worst <= 1e-6
    assert elapsed < 5.0


def test_criterion_03_eta_invariance_and_xi_symmetry():
    p = ModelParams.from_figure_inputs(0.01, 1.0, 0.1)
    eta_devs = []
    for eta in (1.0, 7.3, -123.456):
        ref = SmearingWidths(sigma_x=1e-4, sigma_y=1e-4, xi=0.004, eta=0.0)
        moved = SmearingWidths(sigma_x=1e-4, sigma_y=1e-4, xi=0.004, eta=eta)
        t0 = abs(smeared_amplitude(ref, p, SETTINGS))
        t1 = abs(smeared_amplitude(moved, p, SETTINGS))
        eta_devs.append(abs(t1 / t0 - 1.0))
    sym_devs = [
        abs(rho_point(xi, p, SETTINGS) - rho_point(-xi, p, SETTINGS))
        / rho_point(xi, p, SETTINGS)
        for xi in (0.002, 0.03, 0.09)
    ]
    measured = max(max(eta_devs), max(sym_devs))
    ok = max(eta_devs) <= 1e-15 and max(sym_devs) <= 1e-10
    _report(3, "eta_invariance_xi_symmetry", ok, measured, 1e-10)
    assert max(eta_devs) <= 1e-15
    assert max(sym_devs) <= 1e-10


def test_criterion_04_sigma_zero_convergence_order():
    p = ModelParams.from_figure_inputs(0.01, 1.0, 0.1)
    xi = 0.005
    reference = rho_point(xi, p, SETTINGS)
    errors = []
    for sigma in (p.a / 10.0, p.a / 20.0, p.a / 40.0):
        w = SmearingWidths(sigma_x=sigma, sigma_y=sigma, xi=xi)
        ratio = abs(smeared_amplitude(w, p, SETTINGS)) ** 2 / (sigma * sigma)
        errors.append(abs(ratio / reference - 1.0))
    order = min(
        math.log2(errors[0] / errors[1]), math.log2(errors[1] / errors[2])
    )
    ok = order >= 1.8
    _report(4, "sigma_zero_limit_order", ok, order, 1.8)
    assert order >= 1.8


def test_criterion_05_dispersive_kinematics():
    base = ModelParams(omega_e=1.0, omega_m=1.0, v=0.1, a=0.01)
    worst = 0.0
    for u_frac in (0.0, 0.1, 0.5, 0.9):
        p = base.with_(u=u_frac * base.v)
        for px in np.linspace(0.0, 50.0, 11):
            for sol in on_shell_py(float(px), p):
                residual = abs(p.omega_e + sol.omega_p - p.v * sol.p_y) / (
                    p.v * sol.p_y
                )
                worst = max(worst, residual)
    exact_transfer = on_shell_py(4.2, base)[0].p_y == (1.0 + 1.0) / 0.1
    root = on_shell_py(0.0, base.with_(u=0.05))[0].p_y
    worst = max(worst, abs(root / (80.0 / 3.0) - 1.0))
    ok = worst <= 1e-12 and exact_transfer
    _report(5, "dispersive_kinematics", ok, worst, 1e-12)
    assert exact_transfer
    assert worst <= 1e-12


def test_criterion_06_threshold():
    base = ModelParams(omega_e=1.0, omega_m=1.0, v=0.1, a=0.01)
    violations = 0
    for u in (base.v, 0.15, 0.3):
        try:
            dispersive_rate(base.with_(u=u), SETTINGS)
            violations += 1
        except ThresholdViolated:
            pass
    for u_frac in (0.1, 0.5, 0.9):
        p = base.with_(u=u_frac * base.v)
        for px in np.linspace(0.0, 40.0, 9):
            if len(on_shell_py(float(px), p)) != 1:
                violations += 1
    ok = violations == 0
    _report(6, "threshold_enforcement", ok, float(violations), 0.0)
    assert violations == 0


def test_criterion_07_evanescence_invariant():
    base = ModelParams(omega_e=1.0, omega_m=1.0, v=0.1, a=0.01)
    omega = derive_scales(base).omega_cap
    min_w_sq = math.inf
    for u_frac in (0.1, 0.5, 0.9):
        p = base.with_(u=u_frac * base.v)
        for px in np.linspace(0.0, 10.0 * omega, 25):
            for sol in on_shell_py(float(px), p):
                w_sq = (px * px + sol.p_y**2) * (1.0 - p.u**2) - p.omega_m**2
                min_w_sq = min(min_w_sq, w_sq)
    ok = min_w_sq > 0.0
    _report(7, "evanescence_invariant", ok, min_w_sq, 0.0,
            " (measured must stay above bound)")
    assert min_w_sq > 0.0


def test_criterion_08_u_to_zero_limit_and_prefactor_ratio():
    base = ModelParams(omega_e=1.0, omega_m=1.0, v=0.1, a=0.01)
    p_zero = dispersive_rate(base, SETTINGS).rate
    p_small = dispersive_rate(base.with_(u=1e-3 * base.v), SETTINGS).rate
    continuity = abs(p_small / p_zero - 1.0)
    ratio_dev = abs(
        p_zero / total_rate(base, SETTINGS).rate / (2.0 / math.pi) - 1.0
    )
    ok = continuity <= 1e-3 and ratio_dev <= 1e-6
    _report(8, "u_to_zero_and_prefactor", ok, max(continuity, ratio_dev), 1e-3,
            f" (prefactor ratio deviation {ratio_dev:.3e} vs 1e-6)")
    assert continuity <= 1e-3
    assert ratio_dev <= 1e-6


def test_criterion_09_figure_regeneration(tmp_path):
    start = time.perf_counter()
    config = RunConfig(command="figure2", out_dir=str(tmp_path))
    written = run_figure2(config)
    elapsed = time.perf_counter() - start

    names = [p.name for p in written]
    assert names == ["001-1.dat", "002-1.dat", "001-15.dat", "002-15.dat"]
    curves = {}
    worst_asym = 0.0
    for path in written:
        rows = np.array(
            [[float(t) for t in line.split()] for line in path.read_text().splitlines()]
        )
        assert rows.shape == (401, 2)
        ys = rows[:, 1]
        worst_asym = max(worst_asym, float(np.max(np.abs(ys - ys[::-1]) / ys)))
        curves[path.name] = ys
    peak = {name: curves[name][200] for name in curves}
    ordered = (
        peak["001-1.dat"] > peak["001-15.dat"]
        > peak["002-1.dat"] > peak["002-15.dat"]
    )
    ok = worst_asym <= 1e-8 and ordered and elapsed < 30.0
    _report(9, "figure_regeneration", ok, worst_asym, 1e-8,
            f" runtime={elapsed:.2f}s ordering={'ok' if ordered else 'BROKEN'}")
    assert worst_asym <= 1e-8
    assert ordered
    assert elapsed < 30.0


def test_criterion_10_quadrature_engine():
    cases = [
        (integrate_finite(lambda x: x * x, 0.0, 1.0, SETTINGS).value, 1.0 / 3.0),
        (integrate_finite(np.sin, 0.0, math.pi, SETTINGS).value, 2.0),
        (
            integrate_finite(
                lambda x: 4.0 / (1.0 + x * x), 0.0, 1.0, SETTINGS
            ).value,
            math.pi,
        ),
        (
            cosine_transform_even(lambda k: np.exp(-k * k), 0.0, SETTINGS).value,
            math.sqrt(math.pi),
        ),
    ]
    worst = max(abs(got / want - 1.0) for got, want in cases)
    ok = worst <= 1e-10
    _report(10, "quadrature_closed_forms", ok, worst, 1e-10)
    assert worst <= 1e-10
