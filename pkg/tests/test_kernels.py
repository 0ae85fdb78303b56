import os
import subprocess
import sys

import numpy as np
import pytest

from qfriction import kernels


@pytest.fixture
def sample_grid():
    rng = np.random.default_rng(20240811)
    return rng.uniform(0.0, 40.0, size=512)


def test_numpy_backend_formulas(sample_grid):
    k = sample_grid
    a, omega = 0.02, 19.97
    ev = kernels.BACKENDS["numpy"]["evanescent_kernel"](k, a, omega)
    w = np.sqrt(k * k + omega * omega)
    assert np.allclose(ev, np.exp(-a * w) / w, rtol=1e-15, atol=0.0)

    sq = kernels.BACKENDS["numpy"]["squared_evanescent_kernel"](k, a, omega)
    assert np.allclose(sq, np.exp(-2 * a * w) / (w * w), rtol=1e-15, atol=0.0)

    gauss = kernels.BACKENDS["numpy"]["gaussian_evanescent_kernel"](k, a, omega, 0.003)
    assert np.allclose(
        gauss, np.exp(-0.003**2 * k * k) * np.exp(-a * w) / w, rtol=1e-14, atol=0.0
    )


def test_dispersive_integrand_matches_manual_root(sample_grid):
    v, u, oe, om, a = 0.1, 0.05, 1.0, 1.0, 0.01
    px = sample_grid
    got = kernels.BACKENDS["numpy"]["dispersive_rate_integrand"](px, v, u, oe, om, a)
    disc = v * v * oe * oe - (v * v - u * u) * (oe * oe - om * om - u * u * px * px)
    py = (v * oe + np.sqrt(disc)) / (v * v - u * u)
    w2 = (px * px + py * py) * (1 - u * u) - om * om
    want = np.exp(-2 * a * np.sqrt(w2)) / (w2 * np.sqrt(disc))
    assert np.allclose(got, want, rtol=1e-15, atol=0.0)


@pytest.mark.skipif("numba" not in kernels.BACKENDS, reason="numba unavailable")
def test_backend_parity(sample_grid):
    args = {
        "evanescent_kernel": (0.02, 19.97),
        "squared_evanescent_kernel": (0.02, 19.97),
        "gaussian_evanescent_kernel": (0.02, 19.97, 0.003),
        "cosh_decay_kernel": (0.4,),
        "cosh_decay_over_cosh_kernel": (0.4,),
        "dispersive_rate_integrand": (0.1, 0.05, 1.0, 1.0, 0.01),
    }
    x = np.concatenate([sample_grid[:64] / 10.0, sample_grid[:64]])
    for name, extra in args.items():
        ref = kernels.BACKENDS["numpy"][name](x, *extra)
        jit = kernels.BACKENDS["numba"][name](x, *extra)
        assert np.allclose(jit, ref, rtol=5e-14, atol=0.0), name


def test_set_backend_rebinds_names():
    before = kernels.active_backend()
    try:
        kernels.set_backend("numpy")
        assert kernels.active_backend() == "numpy"
        assert kernels.evanescent_kernel is kernels.BACKENDS["numpy"]["evanescent_kernel"]
    finally:
        kernels.set_backend(before)
    assert kernels.active_backend() == before


def test_set_backend_rejects_unknown():
    with pytest.raises(ValueError):
        kernels.set_backend("fortran")


def test_env_flag_selects_numpy_fallback():
    result = subprocess.run(
        [sys.executable, "-c",
         "from qfriction import kernels; print(kernels.active_backend())"],
        env={**os.environ, "QFRICTION_NO_NUMBA": "1"},
        capture_output=True, text=True, timeout=300,
    )
    assert result.returncode == 0
    assert result.stdout.strip() == "numpy"
