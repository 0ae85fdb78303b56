"""Hot numeric kernels: integrand evaluators shared by every observable.

Each kernel is written once as a plain numpy array function and bound to
either that pure-numpy implementation or a numba ``@njit`` compilation of
it. The JIT backend is the default whenever numba imports; setting the
environment variable ``QFRICTION_NO_NUMBA=1`` before import selects the
numpy fallback. ``set_backend``/``active_backend`` switch at runtime
(used by the benchmark); the rest of the package always calls through the
module attributes so the switch takes effect everywhere.

All kernels accept a float64 ndarray of abscissae plus scalar parameters
and return a float64 ndarray; they are side-effect free.
"""

from __future__ import annotations

import os

import numpy as np


def _evanescent_kernel(k, a, omega):
    w = np.sqrt(k * k + omega * omega)
    return np.exp(-a * w) / w


def _squared_evanescent_kernel(k, a, omega):
    w2 = k * k + omega * omega
    return np.exp(-2.0 * a * np.sqrt(w2)) / w2


def _gaussian_evanescent_kernel(k, a, omega, sigma_x):
    w = np.sqrt(k * k + omega * omega)
    return np.exp(-sigma_x * sigma_x * k * k - a * w) / w


def _cosh_decay_kernel(t, s):
    return np.exp(-s * np.cosh(t))


def _cosh_decay_over_cosh_kernel(t, s):
    c = np.cosh(t)
    return np.exp(-s * c) / c


def _dispersive_rate_integrand(px, v, u, omega_e, omega_m, a):
    # single admissible on-shell root for v > u; contribution already
    # divided by the energy-delta Jacobian: exp(-2aW) / (W^2 sqrt(disc))
    vv = v * v
    uu = u * u
    disc = vv * omega_e * omega_e - (vv - uu) * (
        omega_e * omega_e - omega_m * omega_m - uu * px * px
    )
    rd = np.sqrt(disc)
    py = (v * omega_e + rd) / (vv - uu)
    w2 = (px * px + py * py) * (1.0 - uu) - omega_m * omega_m
    return np.exp(-2.0 * a * np.sqrt(w2)) / (w2 * rd)


_PURE = {
    "evanescent_kernel": _evanescent_kernel,
    "squared_evanescent_kernel": _squared_evanescent_kernel,
    "gaussian_evanescent_kernel": _gaussian_evanescent_kernel,
    "cosh_decay_kernel": _cosh_decay_kernel,
    "cosh_decay_over_cosh_kernel": _cosh_decay_over_cosh_kernel,
    "dispersive_rate_integrand": _dispersive_rate_integrand,
}

BACKENDS: dict[str, dict] = {"numpy": dict(_PURE)}

try:
    if os.environ.get("QFRICTION_NO_NUMBA", "") not in ("", "0"):
        raise ImportError("numba disabled by QFRICTION_NO_NUMBA")
    from numba import njit

    BACKENDS["numba"] = {
        name: njit(cache=True)(fn) for name, fn in _PURE.items()
    }
    _DEFAULT = "numba"
except ImportError:
    _DEFAULT = "numpy"

_ACTIVE = _DEFAULT


def set_backend(name: str) -> None:
    """Bind the module-level kernel names to the given backend."""
    global _ACTIVE
    if name not in BACKENDS:
        raise ValueError(
            f"unknown backend {name!r}; available: {sorted(BACKENDS)}"
        )
    for fname, fn in BACKENDS[name].items():
        globals()[fname] = fn
    _ACTIVE = name


def active_backend() -> str:
    return _ACTIVE


_EXTRA_ARGS = {
    "evanescent_kernel": (0.5, 2.0),
    "squared_evanescent_kernel": (0.5, 2.0),
    "gaussian_evanescent_kernel": (0.5, 2.0, 0.1),
    "cosh_decay_kernel": (0.5,),
    "cosh_decay_over_cosh_kernel": (0.5,),
    "dispersive_rate_integrand": (0.5, 0.1, 1.0, 1.0, 0.01),
}


def warm_up() -> None:
    """Trigger JIT compilation of every kernel (no-op on the numpy backend)."""
    x = np.linspace(0.1, 1.0, 4)
    for name, fn in BACKENDS[_ACTIVE].items():
        fn(x, *_EXTRA_ARGS[name])


set_backend(_DEFAULT)
