#!/usr/bin/env python3
"""Benchmark the numba-jitted kernels against the pure-numpy fallback.

Measures raw kernel evaluation across array sizes (panel-sized batches up
to full seed batches) and end-to-end observable computations (density
profile, total rate, dispersive rate), then cross-checks numerical
agreement between the backends.

Usage:
    python benchmarks/bench_backends.py [--points N] [--repeats R]

The same comparison can be forced package-wide by setting
QFRICTION_NO_NUMBA=1 before import.
"""

import argparse
import time

import numpy as np

from qfriction import kernels
from qfriction.density import density_profile, total_rate
from qfriction.dispersive import dispersive_rate
from qfriction.params import ModelParams
from qfriction.quadrature import QuadratureSettings

KERNEL_ARGS = {
    "evanescent_kernel": (0.01, 19.975),
    "squared_evanescent_kernel": (0.01, 19.975),
    "gaussian_evanescent_kernel": (0.01, 19.975, 1e-3),
    "cosh_decay_kernel": (0.4,),
    "cosh_decay_over_cosh_kernel": (0.4,),
    "dispersive_rate_integrand": (0.1, 0.05, 1.0, 1.0, 0.01),
}


def _time_call(fn, *args, repeats):
    best = np.inf
    for _ in range(repeats):
        t0 = time.perf_counter()
        fn(*args)
        best = min(best, time.perf_counter() - t0)
    return best


def bench_raw_kernels(repeats):
    sizes = (15, 240, 4096, 65536)
    header = f"{'kernel':<32s}{'n':>8s}{'numpy':>12s}"
    if "numba" in kernels.BACKENDS:
        header += f"{'numba':>12s}{'speedup':>9s}"
    print(header)
    print("-" * len(header))
    for name, extra in KERNEL_ARGS.items():
        for n in sizes:
            x = np.linspace(0.01, 40.0, n)
            t_np = _time_call(
                kernels.BACKENDS["numpy"][name], x, *extra, repeats=repeats
            )
            line = f"{name:<32s}{n:>8d}{t_np * 1e6:>10.2f}us"
            if "numba" in kernels.BACKENDS:
                jit = kernels.BACKENDS["numba"][name]
                jit(x, *extra)  # warm
                t_jit = _time_call(jit, x, *extra, repeats=repeats)
                line += f"{t_jit * 1e6:>10.2f}us{t_np / t_jit:>8.2f}x"
            print(line)
        print()


def bench_observables(points, repeats):
    params = ModelParams.from_figure_inputs(0.01, 1.0, 0.1)
    disp_params = params.with_(u=0.05)
    grid = np.linspace(-0.1, 0.1, points)
    settings = QuadratureSettings()

    tasks = {
        f"density_profile ({points} pts)": lambda: density_profile(
            params, grid, settings
        ),
        "total_rate": lambda: total_rate(params, settings),
        "dispersive_rate (u=0.05)": lambda: dispersive_rate(disp_params, settings),
    }

    results = {}
    available = [b for b in ("numpy", "numba") if b in kernels.BACKENDS]
    original = kernels.active_backend()
    try:
        for backend in available:
            kernels.set_backend(backend)
            for label, task in tasks.items():
                task()  # warm (JIT compile / cache load)
                results[(backend, label)] = _time_call(task, repeats=repeats)
    finally:
        kernels.set_backend(original)

    header = f"{'observable':<28s}{'numpy':>12s}"
    if "numba" in kernels.BACKENDS:
        header += f"{'numba':>12s}{'speedup':>9s}"
    print(header)
    print("-" * len(header))
    for label in tasks:
        t_np = results[("numpy", label)]
        line = f"{label:<28s}{t_np * 1e3:>10.2f}ms"
        if ("numba", label) in results:
            t_jit = results[("numba", label)]
            line += f"{t_jit * 1e3:>10.2f}ms{t_np / t_jit:>8.2f}x"
        print(line)
    print()


def check_agreement(points):
    if "numba" not in kernels.BACKENDS:
        print("numba unavailable; agreement check skipped")
        return True
    params = ModelParams.from_figure_inputs(0.01, 1.0, 0.1)
    grid = np.linspace(-0.1, 0.1, points)
    settings = QuadratureSettings()
    original = kernels.active_backend()
    try:
        kernels.set_backend("numpy")
        ref = density_profile(params, grid, settings).as_arrays()[1]
        kernels.set_backend("numba")
        jit = density_profile(params, grid, settings).as_arrays()[1]
    finally:
        kernels.set_backend(original)
    worst = float(np.max(np.abs(jit / ref - 1.0)))
    ok = worst < 1e-9
    print(f"backend agreement: max relative difference {worst:.3e} "
          f"({'OK' if ok else 'MISMATCH'})")
    return ok


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--points", type=int, default=101,
                        help="density grid size (default: 101)")
    parser.add_argument("--repeats", type=int, default=5,
                        help="timing repetitions, best-of (default: 5)")
    args = parser.parse_args()

    backends = sorted(kernels.BACKENDS)
    print(f"available backends: {', '.join(backends)} "
          f"(active: {kernels.active_backend()})\n")
    bench_raw_kernels(args.repeats)
    bench_observables(args.points, args.repeats)
    return 0 if check_agreement(args.points) else 1


if __name__ == "__main__":
    raise SystemExit(main())
