"""Command-line surface: density curves, rates, figure data files, and the
self-verification suite.

All physical inputs use the dimensionless parameterization
(omega_e_a, f, v) plus optional (u, g, lambda, m); internally everything
runs in Omega_e = 1 units. Data files are two-column ASCII
(Omega_e*xi, rho_tilde) with 17 significant digits, LF line endings and no
header; comment lines appear only behind --comments. Writes are atomic
(write to a temporary file, then rename).

Exit codes: 0 success, 1 verification-check failure, 2 configuration
error, 3 numerical non-convergence.
"""

from __future__ import annotations

import argparse
import os
import sys
import tempfile
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .density import density_profile, total_rate
from .dispersive import dispersive_rate, threshold_allowed
from .errors import ConfigError, QuadratureError, ValidationError
from .params import ModelParams
from .quadrature import QuadratureSettings
from .verify import run_checks

_FIGURE2_FILES = (
    ("001-1.dat", 0.01, 1.0),
    ("002-1.dat", 0.02, 1.0),
    ("001-15.dat", 0.01, 1.5),
    ("002-15.dat", 0.02, 1.5),
)


@dataclass(frozen=True)
class RunConfig:
    """Fully resolved run configuration for one CLI invocation."""

    command: str
    omega_e_a: float | None = None
    f_ratio: float | None = None
    v: float | None = None
    u: float = 0.0
    g: float = 1.0
    lam: float = 1.0
    m: float = 1.0
    xi_lo: float = -0.1
    xi_hi: float = 0.1
    points: int = 401
    out: str | None = None
    out_dir: str = "."
    rel_tol: float | None = None
    comments: bool = False
    quick: bool = False

    def settings(self) -> QuadratureSettings:
        if self.rel_tol is None:
            return QuadratureSettings()
        return QuadratureSettings(rel_tol=self.rel_tol)

    def model_params(self) -> ModelParams:
        if self.omega_e_a is None or self.f_ratio is None or self.v is None:
            raise ConfigError("--omega-e-a, --f and --v are required")
        return ModelParams.from_figure_inputs(
            self.omega_e_a, self.f_ratio, self.v,
            u=self.u, g=self.g, lam=self.lam, m=self.m,
        )


def _format_number(x: float) -> str:
    # 17 significant digits: parses back to the identical float64
    return f"{x:.16e}"


def _write_atomic(path: Path, text: str) -> None:
    path = Path(path)
    fd, tmp = tempfile.mkstemp(
        dir=str(path.parent) or ".", prefix=path.name, suffix=".tmp"
    )
    try:
        with os.fdopen(fd, "w", newline="\n") as handle:
            handle.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _profile_text(config: RunConfig, profile) -> str:
    lines = []
    if config.comments:
        lines.append(
            f"# omega_e_a={_format_number(config.omega_e_a)} "
            f"f={_format_number(config.f_ratio)} "
            f"v={_format_number(config.v)} points={config.points}"
        )
    xs, ys = profile.as_arrays()
    for x, y in zip(xs, ys):
        lines.append(f"{_format_number(x)} {_format_number(y)}")
    return "\n".join(lines) + "\n"


def _parse_xi_range(text: str) -> tuple[float, float]:
    try:
        lo_text, hi_text = text.split(":")
        lo, hi = float(lo_text), float(hi_text)
    except ValueError as exc:
        raise ConfigError(f"--xi-range must be lo:hi, got {text!r}") from exc
    if not lo < hi:
        raise ConfigError(f"--xi-range requires lo < hi, got {text!r}")
    return lo, hi


def _load_config_file(path: str) -> dict[str, str]:
    values: dict[str, str] = {}
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise ConfigError(f"cannot read config file {path}: {exc}") from exc
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if "=" not in line:
            raise ConfigError(f"{path}:{lineno}: expected key=value, got {raw!r}")
        key, _, value = line.partition("=")
        values[key.strip()] = value.strip()
    return values


_CONFIG_KEYS = {
    "omega_e_a": float, "f": float, "v": float, "u": float,
    "g": float, "lambda": float, "m": float,
    "xi_range": str, "points": int, "out": str, "out_dir": str,
    "rel_tol": float,
}


def _merge(args: argparse.Namespace) -> dict:
    """Apply precedence: command-line flags over config-file keys over
    defaults (flags left at None fall through)."""
    merged: dict = {}
    if getattr(args, "config", None):
        raw = _load_config_file(args.config)
        for key, value in raw.items():
            if key not in _CONFIG_KEYS:
                raise ConfigError(f"unknown config key {key!r}")
            try:
                merged[key] = _CONFIG_KEYS[key](value)
            except ValueError as exc:
                raise ConfigError(
                    f"config key {key!r}: cannot parse {value!r}"
                ) from exc
    for key in _CONFIG_KEYS:
        attr = {"lambda": "lam", "f": "f_ratio"}.get(key, key)
        flag_value = getattr(args, attr, None)
        if flag_value is not None:
            merged[key] = flag_value
    return merged


def _build_config(args: argparse.Namespace) -> RunConfig:
    merged = _merge(args)
    xi_lo, xi_hi = _parse_xi_range(merged.get("xi_range", "-0.1:0.1"))
    points = int(merged.get("points", 401))
    if points < 2:
        raise ConfigError(f"--points must be >= 2, got {points}")
    rel_tol = merged.get("rel_tol")
    if rel_tol is not None and not rel_tol > 0:
        raise ConfigError(f"--rel-tol must be > 0, got {rel_tol}")
    return RunConfig(
        command=args.command,
        omega_e_a=merged.get("omega_e_a"),
        f_ratio=merged.get("f"),
        v=merged.get("v"),
        u=merged.get("u", 0.0),
        g=merged.get("g", 1.0),
        lam=merged.get("lambda", 1.0),
        m=merged.get("m", 1.0),
        xi_lo=xi_lo,
        xi_hi=xi_hi,
        points=points,
        out=merged.get("out"),
        out_dir=merged.get("out_dir", "."),
        rel_tol=rel_tol,
        comments=bool(getattr(args, "comments", False)),
        quick=bool(getattr(args, "quick", False)),
    )


def run_density(config: RunConfig):
    """Sample rho_tilde on the configured grid and write the .dat file."""
    if config.out is None:
        raise ConfigError("density requires --out")
    params = config.model_params()
    grid = np.linspace(config.xi_lo, config.xi_hi, config.points)
    profile = density_profile(params, grid, config.settings())
    _write_atomic(Path(config.out), _profile_text(config, profile))
    return profile


def run_rate(config: RunConfig) -> None:
    result = total_rate(config.model_params(), config.settings())
    print(f"total_rate = {_format_number(result.rate)}")
    print(f"error_estimate = {_format_number(result.error_estimate)}")


def run_dispersive_rate(config: RunConfig) -> None:
    params = config.model_params()
    if not threshold_allowed(params):
        raise ConfigError(
            f"process kinematically forbidden: v = {params.v} <= u = {params.u}"
        )
    result = dispersive_rate(params, config.settings())
    print(f"dispersive_rate = {_format_number(result.rate)}")
    print(f"error_estimate = {_format_number(result.error_estimate)}")


def run_figure2(config: RunConfig) -> list[Path]:
    """Emit the four density files for (omega_e_a, f) in
    {0.01, 0.02} x {1.0, 1.5} at v = 0.1 over Omega_e*xi in [-0.1, 0.1]."""
    out_dir = Path(config.out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    written = []
    for name, om_a, f_ratio in _FIGURE2_FILES:
        file_config = RunConfig(
            command="density",
            omega_e_a=om_a,
            f_ratio=f_ratio,
            v=0.1,
            points=config.points,
            xi_lo=config.xi_lo,
            xi_hi=config.xi_hi,
            out=str(out_dir / name),
            rel_tol=config.rel_tol,
            comments=config.comments,
        )
        run_density(file_config)
        written.append(out_dir / name)
        print(f"wrote {out_dir / name}")
    return written


def run_verify(config: RunConfig) -> int:
    results = run_checks(config.settings(), quick=config.quick)
    failures = 0
    for check in results:
        print(check.line())
        if not check.passed:
            failures += 1
    return 1 if failures else 0


def _add_param_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--omega-e-a", dest="omega_e_a", type=float,
                        help="dimensionless atom-plane distance Omega_e*a")
    parser.add_argument("--f", dest="f_ratio", type=float,
                        help="frequency ratio Omega_m/Omega_e")
    parser.add_argument("--v", type=float, help="atom speed (fraction of c)")
    parser.add_argument("--u", type=float, help="medium wave speed (default 0)")
    parser.add_argument("--g", type=float, help="atom-field coupling (default 1)")
    parser.add_argument("--lambda", dest="lam", type=float,
                        help="medium-field coupling (default 1)")
    parser.add_argument("--m", type=float, help="oscillator mass (default 1)")
    parser.add_argument("--rel-tol", dest="rel_tol", type=float,
                        help="quadrature relative tolerance (default 1e-10)")
    parser.add_argument("--config", help="flat key=value config file")


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qfriction",
        description="Quantum-friction excitation densities and rates for an "
                    "atom moving parallel to a material plane.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    density = sub.add_parser("density", help="sample rho_tilde on a xi grid")
    _add_param_flags(density)
    density.add_argument("--xi-range", dest="xi_range",
                         help="grid range lo:hi in Omega_e*xi (default -0.1:0.1)")
    density.add_argument("--points", type=int, help="grid size (default 401)")
    density.add_argument("--out", help="output .dat path")
    density.add_argument("--comments", action="store_true",
                         help="prepend '#' metadata lines")

    rate = sub.add_parser("rate", help="total excitation rate")
    _add_param_flags(rate)

    drate = sub.add_parser("dispersive-rate",
                           help="excitation rate for medium wave speed u")
    _add_param_flags(drate)

    figure2 = sub.add_parser("figure2",
                             help="emit the four standard density files")
    _add_param_flags(figure2)
    figure2.add_argument("--xi-range", dest="xi_range",
                         help="grid range lo:hi (default -0.1:0.1)")
    figure2.add_argument("--points", type=int, help="grid size (default 401)")
    figure2.add_argument("--out-dir", dest="out_dir",
                         help="output directory (default .)")
    figure2.add_argument("--comments", action="store_true",
                         help="prepend '#' metadata lines")

    verify = sub.add_parser("verify", help="run the self-verification suite")
    _add_param_flags(verify)
    verify.add_argument("--quick", action="store_true",
                        help="reduced grids for fast runs")
    return parser


def _normalize_argv(argv: list[str]) -> list[str]:
    # argparse mistakes "-0.1:0.1" for an option; fold the value into
    # --xi-range=... so the documented space-separated form works
    out = []
    skip = False
    for i, token in enumerate(argv):
        if skip:
            skip = False
            continue
        if token == "--xi-range" and i + 1 < len(argv):
            out.append(f"--xi-range={argv[i + 1]}")
            skip = True
        else:
            out.append(token)
    return out


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(_normalize_argv(list(argv if argv is not None else sys.argv[1:])))
    try:
        config = _build_config(args)
        if args.command == "density":
            run_density(config)
            return 0
        if args.command == "rate":
            run_rate(config)
            return 0
        if args.command == "dispersive-rate":
            run_dispersive_rate(config)
            return 0
        if args.command == "figure2":
            run_figure2(config)
            return 0
        if args.command == "verify":
            return run_verify(config)
        raise ConfigError(f"unknown command {args.command!r}")
    except (ConfigError, ValidationError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except QuadratureError as exc:
        print(f"numerical error: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
