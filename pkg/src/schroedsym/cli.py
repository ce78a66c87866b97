"""Command-line front end.

    schroedsym verify <target> [flags]     run a verification suite
    schroedsym demo-transform [flags]      sample a transformed solution

Exit codes: 0 all checks pass, 1 at least one check failed, 2 bad
configuration.  Flags win over values from an optional key=value config
file.  Numeric output uses 17 significant digits so repeat runs with one
seed are byte-identical (timing fields aside).
"""

from __future__ import annotations

import argparse
import sys

import numpy as np

from .coords import FamilySpec, Point
from .errors import ConfigError, SchroedSymError
from .group import GroupElement, Mat2
from .multiplier import multiplier as k_multiplier
from .residual import GridSpec, residual_arrays, transformed
from .sampling import element_for_family
from .solutions import f_pair, g_functions, gaussian_free, power_static, theta1
from .suites import RunConfig, SuiteReport, run_suite, suite_names


def _build_parser():
    parser = argparse.ArgumentParser(prog="schroedsym",
                                     description="verification suites for the "
                                                 "symmetry groups of generalized "
                                                 "Schrodinger equations")
    sub = parser.add_subparsers(dest="command", required=True)

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="key=value file; explicit flags win")
    common.add_argument("--family", choices=["free", "inverse_quadratic", "linear",
                                             "quadratic", "ndim_linear", "nls2d"])
    common.add_argument("--k", type=float)
    common.add_argument("--alpha", type=float)
    common.add_argument("--beta", type=float)
    common.add_argument("--omega", type=float)
    common.add_argument("--n", type=int)
    common.add_argument("--seed", type=int)
    common.add_argument("--trials", type=int)
    common.add_argument("--tol", type=float)
    common.add_argument("--format", choices=["text", "json"], default=None)
    common.add_argument("--out", help="write the report/records here instead of stdout")

    pv = sub.add_parser("verify", parents=[common], help="run a verification suite")
    pv.add_argument("target", choices=["all", "group", "coords", "multiplier",
                                       "solutions", "residual", "liealg"])

    pd = sub.add_parser("demo-transform", parents=[common],
                        help="write samples of a transformed solution")
    pd.add_argument("--solution", default="f1",
                    choices=["f1", "f2", "gaussian", "power", "theta", "g2", "g3"])
    pd.add_argument("--element", default=None,
                    help="c,d,a,b,mu,nu (defaults to a seeded random element)")
    pd.add_argument("--identity", action="store_true", help="use the unit element")
    pd.add_argument("--nt", type=int, default=12)
    pd.add_argument("--nx", type=int, default=12)
    pd.add_argument("--t-min", type=float, default=-0.4)
    pd.add_argument("--t-max", type=float, default=0.6)
    pd.add_argument("--x-min", type=float, default=-1.2)
    pd.add_argument("--x-max", type=float, default=1.2)
    return parser


def _load_config_file(path):
    values = {}
    try:
        with open(path, "r", encoding="utf-8") as fh:
            for lineno, raw in enumerate(fh, 1):
                line = raw.split("#", 1)[0].strip()
                if not line:
                    continue
                if "=" not in line:
                    raise ConfigError(f"{path}:{lineno}: expected key=value, got {raw!r}")
                key, val = (part.strip() for part in line.split("=", 1))
                values[key.replace("-", "_")] = val
    except OSError as exc:
        raise ConfigError(f"cannot read config file {path}: {exc}") from exc
    return values


_CONFIG_TYPES = {
    "seed": int, "trials": int, "n": int,
    "k": float, "alpha": float, "beta": float, "omega": float, "tol": float,
    "family": str, "format": str, "out": str,
}


def _merge_config(args):
    merged = {}
    if args.config:
        raw = _load_config_file(args.config)
        for key, val in raw.items():
            if key not in _CONFIG_TYPES:
                raise ConfigError(f"unknown config key {key!r}")
            try:
                merged[key] = _CONFIG_TYPES[key](val)
            except ValueError as exc:
                raise ConfigError(f"config key {key!r}: {exc}") from exc
    for key in _CONFIG_TYPES:
        flag = getattr(args, key, None)
        if flag is not None:
            merged[key] = flag
    return merged


def _run_config(merged):
    kwargs = {k: v for k, v in merged.items() if k in
              ("seed", "trials", "tol", "family", "k", "alpha", "beta", "omega", "n")}
    return RunConfig(**kwargs)


def _emit(text, out_path):
    if out_path:
        with open(out_path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
            if not text.endswith("\n"):
                fh.write("\n")
    else:
        sys.stdout.write(text + ("" if text.endswith("\n") else "\n"))


def format_report(report: SuiteReport, fmt: str) -> str:
    return report.to_json() if fmt == "json" else report.to_text()


def _cmd_verify(args):
    merged = _merge_config(args)
    cfg = _run_config(merged)
    report = run_suite(args.target, cfg)
    fmt = merged.get("format", "text")
    _emit(format_report(report, fmt), merged.get("out"))
    return 0 if report.all_passed else 1


def _parse_element(text):
    parts = [p.strip() for p in text.split(",")]
    if len(parts) != 6:
        raise ConfigError("element must be six comma-separated numbers: c,d,a,b,mu,nu")
    try:
        c, d, a, b, mu, nu = (complex(p) for p in parts)
    except ValueError as exc:
        raise ConfigError(f"bad element entry: {exc}") from exc
    return GroupElement(Mat2(c, d, a, b), mu, nu)


def _demo_solution(name, cfg):
    spec_map = {
        "f1": "linear", "f2": "linear", "gaussian": "free",
        "power": "inverse_quadratic", "theta": "free", "g2": "quadratic",
        "g3": "quadratic",
    }
    sp = cfg.specs()
    spec = sp[spec_map[name]]
    if name == "f1":
        return f_pair(spec)[0], spec
    if name == "f2":
        return f_pair(spec)[1], spec
    if name == "gaussian":
        return gaussian_free(spec.k, t0=2.0), spec
    if name == "power":
        return power_static(2.0, 2.0), spec
    if name == "theta":
        return theta1(24), FamilySpec.free(-1j / (4.0 * np.pi))
    if name == "g2":
        return g_functions(spec, 0.0)[1], spec
    return g_functions(spec, 0.6)[2], spec


def _cmd_demo(args):
    merged = _merge_config(args)
    cfg = _run_config(merged)
    fn, spec = _demo_solution(args.solution, cfg)
    if args.identity:
        element = GroupElement.identity()
    elif args.element:
        element = _parse_element(args.element)
    else:
        rng = np.random.default_rng(cfg.seed)
        element = element_for_family(rng, spec)
    moved = transformed(fn, element, spec)
    ts = np.linspace(args.t_min, args.t_max, args.nt)
    xs = np.linspace(args.x_min, args.x_max, args.nx)
    if args.solution == "theta":
        ts = 1j * np.linspace(1.0, 1.6, args.nt)
        xs = np.linspace(-0.4, 0.4, args.nx)
    T, X = (m.ravel() for m in np.meshgrid(ts, xs, indexing="ij"))
    resid, psi = residual_arrays(moved, spec, T, [X])
    lines = ["t\tx\tre_psi\tim_psi\tresidual_abs"]
    for i in range(T.size):
        lines.append("\t".join((
            f"{np.real(T[i]):.17g}" if abs(np.imag(T[i])) < 1e-300 else f"{T[i]:.17g}",
            f"{np.real(X[i]):.17g}",
            f"{np.real(psi[i]):.17g}",
            f"{np.imag(psi[i]):.17g}",
            f"{abs(resid[i]):.17g}",
        )))
    _emit("\n".join(lines), merged.get("out"))
    return 0


def main(argv=None):
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "verify":
            return _cmd_verify(args)
        return _cmd_demo(args)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2
    except SchroedSymError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
