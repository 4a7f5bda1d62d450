"""Command-line front end.

Exit codes: 0 success, 1 usage or parameter error, 2 verification failure.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import os
import sys
from dataclasses import dataclass

import numpy as np

from . import acceptance
from .angmom import conservation_check, intrinsic_angular_momentum
from .angular import degeneracy_sum
from .core import DomainError, FieldSpec, PhysicalSetup, QuadratureSpec, validate_setup
from .energy import RadialMode, k0_independence_scan, report_to_csv
from .radial import asymptotic_deviation_scan, scan_to_csv

EXIT_OK, EXIT_USAGE, EXIT_FAIL = 0, 1, 2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: error: {message}")


def _float_list(text: str) -> list[float]:
    try:
        values = [float(v) for v in str(text).replace(";", ",").split(",") if v.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a comma-separated list of numbers: {text!r}")
    if not values:
        raise argparse.ArgumentTypeError("empty list")
    return values


def _positive(text: str) -> float:
    try:
        value = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}")
    if not (math.isfinite(value) and value > 0):
        raise argparse.ArgumentTypeError(f"must be a positive number: {text!r}")
    return value


def _khat(text: str) -> tuple[float, float, float]:
    values = _float_list(text)
    if len(values) != 3:
        raise argparse.ArgumentTypeError("khat needs three components")
    norm = math.sqrt(sum(v * v for v in values))
    if norm == 0:
        raise argparse.ArgumentTypeError("khat must be non-zero")
    return tuple(v / norm for v in values)


def threads() -> int:
    try:
        return max(1, int(os.environ.get("HQ_THREADS", "1")))
    except ValueError:
        return 1


def _add_setup(p):
    p.add_argument("--units", choices=["natural", "si"], default="natural")
    p.add_argument("--R", type=_positive, default=None, help="quantization radius")
    p.add_argument("--V", type=_positive, default=None, help="quantization volume")
    p.add_argument("--E0", type=float, default=None, help="field amplitude")


def _add_output(p, default, choices=("csv", "json")):
    p.add_argument("--format", choices=list(choices), default=default)
    p.add_argument("--output", default=None, help="write here instead of stdout")


def _add_radial_quad(p):
    p.add_argument("--radial-panels", type=int, default=8)
    p.add_argument("--radial-order", type=int, default=16)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="hquant", description="Numerical checks of the classical multipole quantization identities.")
    parser.add_argument("--config", default=None, help="key = value file with option defaults")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("degeneracy", help="degeneracy sum 2n+1 for n = 0..n_max")
    p.add_argument("--n-max", type=int, default=10)
    p.add_argument("--tol", type=_positive, default=1e-9)
    p.add_argument("--theta-order", type=int, default=None)
    p.add_argument("--phi-points", type=int, default=None)
    _add_output(p, "csv")

    p = sub.add_parser("radial", help="deviation of R_n from R/(2k^2)")
    p.add_argument("--n-max", type=int, default=10)
    p.add_argument("--kR", type=_float_list, default=[1e2, 1e3, 1e4, 1e5])
    _add_output(p, "csv")

    p = sub.add_parser("energy", help="mode-sum energy and beta over k0 values")
    p.add_argument("--n", type=int, default=0)
    p.add_argument("--omega", type=_positive, default=1.0)
    p.add_argument("--k0", type=_float_list, default=[1.0, 10.0, 100.0])
    p.add_argument("--radial-mode", choices=[m.value for m in RadialMode], default="asymptotic")
    _add_setup(p)
    _add_radial_quad(p)
    _add_output(p, "json")

    p = sub.add_parser("angmom", help="spin angular momentum conservation run")
    p.add_argument("--n", type=int, default=1)
    p.add_argument("--kR", type=_positive, default=10.0)
    p.add_argument("--k", type=_positive, default=1.0)
    p.add_argument("--polarization", choices=["linear1", "linear2", "plus", "minus"], default="plus")
    p.add_argument("--khat", type=_khat, default=(0.0, 0.0, 1.0))
    p.add_argument("--samples", type=int, default=8)
    _add_setup(p)
    _add_radial_quad(p)
    _add_output(p, "json")

    p = sub.add_parser("verify-all", help="run every acceptance criterion")
    p.add_argument("--profile", choices=list(acceptance.PROFILES), default="quick")
    p.add_argument("--tol-scale", type=_positive, default=1.0, help="multiply every tolerance by this factor")
    _add_output(p, "text", choices=("text", "json"))
    return parser


def read_config(path: str) -> dict[str, str]:
    values = {}
    with open(path) as fh:
        for lineno, raw in enumerate(fh, 1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise UsageError(f"{path}:{lineno}: expected 'key = value'")
            key, value = (part.strip() for part in line.split("=", 1))
            values[key.replace("-", "_")] = value
    return values


def parse_args(argv: list[str]) -> argparse.Namespace:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.config is None:
        return args
    try:
        config = read_config(args.config)
    except OSError as exc:
        raise UsageError(f"cannot read config: {exc}")
    # config supplies defaults; explicit flags still win
    sub = parser._subparsers._group_actions[0].choices[args.command]
    known = {a.dest: a for a in sub._actions}
    defaults = {}
    for key, text in config.items():
        if key not in known:
            raise UsageError(f"unknown config key {key!r} for {args.command}")
        action = known[key]
        try:
            value = action.type(text) if action.type else text
        except (argparse.ArgumentTypeError, ValueError) as exc:
            raise UsageError(f"config key {key}: {exc}")
        if action.choices is not None and value not in action.choices:
            raise UsageError(f"config key {key}: {value!r} not in {list(action.choices)}")
        defaults[key] = value
    sub.set_defaults(**defaults)
    return parser.parse_args(argv)


@dataclass(frozen=True)
class RunConfig:
    """Everything a command's output depends on."""

    command: str
    params: tuple[tuple[str, object], ...]
    format: str
    output: str | None = None

    @classmethod
    def from_namespace(cls, ns: argparse.Namespace) -> "RunConfig":
        skip = {"command", "config", "format", "output"}
        params = tuple(sorted((k, v) for k, v in vars(ns).items() if k not in skip))
        return cls(ns.command, params, ns.format, ns.output)

    def namespace(self) -> argparse.Namespace:
        return argparse.Namespace(command=self.command, format=self.format, output=self.output, **dict(self.params))


def _setup(args) -> PhysicalSetup:
    setup = PhysicalSetup() if args.units == "si" else PhysicalSetup.natural()
    changes = {name: getattr(args, name) for name in ("R", "V", "E0") if getattr(args, name) is not None}
    return validate_setup(setup.with_(**changes))


def _dumps(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


def _table(columns, rows, fmt, **meta) -> str:
    if fmt == "json":
        return _dumps({"columns": columns, "rows": rows, **meta})
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(columns)
    for row in rows:
        w.writerow([f"{v:.17g}" if isinstance(v, float) else v for v in row])
    return buf.getvalue()


def cmd_degeneracy(args) -> tuple[str, int]:
    rows = []
    ok = True
    for n in range(args.n_max + 1):
        spec = QuadratureSpec.sufficient_for(n)
        if args.theta_order is not None or args.phi_points is not None:
            spec = QuadratureSpec(theta_order=args.theta_order or spec.theta_order,
                                  phi_points=args.phi_points or spec.phi_points)
        total = degeneracy_sum(n, spec)
        err = abs(total - (2 * n + 1))
        ok &= err <= args.tol
        rows.append([n, total, err])
    return _table(["n", "sum", "error"], rows, args.format, tol=args.tol, passed=ok), EXIT_OK if ok else EXIT_FAIL


def cmd_radial(args) -> tuple[str, int]:
    if args.n_max < 0:
        raise DomainError("n-max must be >= 0")
    rows = asymptotic_deviation_scan(args.n_max, args.kR)
    if args.format == "csv":
        return scan_to_csv(rows), EXIT_OK
    table = [[r.n, r.kR, r.closed, r.asymptotic, r.rel_dev] for r in rows]
    return _table(["n", "kR", "closed", "asymptotic", "rel_dev"], table, "json"), EXIT_OK


def cmd_energy(args) -> tuple[str, int]:
    setup = _setup(args)
    spec = QuadratureSpec(radial_panels=args.radial_panels, radial_order=args.radial_order)
    report = k0_independence_scan(args.n, args.omega, args.k0, setup, RadialMode(args.radial_mode), spec)
    if args.format == "csv":
        return report_to_csv(report), EXIT_OK
    return _dumps(report.to_dict()), EXIT_OK


def cmd_angmom(args) -> tuple[str, int]:
    setup = _setup(args)
    fs = FieldSpec.from_setup(setup, args.n, args.k, polarization=args.polarization, khat=args.khat)
    spec = QuadratureSpec(radial_panels=args.radial_panels, radial_order=args.radial_order).at_least(args.n)
    if args.samples < 2:
        raise DomainError("need at least two time samples")
    R = args.kR / args.k
    times = np.linspace(0.0, fs.period, args.samples)
    report = conservation_check(fs, R, times, spec)
    if args.format == "csv":
        return report.to_csv(), EXIT_OK
    out = report.to_dict()
    out["J_cycle_average"] = [float(v) for v in intrinsic_angular_momentum(fs, R, spec)]
    out["n"] = args.n
    out["kR"] = args.kR
    return _dumps(out), EXIT_OK


def cmd_verify_all(args) -> tuple[str, int]:
    results = acceptance.run_all(args.profile, args.tol_scale, threads())
    ok = all(r.passed for r in results)
    if args.format == "json":
        text = _dumps({"profile": args.profile, "passed": ok, "criteria": [r.to_dict() for r in results]})
    else:
        lines = [r.line() for r in results]
        lines.append(f"{'ALL PASS' if ok else 'FAILED'} ({sum(r.passed for r in results)}/{len(results)}, profile={args.profile})")
        text = "\n".join(lines) + "\n"
    return text, EXIT_OK if ok else EXIT_FAIL


COMMANDS = {
    "degeneracy": cmd_degeneracy,
    "radial": cmd_radial,
    "energy": cmd_energy,
    "angmom": cmd_angmom,
    "verify-all": cmd_verify_all,
}


def execute(config: RunConfig) -> tuple[str, int]:
    return COMMANDS[config.command](config.namespace())


def _run(argv: list[str]):
    try:
        config = RunConfig.from_namespace(parse_args(list(argv)))
        text, code = execute(config)
        return text, code, config
    except SystemExit as exc:  # --help
        return "", int(exc.code or 0), None
    except (UsageError, DomainError) as exc:
        return f"{exc}\n", EXIT_USAGE, None


def render(argv: list[str]) -> tuple[str, int]:
    """Run a command and return (output text, exit code) without writing anything."""
    text, code, _ = _run(argv)
    return text, code


def main(argv: list[str] | None = None) -> int:
    text, code, args = _run(sys.argv[1:] if argv is None else argv)
    if code == EXIT_USAGE:
        sys.stderr.write(text)
    elif args is not None and args.output:
        with open(args.output, "w", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
