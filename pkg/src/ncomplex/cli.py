"""Command-line front end.

Exit status is 0 on success, 1 when a computation is refused (the error name
is printed on stderr, e.g. ``error: NonInvertible: ...``) or a verification
check fails, and 2 on usage errors such as unknown flags, unreadable files or
bad configuration.
"""

from __future__ import annotations

import argparse
import csv
import json
import math
import sys
from dataclasses import dataclass, replace

import numpy as np

from . import elementary
from .contour import PiecewisePath, Quadrature, ResidueCertificate, integrate_detailed, residue_check
from .core import DEFAULT_TOLERANCES, NComplex, Tolerances, Variant
from .cosexp import CosexpFamily, eval_all
from .errors import NComplexError
from .functions import Constant, Exp, Identity
from .polyfactor import NPolynomial, count_factorizations, factorizations, roots
from .series import NPowerSeries, SeriesFunction, check_riemann_relations, convergence_radii
from .spectral import geometric_form, to_spectrum
from .verify import CRITERIA, run_all

FORMATS = ("json", "csv", "plain")
CONFIG_KEYS = {"tolerances", "format", "seed"}


class UsageError(Exception):
    pass


@dataclass(frozen=True)
class Config:
    tolerances: Tolerances = DEFAULT_TOLERANCES
    format: str | None = None
    seed: int = 0

    @classmethod
    def from_dict(cls, data) -> "Config":
        if not isinstance(data, dict):
            raise UsageError("config must be a JSON object")
        unknown = set(data) - CONFIG_KEYS
        if unknown:
            raise UsageError(f"unknown config keys: {', '.join(sorted(unknown))}")
        tol = DEFAULT_TOLERANCES
        overrides = data.get("tolerances", {})
        if not isinstance(overrides, dict):
            raise UsageError("config 'tolerances' must be an object")
        bad = set(overrides) - {"node_eps", "cmp_eps", "series_eps", "factor_tol"}
        if bad:
            raise UsageError(f"unknown tolerance keys: {', '.join(sorted(bad))}")
        try:
            tol = replace(tol, **{k: float(v) for k, v in overrides.items()})
        except (TypeError, ValueError, NComplexError) as exc:
            raise UsageError(f"invalid tolerance: {exc}") from None
        fmt = data.get("format")
        if fmt is not None and fmt not in FORMATS:
            raise UsageError(f"format must be one of {', '.join(FORMATS)}")
        seed = data.get("seed", 0)
        if not isinstance(seed, int) or isinstance(seed, bool) or seed < 0:
            raise UsageError("seed must be a non-negative integer")
        return cls(tol, fmt, seed)


def _load_json(path: str):
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise UsageError(f"{path} is not valid JSON: {exc}") from None


def _emit(obj, fmt: str, out) -> None:
    if fmt == "json":
        json.dump(obj, out, indent=2, default=_json_default)
        out.write("\n")
    else:
        out.write(f"{obj}\n")


def _json_default(value):
    if isinstance(value, np.ndarray):
        return value.tolist()
    if isinstance(value, np.generic):
        return value.item()
    raise TypeError(f"not serializable: {type(value).__name__}")


def _finite_or_str(x):
    return x if x is None or math.isfinite(x) else ("inf" if x > 0 else "-inf")


def _require_format(fmt: str, allowed: tuple[str, ...], command: str) -> None:
    if fmt not in allowed:
        raise UsageError(f"{command} supports --format {' or '.join(allowed)}")


# ------------------------------------------------------------------ commands


def cmd_eval(args, cfg: Config, fmt: str, out) -> int:
    _require_format(fmt, ("plain", "json"), "eval")
    u = NComplex.from_literal(args.literal)
    if args.op == "exp":
        result = elementary.exp(u)
    elif args.op == "log":
        result = elementary.log(u, cfg.tolerances)
    else:
        if args.m is None:
            raise UsageError("--op pow needs --m")
        result = elementary.pow(u, args.m, cfg.tolerances)
    _emit(result.to_json() if fmt == "json" else result.to_literal(), fmt, out)
    return 0


def cmd_spectrum(args, cfg: Config, fmt: str, out) -> int:
    _require_format(fmt, ("json",), "spectrum")
    u = NComplex.from_literal(args.literal)
    _emit(to_spectrum(u).to_json(), "json", out)
    return 0


def cmd_form(args, cfg: Config, fmt: str, out) -> int:
    _require_format(fmt, ("json",), "form")
    u = NComplex.from_literal(args.literal)
    tol = cfg.tolerances
    if args.kind == "geometric":
        data = geometric_form(u, tol).to_json()
    elif args.kind == "exponential":
        f = elementary.exponential_form(u, tol)
        data = {
            "rho": f.rho,
            "h_coefficients": [float(c) for c in f.h_coefficients],
            "phi": list(f.phi),
        }
    else:
        t = elementary.trigonometric_form(u, tol)
        data = {
            "scalar": t.scalar,
            "direction": t.direction.to_literal(),
            "phase": t.phase.to_literal(),
        }
    _emit(data, "json", out)
    return 0


def cmd_table(args, cfg: Config, fmt: str, out) -> int:
    _require_format(fmt, ("csv", "json"), "table")
    if args.steps < 1:
        raise UsageError("--steps must be at least 1")
    fam = CosexpFamily(args.n, args.variant)
    ys = np.linspace(args.y_min, args.y_max, args.steps + 1)
    header = ["y"] + [f"{fam.symbol}_{fam.n}_{k}" for k in range(fam.n)]
    rows = [[float(y), *map(float, eval_all(fam, y))] for y in ys]
    if fmt == "json":
        _emit({"columns": header, "rows": rows}, "json", out)
    else:
        writer = csv.writer(out, lineterminator="\n")
        writer.writerow(header)
        for row in rows:
            writer.writerow([repr(v) for v in row])
    return 0


def cmd_factor(args, cfg: Config, fmt: str, out) -> int:
    _require_format(fmt, ("plain", "json"), "factor")
    P = NPolynomial.from_json(_load_json(args.file))
    if args.limit < 1:
        raise UsageError("--limit must be positive")
    cr = roots(P, cfg.tolerances)
    total = count_factorizations(P, args.limit, cfg.tolerances, cr)
    if args.count_only:
        _emit({"count": total} if fmt == "json" else total, fmt, out)
        return 0
    listed = list(factorizations(P, args.limit, cfg.tolerances, cr))
    if fmt == "json":
        data = {
            "count": total,
            "factorizations": [
                {
                    "roots": [r.to_literal() for r in f.linear_roots],
                    "quadratic": [[b.to_literal(), c.to_literal()] for b, c in f.quadratic_factors],
                }
                for f in listed
            ],
        }
        _emit(data, "json", out)
        return 0
    for i, f in enumerate(listed, start=1):
        parts = [f"(u - {r.to_literal()})" for r in f.linear_roots]
        parts += [f"(u^2 + {b.to_literal()} u + {c.to_literal()})" for b, c in f.quadratic_factors]
        out.write(f"{i}: {' '.join(parts)}\n")
    out.write(f"count: {total}\n")
    return 0


def _catalog(name: str, n: int, variant: Variant):
    if name in ("const", "reciprocal"):
        return Constant(NComplex.identity(n, variant))
    if name == "identity":
        return Identity()
    return Exp()


def cmd_integrate(args, cfg: Config, fmt: str, out) -> int:
    _require_format(fmt, ("json",), "integrate")
    data = _load_json(args.path)
    if not isinstance(data, dict) or "vertices" not in data:
        raise UsageError("path file needs a 'vertices' list")
    unknown = set(data) - {"vertices", "closed", "variant", "n"}
    if unknown:
        raise UsageError(f"unknown path keys: {', '.join(sorted(unknown))}")
    path = PiecewisePath.from_json(data, variant=args.variant)
    if not path.closed:
        raise UsageError("integrate needs a closed path")
    quad = Quadrature(tol=args.quad_tol, max_segments=args.max_segments)
    f = _catalog(args.function, path.n, path.variant)
    if args.function == "reciprocal" and args.center is None:
        raise UsageError("reciprocal needs --center")
    if args.center is not None:
        center = NComplex.from_literal(args.center)
        cert = residue_check(f, center, path, quad, cfg.tolerances)
    else:
        # analytic integrand: the loop integral should vanish
        result = integrate_detailed(f, path, quad, cfg.tolerances)
        zero = NComplex.zero(path.n, path.variant)
        cert = ResidueCertificate(
            result.value, zero, (), float(np.max(np.abs(result.value.x))), result.segments
        )
    _emit(cert.to_json(), "json", out)
    return 0


def cmd_analyze(args, cfg: Config, fmt: str, out) -> int:
    _require_format(fmt, ("json",), "analyze")
    series = NPowerSeries.from_json(_load_json(args.file))
    cyl = convergence_radii(series, args.window)
    data = {"radii": cyl.to_json()}
    if args.riemann_at is not None:
        u0 = NComplex.from_literal(args.riemann_at)
        report = check_riemann_relations(SeriesFunction(series), u0, args.h)
        data["riemann"] = report.to_json()
        data["inside"] = cyl.contains(u0)
    _emit(data, "json", out)
    return 0


def cmd_verify(args, cfg: Config, fmt: str, out) -> int:
    _require_format(fmt, ("plain", "json"), "verify")
    criteria = None
    if args.criteria:
        try:
            criteria = sorted({int(c) for c in args.criteria.split(",")})
        except ValueError:
            raise UsageError("--criteria takes a comma-separated list of numbers") from None
        if not set(criteria) <= set(CRITERIA):
            raise UsageError(f"criteria are numbered 1..{len(CRITERIA)}")
    report = run_all(seed=cfg.seed, n_max=args.n_max, samples=args.samples, criteria=criteria)
    if fmt == "json":
        _emit(
            {
                "seed": cfg.seed,
                "passed": report.passed,
                "seconds": report.seconds,
                "checks": [c.to_json() for c in report.checks],
            },
            "json",
            out,
        )
    else:
        for check in report.checks:
            out.write(check.line() + "\n")
        groups = report.by_criterion()
        for number in sorted(groups):
            status = "PASS" if report.criterion_passed(number) else "FAIL"
            out.write(f"{status} criterion {number}: {CRITERIA[number]}\n")
        out.write(f"{'all passed' if report.passed else 'FAILED'} in {report.seconds:.1f}s\n")
    return 0 if report.passed else 1


# ------------------------------------------------------------------ parser

DEFAULT_FORMATS = {
    "eval": "plain",
    "spectrum": "json",
    "form": "json",
    "table": "csv",
    "factor": "plain",
    "integrate": "json",
    "analyze": "json",
    "verify": "plain",
}


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise UsageError(f"{self.prog}: {message}")


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--config", default=argparse.SUPPRESS, help="JSON configuration file")
    common.add_argument("--format", choices=FORMATS, default=argparse.SUPPRESS)
    common.add_argument("--seed", type=int, default=argparse.SUPPRESS)

    parser = _Parser(prog="ncomplex", description="Polar and planar n-complex numbers.", parents=[common])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("eval", parents=[common], help="exp, log or a real power of a number")
    p.add_argument("--op", choices=("exp", "log", "pow"), required=True)
    p.add_argument("--m", type=float, help="exponent for --op pow")
    p.add_argument("literal", help="number such as polar:n=4:[1,0,2,-3]")
    p.set_defaults(handler=cmd_eval)

    p = sub.add_parser("spectrum", parents=[common], help="spectral coordinates")
    p.add_argument("literal")
    p.set_defaults(handler=cmd_spectrum)

    p = sub.add_parser("form", parents=[common], help="geometric, exponential or trigonometric form")
    p.add_argument("--kind", choices=("geometric", "exponential", "trigonometric"), default="geometric")
    p.add_argument("literal")
    p.set_defaults(handler=cmd_form)

    p = sub.add_parser("table", parents=[common], help="cosexponential function table")
    p.add_argument("--variant", choices=("polar", "planar"), default="polar")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--y-min", type=float, default=-2.0)
    p.add_argument("--y-max", type=float, default=2.0)
    p.add_argument("--steps", type=int, default=20)
    p.set_defaults(handler=cmd_table)

    p = sub.add_parser("factor", parents=[common], help="factorizations of a polynomial")
    p.add_argument("file", help='JSON {"variant":..,"n":..,"coefficients":[[..],..]}')
    p.add_argument("--limit", type=int, default=10_000)
    p.add_argument("--count-only", action="store_true")
    p.set_defaults(handler=cmd_factor)

    p = sub.add_parser("integrate", parents=[common], help="loop integral and residue certificate")
    p.add_argument("path", help='JSON {"vertices":[[..],..],"closed":true}')
    p.add_argument("--function", choices=("const", "identity", "reciprocal", "exp"), default="const")
    p.add_argument("--center", help="pole location; integrates f(u)/(u - center)")
    p.add_argument("--variant", choices=("polar", "planar"), default=None)
    p.add_argument("--quad-tol", type=float, default=1e-10)
    p.add_argument("--max-segments", type=int, default=None)
    p.set_defaults(handler=cmd_integrate)

    p = sub.add_parser("analyze", parents=[common], help="convergence radii of a power series")
    p.add_argument("file", help='JSON {"variant":..,"n":..,"coefficients":[[..],..]}')
    p.add_argument("--window", type=int, default=8)
    p.add_argument("--riemann-at", metavar="LITERAL", help="also test the analyticity relations here")
    p.add_argument("--h", type=float, default=1e-4)
    p.set_defaults(handler=cmd_analyze)

    p = sub.add_parser("verify", parents=[common], help="run the acceptance checks")
    p.add_argument("--n-max", type=int, default=8)
    p.add_argument("--samples", type=int, default=200)
    p.add_argument("--criteria", help="comma-separated criterion numbers (default all)")
    p.set_defaults(handler=cmd_verify)
    return parser


def _config(args) -> Config:
    cfg = Config()
    path = getattr(args, "config", None)
    if path is not None:
        cfg = Config.from_dict(_load_json(path))
    seed = getattr(args, "seed", None)
    if seed is not None:
        if seed < 0:
            raise UsageError("--seed must be non-negative")
        cfg = replace(cfg, seed=seed)
    fmt = getattr(args, "format", None)
    if fmt is not None:
        cfg = replace(cfg, format=fmt)
    return cfg


def run(argv=None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        try:
            args = parser.parse_args(argv)
        except SystemExit as exc:  # --help
            return int(exc.code or 0)
        cfg = _config(args)
        fmt = cfg.format or DEFAULT_FORMATS[args.command]
        return args.handler(args, cfg, fmt, out)
    except UsageError as exc:
        err.write(f"usage error: {exc}\n")
        return 2
    except NComplexError as exc:
        err.write(f"error: {exc.name}: {exc}\n")
        return 1


def main() -> None:
    sys.exit(run())
