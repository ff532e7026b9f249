"""Command-line front end.

Exit codes: 0 success, 1 input error (bad flags, unparsable kernel spec),
2 mathematical refusal (inadmissible kernel, failed bracket, non-convergent
quadrature, failed subordination slice, failed admissibility check).
"""
from __future__ import annotations

import argparse
import io
import itertools
import json
import math
import os
import sys
from dataclasses import asdict, dataclass

import numpy as np

from . import __version__
from .errors import DomainError, GFCError, InputError, RefusalError
from .invert import solve_growth
from .kernel import KernelSymbol, check_admissibility
from .kernelspec import kernel_to_spec, load_kernel
from .mlf import MLParams, mittag_leffler
from .rootfind import asymptotic_amplitude, p0_of_lambda
from .subordination import default_s_grid, growth_via_subordination, subordination_kernel
from .timestep import MeshSpec, solve_growth_direct

METHODS = ("contour", "direct", "subordination")
EXIT_OK, EXIT_INPUT, EXIT_REFUSAL = 0, 1, 2


@dataclass(frozen=True)
class RunConfig:
    kernel_spec: str
    lam: float = 1.0
    t_min: float = 0.1
    t_max: float = 2.0
    t_points: int = 20
    spacing: str = "linear"
    method: str = "contour"
    output_format: str = "csv"
    output_path: str | None = None
    steps: int = 4096
    grading: float = 2.0

    def __post_init__(self):
        if not (self.lam > 0.0 and math.isfinite(self.lam)):
            raise DomainError(f"--lambda must be positive and finite, got {self.lam}")
        if not (0.0 < self.t_min < self.t_max and math.isfinite(self.t_max)):
            raise DomainError(f"need 0 < t_min < t_max, got {self.t_min}, {self.t_max}")
        if self.t_points < 2:
            raise DomainError(f"--t-points must be >= 2, got {self.t_points}")

    def grid(self) -> np.ndarray:
        if self.spacing == "log":
            return np.geomspace(self.t_min, self.t_max, self.t_points)
        return np.linspace(self.t_min, self.t_max, self.t_points)


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise InputError(message)


def _quiet() -> bool:
    return os.environ.get("GFC_QUIET", "") == "1"


def _progress(msg: str) -> None:
    if not _quiet():
        print(f"gfc: {msg}", file=sys.stderr)


def _g(x: float) -> str:
    return "%.17g" % x


def _emit(text: str, out: str | None) -> None:
    if out:
        with open(out, "w", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _plain(obj):
    # numpy scalars and arrays
    if hasattr(obj, "tolist"):
        return obj.tolist()
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def _json(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True, allow_nan=True, default=_plain) + "\n"


def _kernel_config(symbol: KernelSymbol) -> dict:
    return {"spec": kernel_to_spec(symbol), "description": symbol.describe()}


def _solve_routes(symbol: KernelSymbol, cfg: RunConfig, methods) -> dict[str, list[float]]:
    ts = cfg.grid()
    out: dict[str, list[float]] = {}
    for m in methods:
        _progress(f"solving with method {m} on {ts.size} points")
        if m == "contour":
            out[m] = list(solve_growth(symbol, cfg.lam, ts).values)
        elif m == "direct":
            sol = solve_growth_direct(symbol, cfg.lam, MeshSpec(cfg.t_max, cfg.steps, cfg.grading))
            out[m] = [sol.at(float(t)) for t in ts]
        else:
            out[m] = [growth_via_subordination(symbol, cfg.lam, float(t)) for t in ts]
    return out


def _max_rel(values: list[float]) -> float:
    worst = 0.0
    for a, b in itertools.combinations(values, 2):
        worst = max(worst, abs(a - b) / max(abs(a), abs(b)))
    return worst


def _csv(rows, header) -> str:
    buf = io.StringIO()
    buf.write(",".join(header) + "\n")
    for row in rows:
        buf.write(",".join(v if isinstance(v, str) else _g(v) for v in row) + "\n")
    return buf.getvalue()


# Subcommands ----------------------------------------------------------------


def cmd_kernel_check(args) -> int:
    symbol = load_kernel(args.kernel)
    report = check_admissibility(symbol)
    doc = {"config": {"kernel": _kernel_config(symbol)}, "report": report.to_dict(), "all_ok": report.all_ok}
    _emit(_json(doc), args.out)
    return EXIT_OK if report.all_ok else EXIT_REFUSAL


def _config(args, method: str) -> RunConfig:
    return RunConfig(
        kernel_spec=args.kernel, lam=args.lam, t_min=args.t_min, t_max=args.t_max,
        t_points=args.t_points, spacing=args.spacing, method=method,
        output_format=args.format, output_path=args.out, steps=args.steps, grading=args.grading,
    )


def cmd_solve(args) -> int:
    cfg = _config(args, args.method)
    symbol = load_kernel(cfg.kernel_spec)
    methods = METHODS if cfg.method == "all" else (cfg.method,)
    p0 = p0_of_lambda(symbol, cfg.lam).p0
    routes = _solve_routes(symbol, cfg, methods)
    ts = cfg.grid()
    rows = []
    for i, t in enumerate(ts):
        for m in methods:
            u = routes[m][i]
            rows.append((float(t), u, u * math.exp(-p0 * t), m))
        if len(methods) > 1:
            rows.append((float(t), _max_rel([routes[m][i] for m in methods]), math.nan, "max_rel_discrepancy"))
    if cfg.output_format == "json":
        doc = {
            "config": dict(asdict(cfg), kernel=_kernel_config(symbol)),
            "p0": p0,
            "rows": [dict(zip(("t", "u", "normalized", "method"), r)) for r in rows if r[3] in methods],
        }
        if len(methods) > 1:
            doc["max_rel_discrepancy"] = max(r[1] for r in rows if r[3] == "max_rel_discrepancy")
        _emit(_json(doc), cfg.output_path)
    else:
        _emit(_csv(rows, ("t", "u", "normalized", "method")), cfg.output_path)
    return EXIT_OK


def cmd_compare(args) -> int:
    cfg = _config(args, "all")
    symbol = load_kernel(cfg.kernel_spec)
    routes = _solve_routes(symbol, cfg, METHODS)
    ts = cfg.grid()
    rows = []
    for i, t in enumerate(ts):
        vals = [routes[m][i] for m in METHODS]
        rows.append((float(t), *vals, _max_rel(vals)))
    header = ("t", *METHODS, "max_rel_discrepancy")
    if cfg.output_format == "json":
        doc = {
            "config": dict(asdict(cfg), kernel=_kernel_config(symbol)),
            "rows": [dict(zip(header, r)) for r in rows],
            "max_rel_discrepancy": max(r[-1] for r in rows),
        }
        _emit(_json(doc), cfg.output_path)
    else:
        _emit(_csv(rows, header), cfg.output_path)
    return EXIT_OK


def cmd_asymptote(args) -> int:
    if not (args.lam > 0.0 and math.isfinite(args.lam)):
        raise DomainError(f"--lambda must be positive and finite, got {args.lam}")
    symbol = load_kernel(args.kernel)
    root = p0_of_lambda(symbol, args.lam)
    doc = {
        "p0": root.p0,
        "phi_prime_p0": symbol.phi_prime(root.p0),
        "amplitude": asymptotic_amplitude(symbol, args.lam, root),
    }
    if args.format == "csv":
        _emit(_csv([(doc["p0"], doc["phi_prime_p0"], doc["amplitude"])], ("p0", "phi_prime_p0", "amplitude")), args.out)
    else:
        doc["config"] = {"kernel": _kernel_config(symbol), "lam": args.lam}
        doc["residual"] = root.residual
        _emit(_json(doc), args.out)
    return EXIT_OK


def cmd_subordinate(args) -> int:
    if not (args.t > 0.0 and math.isfinite(args.t)):
        raise DomainError(f"--t must be positive and finite, got {args.t}")
    if args.s_points < 2:
        raise DomainError("--s-points must be >= 2")
    symbol = load_kernel(args.kernel)
    _progress(f"inverting g(s, p) at t = {args.t} on {args.s_points} s-values")
    sl = subordination_kernel(symbol, args.t, default_s_grid(symbol, args.t, args.s_points))
    if args.format == "json":
        doc = {
            "config": {"kernel": _kernel_config(symbol), "t": args.t, "s_points": args.s_points},
            "s": sl.s_grid, "G": sl.g_values, "mass": sl.mass, "min": sl.min_value,
            "clamped": sl.clamped, "ok": sl.ok, "notes": sl.notes,
        }
        _emit(_json(doc), args.out)
    else:
        rows = list(zip(sl.s_grid, sl.g_values)) + [("mass", sl.mass), ("min", sl.min_value)]
        _emit(_csv(rows, ("s", "G")), args.out)
    if not sl.ok:
        print("gfc: " + "; ".join(sl.notes), file=sys.stderr)
        return EXIT_REFUSAL
    return EXIT_OK


def cmd_mlf(args) -> int:
    params = MLParams(args.alpha)
    value = mittag_leffler(params, args.z)
    if args.format == "json":
        _emit(_json({"alpha": args.alpha, "z": args.z, "value": value}), args.out)
    else:
        _emit(_g(value) + "\n", args.out)
    return EXIT_OK


# Parser -----------------------------------------------------------------------


def _add_common(p, *, grid: bool = True) -> None:
    p.add_argument("--kernel", required=True, help="kernel spec file or inline spec ('kind=power_law; alpha=0.5')")
    p.add_argument("--lambda", dest="lam", type=float, default=1.0)
    p.add_argument("--format", choices=("csv", "json"), default="csv" if grid else "json")
    p.add_argument("--out", default=None, help="output file (default: standard output)")
    if grid:
        p.add_argument("--t-min", type=float, default=0.1)
        p.add_argument("--t-max", type=float, default=2.0)
        p.add_argument("--t-points", type=int, default=20)
        p.add_argument("--spacing", choices=("linear", "log"), default="linear")
        p.add_argument("--steps", type=int, default=4096, help="time steps of the direct solver")
        p.add_argument("--grading", type=float, default=2.0, help="mesh grading of the direct solver")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="gfc", description="Growth equation D_(k) u = lam u for admissible kernels.")
    parser.add_argument("--version", action="version", version=f"gfc {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    kernel = sub.add_parser("kernel", help="kernel utilities")
    ksub = kernel.add_subparsers(dest="kernel_command", required=True, parser_class=_Parser)
    check = ksub.add_parser("check", help="admissibility report as JSON")
    check.add_argument("--kernel", required=True)
    check.add_argument("--out", default=None)
    check.set_defaults(func=cmd_kernel_check)

    solve = sub.add_parser("solve", help="solve the growth equation on a time grid")
    _add_common(solve)
    solve.add_argument("--method", choices=(*METHODS, "all"), default="contour")
    solve.set_defaults(func=cmd_solve)

    compare = sub.add_parser("compare", help="all solution routes side by side")
    _add_common(compare)
    compare.set_defaults(func=cmd_compare)

    asym = sub.add_parser("asymptote", help="growth rate p0, Phi'(p0) and amplitude")
    _add_common(asym, grid=False)
    asym.set_defaults(func=cmd_asymptote)

    subo = sub.add_parser("subordinate", help="subordination kernel G(s, t) at fixed t")
    subo.add_argument("--kernel", required=True)
    subo.add_argument("--format", choices=("csv", "json"), default="csv")
    subo.add_argument("--out", default=None)
    subo.add_argument("--t", type=float, default=1.0)
    subo.add_argument("--s-points", type=int, default=200)
    subo.set_defaults(func=cmd_subordinate)

    mlf = sub.add_parser("mlf", help="Mittag-Leffler function E_alpha(z)")
    mlf.add_argument("--alpha", type=float, required=True)
    mlf.add_argument("--z", type=float, required=True)
    mlf.add_argument("--format", choices=("text", "json"), default="text")
    mlf.add_argument("--out", default=None)
    mlf.set_defaults(func=cmd_mlf)
    return parser


def main(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
        return args.func(args)
    except InputError as exc:
        print(f"gfc: error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except RefusalError as exc:
        print(f"gfc: refused: {exc}", file=sys.stderr)
        return EXIT_REFUSAL
    except GFCError as exc:
        print(f"gfc: {exc}", file=sys.stderr)
        return EXIT_REFUSAL


if __name__ == "__main__":
    sys.exit(main())
