"""Command-line front end.

Exit codes: 0 success, 2 invalid parameters, 3 numerical failure (precision
floor or non-convergence), 4 unsupported case.
"""
from __future__ import annotations

import argparse
import io
import json
import logging
import math
import sys
from fractions import Fraction
from typing import List, Optional, Sequence

import numpy as np

from . import asymptotics, kernels, polynomials, refutation, series
from .errors import NumericalError, ParameterError, UnsupportedCaseError

log = logging.getLogger("mathieu_refute")

EXIT_OK = 0
EXIT_PARAMS = 2
EXIT_NUMERICAL = 3
EXIT_UNSUPPORTED = 4


# --------------------------------------------------------------------------
# output


def _fraction(q: Fraction) -> str:
    return f"{q.numerator}/{q.denominator}"


def _json(obj) -> str:
    """Deterministic JSON with 17 significant digits for floats."""
    if isinstance(obj, bool) or obj is None:
        return json.dumps(obj)
    if isinstance(obj, float):
        return format(obj, ".17g") if math.isfinite(obj) else "null"
    if isinstance(obj, int):
        return str(obj)
    if isinstance(obj, Fraction):
        return json.dumps(_fraction(obj))
    if isinstance(obj, str):
        return json.dumps(obj)
    if isinstance(obj, dict):
        return "{" + ", ".join(f"{json.dumps(str(k))}: {_json(v)}" for k, v in obj.items()) + "}"
    if isinstance(obj, (list, tuple)):
        return "[" + ", ".join(_json(v) for v in obj) + "]"
    raise TypeError(f"cannot serialise {type(obj).__name__}")


def _cell(value, digits: int) -> str:
    if isinstance(value, float):
        return format(value, f".{digits}g")
    if isinstance(value, Fraction):
        return _fraction(value)
    if value is None:
        return ""
    return str(value)


def _emit(fmt: str, document: dict, header: Sequence[str], rows: Sequence[Sequence], out,
          footer: Sequence[str] = ()) -> None:
    if fmt == "json":
        out.write(_json(document) + "\n")
    elif fmt == "csv":
        buf = io.StringIO()
        buf.write(",".join(header) + "\n")
        for row in rows:
            buf.write(",".join(_cell(v, 12) for v in row) + "\n")
        out.write(buf.getvalue())
    else:
        cells = [list(header)] + [[_cell(v, 12) for v in row] for row in rows]
        widths = [max(len(r[i]) for r in cells) for i in range(len(header))]
        for r in cells:
            out.write("  ".join(c.rjust(w) for c, w in zip(r, widths)).rstrip() + "\n")
        for line in footer:
            out.write(line + "\n")


# --------------------------------------------------------------------------
# subcommands


def _r_grid(args) -> List[float]:
    if args.r is not None:
        return [args.r]
    if args.r_min is None or args.r_max is None:
        raise ParameterError("give --r or both --r-min and --r-max")
    if not 0 < args.r_min < args.r_max or args.points < 2:
        raise ParameterError("need 0 < r_min < r_max and points >= 2")
    return [float(r) for r in np.geomspace(args.r_min, args.r_max, args.points)]


def _cmd_poly(args, out) -> None:
    if args.n is None:
        raise ParameterError("poly needs --n")
    if args.kind == "bernoulli":
        poly = polynomials.bernoulli_poly(args.n)
        number = polynomials.bernoulli_number(args.n)
    else:
        poly = polynomials.euler_poly(args.n)
        number = polynomials.euler_at_zero(args.n)
    doc = {
        "params": {"kind": args.kind, "n": args.n, "x": args.x},
        "degree": poly.degree,
        "coeffs": list(poly.coeffs),
        "value_at_zero": number,
    }
    if args.x is not None:
        doc["value_at_x"] = poly(Fraction(args.x))
    rows = [(i, c, float(c)) for i, c in enumerate(poly.coeffs)]
    _emit(args.format, doc, ["power", "coefficient", "float"], rows, out)


def _series_value_dict(val: series.SeriesValue) -> dict:
    return {
        "value": val.value,
        "error_bound": val.error_bound,
        "terms_used": val.terms_used,
        "method": val.method.value,
        "precision_bits": val.precision_bits,
    }


def _cmd_series(args, out) -> None:
    if args.gamma is not None or args.t is not None:
        return _cmd_series_generalized(args, out)
    case = series.Case(args.case) if args.case else series.Case.CUSTOM
    params = series.InequalityParams(args.alpha, args.beta, args.mu, case)
    results = []
    for r in _r_grid(args):
        val = series.lhs_series(params, r, args.tol)
        rhs = series.rhs_bound(params.mu, r)
        results.append({"r": r, **_series_value_dict(val), "rhs": rhs, "margin": rhs - val.value})
    doc = {
        "params": {"alpha": args.alpha, "beta": args.beta, "mu": args.mu, "case": args.case,
                   "r": args.r, "r_min": args.r_min, "r_max": args.r_max, "points": args.points,
                   "tol": args.tol},
    }
    if len(results) == 1:
        doc.update(results[0])
    else:
        doc["rows"] = results
    header = ["r", "value", "error_bound", "rhs", "margin", "terms_used", "precision_bits"]
    rows = [[d[k] for k in header] for d in results]
    _emit(args.format, doc, header, rows, out)


def _cmd_series_generalized(args, out) -> None:
    if args.gamma is None or args.t is None:
        raise ParameterError("the generalized series needs both --gamma and --t")
    params = series.AsymptoticParams(args.gamma, args.alpha, args.mu, args.u)
    val = series.generalized_series(params, args.t, args.tol)
    doc = {
        "params": {"gamma": args.gamma, "alpha": args.alpha, "mu": args.mu, "u": args.u,
                   "t": args.t, "tol": args.tol},
        **_series_value_dict(val),
    }
    header = ["t", "value", "error_bound", "terms_used", "precision_bits"]
    _emit(args.format, doc, header, [[args.t, val.value, val.error_bound, val.terms_used, val.precision_bits]], out)


def _cmd_asym(args, out) -> None:
    if args.gamma is None or args.t is None:
        raise ParameterError("asym needs --gamma and --t")
    params = series.AsymptoticParams(args.gamma, args.alpha, args.mu, args.u)
    terms = [asymptotics.expansion_term(k, params) for k in range(args.terms + 1)]
    expansion = asymptotics.evaluate_expansion(params, args.t, args.terms)
    doc = {
        "params": {"gamma": args.gamma, "alpha": args.alpha, "mu": args.mu, "u": args.u,
                   "t": args.t, "terms": args.terms, "tol": args.tol},
        "terms": [
            {"k": t.index, "coefficient": t.coefficient, "exponent": t.exponent,
             "exact": t.exact}
            for t in terms
        ],
        "expansion": expansion,
    }
    try:
        scale = abs(expansion) if expansion else 1.0
        val = series.generalized_series(params, args.t, max(args.tol * scale, 1e-300))
        doc["series"] = _series_value_dict(val)
        doc["remainder"] = val.value - expansion
    except NumericalError as exc:
        log.warning("series comparison skipped: %s", exc)
    rows = [[t.index, t.coefficient, t.exponent, t.exact] for t in terms]
    _emit(args.format, doc, ["k", "coefficient", "exponent", "exact"], rows, out)


def _kernel_from_args(args) -> kernels.KernelSpec:
    if args.case is None:
        raise ParameterError("give --case 1, 2 or 3")
    mu = args.mu if args.mu is not None else 2.0
    return kernels.kernel_for_case(args.case, mu)


def _cmd_kernel(args, out) -> None:
    kernel = _kernel_from_args(args)
    roots = kernels.find_sign_changes(kernel, args.u_max, args.step)
    n = int(round(args.u_max / args.step))
    grid = [i * args.step for i in range(n + 1)]
    values = np.atleast_1d(kernels.kernel_value(kernel, np.array(grid)))
    doc = {
        "params": {"case": args.case, "mu": args.mu, "u_max": args.u_max, "step": args.step},
        "kernel": {"kind": kernel.kind.value, "lambda": kernel.lam},
        "sign_changes": roots,
        "samples": [[u, float(v)] for u, v in zip(grid, values)],
    }
    rows = [["sample", u, float(v)] for u, v in zip(grid, values)]
    rows += [["sign_change", u, 0.0] for u in roots]
    _emit(args.format, doc, ["kind", "u", "value"], rows, out)


def _cmd_integral(args, out) -> None:
    if args.case is None:
        raise ParameterError("integral needs --case 1, 2 or 3")
    if args.case in (4, 5):
        raise UnsupportedCaseError(f"kernel unspecified for case {args.case}")
    mu = args.mu if args.mu is not None else 2.0
    params = series.InequalityParams.for_case(args.case, mu=mu)
    if args.r is None:
        raise ParameterError("integral needs --r")
    res = kernels.compare_integral_inequality(params, args.r, args.tol)

    def quad(q: kernels.QuadratureResult) -> dict:
        return {"value": q.value, "abs_error_estimate": q.abs_error_estimate, "panels": q.panels,
                "truncation_point": q.truncation_point}

    doc = {
        "params": {"case": args.case, "mu": args.mu, "r": args.r, "tol": args.tol},
        "s": params.mu * params.alpha - params.beta,
        "fermi": quad(res.fermi),
        "exp": quad(res.exp),
        "margin": res.margin,
        "error_bound": res.error_bound,
    }
    rows = [["fermi", res.fermi.value, res.fermi.abs_error_estimate],
            ["exp", res.exp.value, res.exp.abs_error_estimate],
            ["margin", res.margin, res.error_bound]]
    _emit(args.format, doc, ["quantity", "value", "error"], rows, out)


def _cmd_refute(args, out) -> None:
    if args.beta is not None:
        params = series.InequalityParams(args.alpha, args.beta, args.mu)
    elif args.m is not None:
        params = refutation.RefutationParams(args.m, args.alpha, args.mu)
    else:
        raise ParameterError("refute needs --m (beta = 4m+5) or --beta")
    if args.r is not None:
        r_min = r_max = args.r
        row = refutation.check_point(params, args.r, args.tol)
        rows = [row]
        doc = {"params": {**refutation._describe(params), "r": args.r, "tol": args.tol},
               **row.as_dict(), "limit_coeff": refutation.limit_coefficient(params)}
    else:
        r_min, r_max = args.r_min, args.r_max
        if r_min is None or r_max is None:
            raise ParameterError("refute needs --r or both --r-min and --r-max")
        report = refutation.scan(params, r_min, r_max, args.points, args.tol)
        rows = report.rows
        doc = report.as_dict()
        doc["params"] = {**doc["params"], "r_min": r_min, "r_max": r_max, "points": args.points,
                         "tol": args.tol}
    header = ["r", "lhs", "rhs", "margin", "scaled_lhs", "error_bound", "status"]
    table = [[row.r, row.lhs, row.rhs, row.margin, row.scaled_lhs, row.error_bound, row.status.value]
             for row in rows]
    footer = [f"{key}: {_cell(doc[key], 12)}" for key in ("limit_coeff", "threshold_r", "verdict") if key in doc]
    _emit(args.format, doc, header, table, out, footer)


def _cmd_constants(args, out) -> None:
    ns = [args.s_n] if args.s_n is not None else list(range(1, args.terms + 1))
    entries = []
    for n in ns:
        c = asymptotics.s_constant(n)
        entries.append({"n": n, "value": c.value, "ratio_next": asymptotics.s_ratio(n),
                        "ratio_lower_bound": n / math.pi})
    if args.s_n is not None:
        doc = {"params": {"s_n": args.s_n}, **entries[0]}
    else:
        doc = {"params": {"terms": args.terms}, "rows": entries}
    header = ["n", "value", "ratio_next", "ratio_lower_bound"]
    _emit(args.format, doc, header, [[e[k] for k in header] for e in entries], out)


# --------------------------------------------------------------------------
# parser


def build_parser() -> argparse.ArgumentParser:
    shared = argparse.ArgumentParser(add_help=False)
    shared.add_argument("--tol", type=float, default=1e-10,
                        help="absolute tolerance (relative to the right side for refute)")
    shared.add_argument("--format", choices=["json", "csv", "table"], default="table")

    parser = argparse.ArgumentParser(
        prog="mathieu-refute",
        description="Alternating Mathieu-type series, their asymptotics and the kernel integrals.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("poly", parents=[shared], help="exact Bernoulli/Euler polynomials")
    p.add_argument("--kind", choices=["bernoulli", "euler"], default="euler")
    p.add_argument("--n", type=int)
    p.add_argument("--x", type=str, help="evaluation point, e.g. 1/2")
    p.set_defaults(func=_cmd_poly)

    p = sub.add_parser("series", parents=[shared],
                       help="left side of the inequality (or the shifted series with --gamma/--t)")
    _add_series_flags(p)
    p.set_defaults(func=_cmd_series)

    p = sub.add_parser("asym", parents=[shared], help="asymptotic expansion (--mu is the theorem's mu)")
    p.add_argument("--gamma", type=int)
    p.add_argument("--alpha", type=int, default=2)
    p.add_argument("--mu", type=float, default=1.0)
    p.add_argument("--u", type=float, default=0.0)
    p.add_argument("--t", type=float)
    p.add_argument("--terms", type=int, default=2)
    p.set_defaults(func=_cmd_asym)

    p = sub.add_parser("kernel", parents=[shared], help="tabulate a kernel and its sign changes")
    p.add_argument("--case", type=int, choices=range(1, 6))
    p.add_argument("--mu", type=float)
    p.add_argument("--u-max", type=float, default=10.0)
    p.add_argument("--step", type=float, default=0.05)
    p.set_defaults(func=_cmd_kernel)

    p = sub.add_parser("integral", parents=[shared], help="both integrals of the kernel inequality")
    p.add_argument("--case", type=int, choices=range(1, 6))
    p.add_argument("--mu", type=float)
    p.add_argument("--r", type=float)
    p.set_defaults(func=_cmd_integral)

    p = sub.add_parser("refute", parents=[shared], help="scan for violations of the inequality")
    p.add_argument("--m", type=int)
    p.add_argument("--beta", type=float)
    p.add_argument("--alpha", type=float, default=2.0)
    p.add_argument("--mu", type=float, default=6.0)
    p.add_argument("--r", type=float)
    p.add_argument("--r-min", type=float)
    p.add_argument("--r-max", type=float)
    p.add_argument("--points", type=int, default=16)
    p.set_defaults(func=_cmd_refute)

    p = sub.add_parser("constants", parents=[shared], help="the constants s_n")
    p.add_argument("--s-n", type=int)
    p.add_argument("--terms", type=int, default=12)
    p.set_defaults(func=_cmd_constants)
    return parser


def _add_series_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--alpha", type=float, default=2.0)
    p.add_argument("--beta", type=float, default=0.0)
    p.add_argument("--mu", type=float, default=1.0)
    p.add_argument("--case", type=int, choices=range(1, 6))
    p.add_argument("--r", type=float)
    p.add_argument("--r-min", type=float)
    p.add_argument("--r-max", type=float)
    p.add_argument("--points", type=int, default=16)
    p.add_argument("--gamma", type=int)
    p.add_argument("--u", type=float, default=0.0)
    p.add_argument("--t", type=float)


def run(argv: Optional[Sequence[str]] = None, out=None) -> int:
    out = out if out is not None else sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        args.func(args, out)
    except UnsupportedCaseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_UNSUPPORTED
    except (ParameterError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARAMS
    except NumericalError as exc:
        extra = f" (achievable bound {exc.achievable:.3g})" if hasattr(exc, "achievable") else ""
        print(f"error: {exc}{extra}", file=sys.stderr)
        return EXIT_NUMERICAL
    return EXIT_OK


def main() -> None:
    logging.basicConfig(level=logging.WARNING, stream=sys.stderr, format="%(levelname)s: %(message)s")
    sys.exit(run())


if __name__ == "__main__":
    main()
