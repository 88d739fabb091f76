"""Command-line entry point.

Exit codes: 0 success, 1 a checked inequality or invariant failed, 2 bad
arguments.  Results go to stdout (or ``--out``), diagnostics to stderr.
High-precision values are written as decimal strings.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys

import mpmath

from . import appendix_b as ab
from . import closed_forms as cf
from .constants import c_pn
from .harness import run_trials, sharpness_probe, summarize
from .kernel import fq_beta, h_factor
from .optimizer import profile, scan_conjecture
from .params import Params, PrecisionCtx, default_digits


def _exponent(text: str) -> float:
    if text.strip().lower() in ("inf", "infinity", "∞"):
        return math.inf
    val = float(text)
    if not val >= 1:
        raise argparse.ArgumentTypeError(f"exponent must be >= 1, got {text}")
    return val


def _int_list(text: str) -> list[int]:
    try:
        out = [int(x) for x in text.split(",") if x.strip()]
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from exc
    if not out or any(x < 1 for x in out):
        raise argparse.ArgumentTypeError("expected a comma-separated list of positive integers")
    return out


def _exp_list(text: str) -> list[float]:
    return [_exponent(x) for x in text.split(",") if x.strip()]


def _positive(text: str) -> float:
    val = float(text)
    if not val > 0:
        raise argparse.ArgumentTypeError("expected a positive number")
    return val


def sci(x, digits: int = 17) -> str:
    """Decimal string in scientific notation."""
    if isinstance(x, float) and math.isinf(x):
        return "inf"
    return mpmath.nstr(mpmath.mpf(x), digits, min_fixed=1, max_fixed=0)


def _params(args) -> Params:
    if args.q is not None:
        return Params.from_q(args.n, args.q)
    return Params.from_p(args.n, args.p if args.p is not None else math.inf)


def _pq(params: Params) -> dict:
    f = lambda x: "inf" if math.isinf(x) else repr(x)
    return {"n": params.n, "p": f(params.p), "q": f(params.q)}


def _add_common(sp, exponent=True):
    if exponent:
        sp.add_argument("--n", type=int, required=True)
        g = sp.add_mutually_exclusive_group()
        g.add_argument("--p", type=_exponent, help="Hardy exponent in [1, inf]; default inf")
        g.add_argument("--q", type=_exponent, help="conjugate exponent (sets p)")
    sp.add_argument("--tol", type=_positive, default=1e-12)
    sp.add_argument("--digits", type=int, default=None,
                    help="big-float digits (default from SHARPCONST_DIGITS or 30)")
    sp.add_argument("--format", choices=("json", "csv"), default="json")
    sp.add_argument("--out", default=None)


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="sharpconst",
                                 description="Sharp constants for derivative bounds by Re f in h^p.")
    sub = ap.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("constant", help="sharp constant C_{p,n}")
    _add_common(sp)
    sp.add_argument("--grid", type=int, default=257)

    sp = sub.add_parser("profile", help="F_q(beta) on [0, pi/2]")
    _add_common(sp)
    sp.add_argument("--grid", type=int, default=257)
    sp.add_argument("--beta", type=float, default=None, help="also evaluate F_q at this beta")

    sp = sub.add_parser("hfactor", help="sharp factor H_{n,p}(r)")
    _add_common(sp)
    sp.add_argument("--r", type=float, required=True)

    sp = sub.add_parser("scan", help="monotonicity scan of F_q over (n, q)")
    sp.add_argument("--n", type=_int_list, required=True)
    sp.add_argument("--q", type=_exp_list, required=True)
    sp.add_argument("--resolution", "--grid", dest="resolution", type=int, default=64)
    _add_common(sp, exponent=False)

    sp = sub.add_parser("appendixb", help="high-precision sine-power sum residuals")
    sp.add_argument("--s", type=int, required=True)
    sp.add_argument("--levels", type=int, default=3)
    sp.add_argument("--beta", type=float, default=None,
                    help="evaluation point; default is the maximising beta")
    _add_common(sp, exponent=False)

    sp = sub.add_parser("verify", help="randomised check of the derivative bound")
    sp.add_argument("--n", type=_int_list, default=[1, 2, 3, 4, 5])
    sp.add_argument("--p", type=_exp_list, default=[1.0, 1.5, 2.0, 3.0, math.inf])
    sp.add_argument("--trials", type=int, default=1000)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--max-degree", dest="max_degree", type=int, default=8)
    sp.add_argument("--tol", type=_positive, default=1e-9)
    sp.add_argument("--format", choices=("json", "csv"), default="json")
    sp.add_argument("--out", default=None)
    return ap


class _Failure(Exception):
    pass


def _cmd_constant(args):
    params = _params(args)
    ctx = PrecisionCtx(args.digits) if args.digits else None
    rec = c_pn(params, args.tol, args.grid, ctx, closed_digits=args.digits or default_digits())
    out = {
        **_pq(params),
        "c_value": repr(rec.c_value),
        "method": rec.method.value,
        "closed_form": rec.closed_form,
        "closed_form_id": rec.closed_form_id,
        "pipeline_value": None if rec.pipeline_value is None else repr(rec.pipeline_value),
        "cross_check_delta": repr(rec.cross_check_delta),
        "beta_star": repr(rec.beta_star),
        "max_f": None if rec.max_f is None else repr(rec.max_f),
        "flat": rec.flat,
        "diagnostics": {k: (v if isinstance(v, str) else repr(v)) for k, v in rec.diagnostics.items()},
    }
    if params.n == 1 and params.q == 1:
        out["reference"] = "4/pi"
    return out, [[k, json.dumps(v) if isinstance(v, (dict, list)) else v] for k, v in out.items()], ["key", "value"]


def _cmd_profile(args):
    params = _params(args)
    prof = profile(params, args.grid, args.tol)
    doubled = float(cf.to_doubled_scale(mpmath.mpf(prof.max_value), params.n, params.q))
    out = {
        **_pq(params),
        "argmax": repr(prof.argmax),
        "argmax_bracket": [repr(x) for x in prof.argmax_bracket],
        "max_value": repr(prof.max_value),
        "max_value_doubled_scale": repr(doubled),
        "f_at_0": repr(prof.f_at_0),
        "f_at_half_pi": repr(prof.f_at_half_pi),
        "interior_grid_max": repr(prof.interior_max),
        "flat": prof.flat,
        "grid": [[repr(b), repr(f)] for b, f in prof.grid],
    }
    if args.beta is not None:
        ctx = PrecisionCtx(args.digits) if args.digits else None
        res = fq_beta(params, args.beta, args.tol, ctx)
        out["at_beta"] = {"beta": repr(args.beta), "value": repr(res.value),
                          "err_estimate": repr(res.err_estimate)}
    return out, [[repr(b), repr(f)] for b, f in prof.grid], ["beta", "F"]


def _cmd_hfactor(args):
    params = _params(args)
    ctx = PrecisionCtx(args.digits) if args.digits else None
    h = h_factor(params, args.r, args.tol, ctx=ctx)
    rec = c_pn(params)
    weighted = h * (1.0 - args.r ** 2) ** (params.inv_p + params.n)
    out = {**_pq(params), "r": repr(args.r), "h_factor": repr(h),
           "weighted": repr(weighted), "c_value": repr(rec.c_value),
           "dominated": weighted <= rec.c_value * (1 + 1e-9)}
    rows = [[k, v] for k, v in out.items()]
    if not out["dominated"]:
        raise _Failure(out)
    return out, rows, ["key", "value"]


def _cmd_scan(args):
    reports = scan_conjecture(args.n, args.q, args.resolution, args.tol)
    items = []
    for r in reports:
        items.append({
            **_pq(r.params),
            "classification": r.classification.value,
            "predicted": r.predicted.value,
            "predicted_alt": r.predicted_alt.value if r.predicted_alt else None,
            "agrees": r.agrees,
            "witness": list(r.witness) if r.witness else None,
            "argmax": repr(r.argmax),
            "max_value": repr(r.max_value),
            "f_at_0": repr(r.f_at_0),
            "f_at_half_pi": repr(r.f_at_half_pi),
            "resolution": r.resolution,
        })
    cols = ["n", "q", "classification", "predicted", "predicted_alt", "agrees",
            "argmax", "max_value", "f_at_0", "f_at_half_pi"]
    return {"reports": items}, [[it[c] for c in cols] for it in items], cols


def _cmd_appendixb(args):
    digits = args.digits or max(default_digits(), ab.recommended_digits(args.s, args.levels))
    ctx = PrecisionCtx(digits)
    beta = ab.maximum_beta(args.s) if args.beta is None else args.beta
    res = ab.residual_cascade(args.s, beta, args.levels, ctx)
    shown = min(digits - ab.GUARD_DIGITS, 30)
    with ctx.active():
        rate = ab.asymptotic_probe([args.s], ctx)[0][1]
        out = {
            "s": args.s, "m": (args.s - 1) // 2, "digits": digits, "beta": repr(beta),
            "f": sci(ab.f_sum(args.s, mpmath.pi / 2 if beta == 0.5 * math.pi else beta, ctx), shown),
            "g0": sci(ab.g0(args.s, ctx), shown),
            "g": [sci(ab.gl(args.s, l, ctx), shown) for l in range(1, args.levels + 1)],
            "residuals": [sci(r, 20) for r in res],
            "fourier_convention": ab.resolve_fourier_convention(ctx),
            "fourier_check": sci(ab.fourier_expansion_check(args.s, beta - 0.5 * math.pi, ctx), 5),
            "shift_identity_check": sci(ab.shift_identity_check(args.s, beta, ctx), 5),
            "rate": sci(rate, 12),
        }
    rows = [[i, v] for i, v in enumerate(out["residuals"])]
    return out, rows, ["level", "residual"]


def _cmd_verify(args):
    params_list = [Params.from_p(n, p) for n in args.n for p in args.p]
    reports = run_trials(params_list, args.trials, args.seed, args.tol, args.max_degree,
                         raise_on_violation=False)
    config = {"n": args.n, "p": ["inf" if math.isinf(p) else p for p in args.p],
              "trials": args.trials, "seed": args.seed, "max_degree": args.max_degree,
              "tol": args.tol}
    out = summarize(reports, args.tol, config)
    if any(math.isinf(p) for p in args.p) and 1 in args.n:
        ratios = sharpness_probe(1, math.inf, [10, 100, 400])
        out["sharpness_n1_pinf"] = {"degrees": [10, 100, 400], "ratios": ratios}
    cols = ["n", "p", "z_re", "z_im", "lhs", "rhs", "slack", "norm_value", "norm_err"]
    rows = [[r.params.n, "inf" if math.isinf(r.params.p) else r.params.p, r.z.real, r.z.imag,
             r.lhs, r.rhs, r.slack, r.norm_value, r.norm_err] for r in reports]
    if out["violations"]:
        raise _Failure(out)
    return out, rows, cols


COMMANDS = {"constant": _cmd_constant, "profile": _cmd_profile, "hfactor": _cmd_hfactor,
            "scan": _cmd_scan, "appendixb": _cmd_appendixb, "verify": _cmd_verify}


def _emit(args, payload, rows, cols):
    if args.format == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(cols)
        w.writerows(rows)
        text = buf.getvalue()
    else:
        text = json.dumps(payload, indent=2) + "\n"
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def run(argv=None) -> int:
    """Parse ``argv``, run one subcommand, return the exit code."""
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "digits", None) is not None and args.digits < 15:
        parser.error("--digits must be >= 15")
    try:
        payload, rows, cols = COMMANDS[args.command](args)
    except _Failure as fail:
        _emit(args, fail.args[0], [], ["failure"])
        print(f"{args.command}: check failed", file=sys.stderr)
        return 1
    except (ValueError, ArithmeticError) as exc:
        print(f"{args.command}: {exc}", file=sys.stderr)
        return 2
    _emit(args, payload, rows, cols)
    return 0


def main(argv=None) -> int:
    return run(argv)


if __name__ == "__main__":
    sys.exit(main())
