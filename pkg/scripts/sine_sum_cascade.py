"""Residual cascade of the odd sine-power sums for a range of s."""

from __future__ import annotations

import argparse
from dataclasses import dataclass

import mpmath

from sharpconst import appendix_b as ab
from sharpconst.params import PrecisionCtx


@dataclass
class CascadeConfig:
    s_values: tuple[int, ...] = (19, 49, 99, 101, 201)
    levels: int = 3
    extra_digits: int = 20


def run(cfg: CascadeConfig) -> list[dict]:
    out = []
    for s in cfg.s_values:
        ctx = PrecisionCtx(ab.recommended_digits(s, cfg.levels) + cfg.extra_digits)
        res = ab.residual_cascade(s, levels=cfg.levels, ctx=ctx)
        with ctx.active():
            coeffs = [ab.gl(s, l, ctx) for l in range(1, cfg.levels + 1)]
            ratios = [r / c for r, c in zip(res, coeffs)]
        out.append({"s": s, "digits": ctx.digits, "residuals": res, "g": coeffs, "ratios": ratios})
    return out


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--s", type=int, nargs="+", default=list(CascadeConfig.s_values))
    ap.add_argument("--levels", type=int, default=3)
    args = ap.parse_args()
    for row in run(CascadeConfig(tuple(args.s), args.levels)):
        print(f"s={row['s']} ({row['digits']} digits)")
        for l, (r, c, q) in enumerate(zip(row["residuals"], row["g"], row["ratios"])):
            print(f"  residual {l}: {mpmath.nstr(r, 17):>26}   g_{l + 1}: {mpmath.nstr(c, 17):>26}"
                  f"   ratio {mpmath.nstr(q, 12)}")


if __name__ == "__main__":
    main()
