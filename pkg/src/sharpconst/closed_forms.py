"""Closed-form values of F_q and C_{p,n} in the cases where they are known.

Everything is expressed in the canonical normalisation
``F_q(beta) = int_0^pi |phi_beta(v)|^q dv``.  Two other scalings of "F" are in
common use for q = 1; :func:`to_doubled_scale` converts to the one obtained
before substituting u = 2v, which is the scale of the n = 2 and n = 4 formulas.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import mpmath

from .params import PrecisionCtx


class FormulaId(str, enum.Enum):
    Q1_ODD = "Q1_ODD"
    Q1_EVEN_SPLIT = "Q1_EVEN_SPLIT"
    Q1_EVEN_SALT = "Q1_EVEN_SALT"
    Q2 = "Q2"
    Q_INF = "Q_INF"
    APPB_G0 = "APPB_G0"
    APPB_GL = "APPB_GL"


@dataclass(frozen=True)
class ClosedFormValue:
    value: mpmath.mpf
    formula_id: FormulaId

    def __post_init__(self):
        if not mpmath.isfinite(self.value):
            raise ValueError("closed-form value is not finite")

    def __float__(self):
        return float(self.value)


def _ctx(ctx):
    return ctx if ctx is not None else PrecisionCtx()


def double_factorial(u: int) -> int:
    """u!! for odd u >= 1: the product of the odd integers in [1, u]."""
    if not isinstance(u, int) or u < 1 or u % 2 == 0:
        raise ValueError(f"double factorial is defined here for odd u >= 1, got {u!r}")
    return math.prod(range(u, 0, -2))


def _half_order(n: int, parity: int) -> int:
    if not isinstance(n, int) or n < 1 or n % 2 != parity:
        kind = "odd" if parity else "even"
        raise ValueError(f"n must be a positive {kind} integer, got {n!r}")
    return (n + 1) // 2 if parity else n // 2


def to_doubled_scale(value, n: int, q: float = 1.0):
    """Multiply a canonical F_q value by 2^{(n+1)q/2}."""
    return value * mpmath.mpf(2) ** (mpmath.mpf(n + 1) * q / 2)


def c_q1_odd(n: int, ctx: PrecisionCtx | None = None) -> ClosedFormValue:
    """C_{inf,n} = ((2m)!)^2 / (n pi (m!)^2) for n = 2m - 1."""
    m = _half_order(n, 1)
    num = math.factorial(2 * m) ** 2
    den = n * math.factorial(m) ** 2
    with _ctx(ctx).active():
        return ClosedFormValue(+(mpmath.mpf(num) / den / mpmath.pi), FormulaId.Q1_ODD)


def fq1_fbeta_odd(n: int, ctx: PrecisionCtx | None = None) -> ClosedFormValue:
    """The beta-independent F_1 for odd n: 4m binom(2m, m) / (n 4^m)."""
    m = _half_order(n, 1)
    with _ctx(ctx).active():
        val = mpmath.mpf(4 * m * math.comb(2 * m, m)) / (n * 4 ** m)
        return ClosedFormValue(val, FormulaId.Q1_ODD)


def even_sine_sum(n: int, beta, ctx: PrecisionCtx | None = None):
    """sum_{k=1}^{n+1} sin^{n+1}((k pi - beta)/(n+1)), as an mpf."""
    with _ctx(ctx).active():
        b = mpmath.mpf(beta)
        s = n + 1
        return mpmath.fsum(mpmath.sin((k * mpmath.pi - b) / s) ** s for k in range(1, s + 1))


def fq1_even_sum(n: int, beta, ctx: PrecisionCtx | None = None) -> ClosedFormValue:
    """F_1(beta) for even n = 2m as (1/m) * even_sine_sum(n, beta)."""
    m = _half_order(n, 0)
    c = _ctx(ctx)
    if not 0.0 <= float(beta) <= math.pi + 1e-15:
        raise ValueError("beta must lie in [0, pi]")
    with c.active():
        return ClosedFormValue(even_sine_sum(n, beta, c) / m, FormulaId.Q1_EVEN_SPLIT)


def fq1_even_salt(n: int, beta, ctx: PrecisionCtx | None = None) -> ClosedFormValue:
    """F_1(beta) for even n from the cosine expansion in gamma = beta + pi/2.

    m F_1(beta) = sum_{j=0}^m (-1)^j 2^{-n} binom(n+1, m-j)
                  cos((2j+1) gamma/(n+1)) / sin((2j+1) pi / (2(n+1)))
                  + 2 sin^{n+1}((gamma - pi/2)/(n+1)),   pi/2 <= gamma <= pi.
    """
    m = _half_order(n, 0)
    c = _ctx(ctx)
    with c.active():
        b = mpmath.mpf(beta)
        gamma = b + mpmath.pi / 2
        slack = mpmath.mpf(10) ** (-c.digits + 5)
        if gamma < mpmath.pi / 2 - slack or gamma > mpmath.pi + slack:
            raise ValueError("the cosine expansion holds for beta in [0, pi/2] only")
        s = n + 1
        terms = [
            (-1) ** j * mpmath.mpf(math.comb(s, m - j)) / mpmath.mpf(2) ** n
            * mpmath.cos((2 * j + 1) * gamma / s) / mpmath.sin((2 * j + 1) * mpmath.pi / (2 * s))
            for j in range(m + 1)
        ]
        total = mpmath.fsum(terms) + 2 * mpmath.sin((gamma - mpmath.pi / 2) / s) ** s
        return ClosedFormValue(total / m, FormulaId.Q1_EVEN_SALT)


def fq2_value(n: int, ctx: PrecisionCtx | None = None) -> ClosedFormValue:
    """F_2 = pi binom(2n, n) / 2^{2n+1}, independent of beta."""
    if n < 1:
        raise ValueError("n must be >= 1")
    with _ctx(ctx).active():
        val = mpmath.pi * math.comb(2 * n, n) / mpmath.mpf(2) ** (2 * n + 1)
        return ClosedFormValue(val, FormulaId.Q2)


def c_q2(n: int, ctx: PrecisionCtx | None = None) -> ClosedFormValue:
    """C_{2,n} = (n!/pi) 2^{n+1/2} sqrt(F_2) = n! sqrt(binom(2n, n)/pi)."""
    c = _ctx(ctx)
    with c.active():
        f2 = fq2_value(n, c).value
        val = math.factorial(n) / mpmath.pi * mpmath.mpf(2) ** (n + mpmath.mpf(1) / 2) * mpmath.sqrt(f2)
        return ClosedFormValue(val, FormulaId.Q2)


def hilbert_gamma_form(n: int, ctx: PrecisionCtx | None = None):
    """(2^n / pi^{3/4}) sqrt(Gamma(n + 1/2) / Gamma(n + 1)).

    This quantity equals C_{2,n}/n!, not F_2 itself.
    """
    with _ctx(ctx).active():
        return (mpmath.mpf(2) ** n / mpmath.pi ** (mpmath.mpf(3) / 4)
                * mpmath.sqrt(mpmath.gamma(n + mpmath.mpf(1) / 2) / mpmath.gamma(n + 1)))


def c_q_infty(n: int, ctx: PrecisionCtx | None = None) -> ClosedFormValue:
    """C_{1,n} = n! 2^{n+1} / pi (the p = 1 end, where sup |phi_beta| = 1)."""
    if n < 1:
        raise ValueError("n must be >= 1")
    with _ctx(ctx).active():
        return ClosedFormValue(math.factorial(n) * mpmath.mpf(2) ** (n + 1) / mpmath.pi,
                               FormulaId.Q_INF)
