"""High-precision study of the sine-power sums f(beta) = sum_{k=1}^s sin^s((k pi - beta)/s).

For even s the sum is the constant 2/B(1/2, s/2).  For odd s = 2m + 1 it
exceeds that constant by roughly 27^{-s/2}; the excess is resolved, term by
term, by the cosine series

    g0 + sum_{l>=1} g_l cos(2 l x),   x = beta - pi/2,
    g_l = (-1)^{m+l-1} (4/pi) s! ((2l-1)s)!! / ((2l-1) ((2l+1)s)!!).

The residual after subtracting g0, g1 cos 2x, ... shrinks by tens of orders
of magnitude per step, so every routine here works in mpmath at a caller
chosen precision and refuses to report residuals it cannot resolve.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import mpmath

from .closed_forms import double_factorial
from .params import PrecisionCtx

MIN_DIGITS = 30
GUARD_DIGITS = 10


class PrecisionError(ArithmeticError):
    """Cancellation consumed more digits than the working precision provides."""


@dataclass(frozen=True)
class SumSpec:
    s: int
    beta: float = 0.0

    def __post_init__(self):
        if not isinstance(self.s, int) or self.s < 3 or self.s % 2 == 0:
            raise ValueError(f"s must be an odd integer >= 3, got {self.s!r}")

    @property
    def m(self) -> int:
        return (self.s - 1) // 2


def _check_ctx(ctx: PrecisionCtx | None) -> PrecisionCtx:
    ctx = ctx if ctx is not None else PrecisionCtx(max(MIN_DIGITS, PrecisionCtx().digits))
    if ctx.digits < MIN_DIGITS:
        raise ValueError(f"sine-sum computations need at least {MIN_DIGITS} digits")
    return ctx


def _odd(s: int):
    if not isinstance(s, int) or s < 1 or s % 2 == 0:
        raise ValueError(f"s must be a positive odd integer, got {s!r}")
    return (s - 1) // 2


def f_sum(s: int, beta, ctx: PrecisionCtx | None = None):
    """sum_{k=1}^s sin^s((k pi - beta)/s) at the working precision (any s >= 1)."""
    ctx = _check_ctx(ctx)
    with ctx.active():
        b = mpmath.mpf(beta)
        return mpmath.fsum(mpmath.sin((k * mpmath.pi - b) / s) ** s for k in range(1, s + 1))


def g(s: int, x, ctx: PrecisionCtx | None = None):
    """The shifted sum g(x) = f(x + pi/2)."""
    ctx = _check_ctx(ctx)
    with ctx.active():
        return f_sum(s, mpmath.mpf(x) + mpmath.pi / 2, ctx)


def g0(s: int, ctx: PrecisionCtx | None = None):
    """2 / B(1/2, s/2)."""
    ctx = _check_ctx(ctx)
    with ctx.active():
        return 2 / mpmath.beta(mpmath.mpf(1) / 2, mpmath.mpf(s) / 2)


def gl_exact(s: int, l: int) -> Fraction:
    """g_l * pi / 4 as an exact signed rational."""
    m = _odd(s)
    if l < 1:
        raise ValueError("l must be >= 1")
    sign = -1 if (m + l - 1) % 2 else 1
    num = math.factorial(s) * double_factorial((2 * l - 1) * s)
    den = (2 * l - 1) * double_factorial((2 * l + 1) * s)
    return sign * Fraction(num, den)


def gl(s: int, l: int, ctx: PrecisionCtx | None = None):
    """Cosine coefficient g_l (exact integer core, one rounding into mpf)."""
    ctx = _check_ctx(ctx)
    frac = gl_exact(s, l)
    with ctx.active():
        return 4 * (mpmath.mpf(frac.numerator) / frac.denominator) / mpmath.pi


def gl_log10(s: int, l: int) -> float:
    """log10 |g_l|, from exact integers (no big-float needed)."""
    frac = abs(gl_exact(s, l))
    return (math.log10(frac.numerator) - math.log10(frac.denominator)
            + math.log10(4 / math.pi))


def recommended_digits(s: int, levels: int = 1) -> int:
    """Working digits that resolve the last residual of a ``levels``-deep cascade."""
    return 15 + math.ceil(-gl_log10(s, levels))


def maximum_beta(s: int) -> float:
    """beta of the maximum: x = 0 (beta = pi/2) for even m, x = -pi/2 (beta = 0) for odd m."""
    return 0.5 * math.pi if _odd(s) % 2 == 0 else 0.0


def residual_cascade(s: int, beta=None, levels: int = 3, ctx: PrecisionCtx | None = None):
    """[f - g0, f - g0 - g1 cos 2x, ...] with ``levels`` entries, x = beta - pi/2.

    ``beta`` defaults to the maximising point.  Raises PrecisionError when a
    residual is smaller than the working precision can resolve.
    """
    ctx = _check_ctx(ctx)
    _odd(s)
    if levels < 1:
        raise ValueError("levels must be >= 1")
    if beta is None:
        beta = maximum_beta(s)
    with ctx.active():
        b = mpmath.pi / 2 if beta == 0.5 * math.pi else mpmath.mpf(beta)
        x = b - mpmath.pi / 2
        f = f_sum(s, b, ctx)
        r = f - g0(s, ctx)
        out = [r]
        for l in range(1, levels):
            r = r - gl(s, l, ctx) * mpmath.cos(2 * l * x)
            out.append(r)
        limit = mpmath.mpf(10) ** (-(ctx.digits - GUARD_DIGITS)) * abs(f)
        for k, v in enumerate(out):
            if abs(v) < limit:
                raise PrecisionError(
                    f"residual {k} ({mpmath.nstr(v, 5)}) is below the resolvable level at "
                    f"{ctx.digits} digits; use at least {recommended_digits(s, levels)}")
        return out


def fourier_expansion(s: int, x, ctx: PrecisionCtx | None = None):
    """(-1)^m 2^{-s} sum_{j=0}^s (-1)^j binom(s, j) cos(t x/s) / sin(pi t/(2s)), t = s - 2j."""
    ctx = _check_ctx(ctx)
    m = _odd(s)
    with ctx.active():
        X = mpmath.mpf(x) / s
        terms = []
        for j in range(s + 1):
            t = s - 2 * j
            terms.append((-1) ** j * math.comb(s, j) * mpmath.cos(t * X)
                         / mpmath.sin(mpmath.pi * t / (2 * s)))
        return (-1) ** m * mpmath.fsum(terms) / mpmath.mpf(2) ** s


def resolve_fourier_convention(ctx: PrecisionCtx | None = None) -> str:
    """Whether the finite cosine expansion reproduces f itself or the shifted g.

    Decided at s = 3 on a few sample points; returns ``"g"`` or ``"f"``.
    """
    ctx = _check_ctx(ctx)
    with ctx.active():
        tol = mpmath.mpf(10) ** (-(ctx.digits - 15))
        xs = [mpmath.mpf(0), mpmath.mpf(3) / 10, mpmath.mpf(1)]
        if all(abs(fourier_expansion(3, x, ctx) - g(3, x, ctx)) <= tol for x in xs):
            return "g"
        if all(abs(fourier_expansion(3, x, ctx) - f_sum(3, x, ctx)) <= tol for x in xs):
            return "f"
        raise ArithmeticError("cosine expansion matches neither convention")


def fourier_expansion_check(s: int, x, ctx: PrecisionCtx | None = None):
    """|fourier_expansion(x) - g(x)| where g(x) = f(x + pi/2)."""
    ctx = _check_ctx(ctx)
    with ctx.active():
        return abs(fourier_expansion(s, x, ctx) - g(s, x, ctx))


def shift_identity_check(s: int, beta, ctx: PrecisionCtx | None = None):
    """|f(beta) - f(beta + pi) - 2 sin^s(beta/s)|."""
    ctx = _check_ctx(ctx)
    with ctx.active():
        b = mpmath.mpf(beta)
        lhs = f_sum(s, b, ctx) - f_sum(s, b + mpmath.pi, ctx)
        return abs(lhs - 2 * mpmath.sin(b / s) ** s)


def excess_prefactor(s: int) -> Fraction:
    """s! s!! / (3s)!!, exactly; times 4/pi this is |g_1|."""
    _odd(s)
    return Fraction(math.factorial(s) * double_factorial(s), double_factorial(3 * s))


def asymptotic_probe(s_list, ctx: PrecisionCtx | None = None) -> list[tuple[int, mpmath.mpf]]:
    """rate(s) = ((4/pi) s! s!!/(3s)!!)^{-2/s}, which tends to 27."""
    ctx = _check_ctx(ctx)
    s_list = list(s_list)
    if s_list != sorted(s_list):
        raise ValueError("s_list must be ascending")
    out = []
    with ctx.active():
        for s in s_list:
            fr = excess_prefactor(s)
            lead = 4 * (mpmath.mpf(fr.numerator) / fr.denominator) / mpmath.pi
            out.append((s, mpmath.exp(-2 * mpmath.log(lead) / s)))
    return out


def local_maxima(s: int, lo=-2 * math.pi, hi=2 * math.pi, samples: int = 257,
                 ctx: PrecisionCtx | None = None) -> list[tuple[float, mpmath.mpf]]:
    """Grid local maxima of g on [lo, hi] as (x, g(x) - g0); observational only."""
    ctx = _check_ctx(ctx)
    with ctx.active():
        base = g0(s, ctx)
        xs = [mpmath.mpf(lo) + (mpmath.mpf(hi) - lo) * k / (samples - 1) for k in range(samples)]
        vals = [g(s, x, ctx) - base for x in xs]
        return [(float(xs[k]), vals[k]) for k in range(1, samples - 1)
                if vals[k] >= vals[k - 1] and vals[k] >= vals[k + 1]]
