"""Assembly of C_{p,n} and the right-hand sides of the derivative bounds.

    C_{p,n} = (n!/pi) 2^{n+1-1/q} (max_{0<=beta<=pi/2} F_q(beta))^{1/q}

bounds |f^(n)(z)| (1-|z|^2)^{1/p+n} by C_{p,n} times the h^p norm of Re f,
with the norm taken against dt on [0, 2pi] (not the probability measure).
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from functools import lru_cache

import mpmath

from . import closed_forms as cf
from .kernel import fq_beta_mp
from .optimizer import DEFAULT_GRID, profile
from .params import Params, PrecisionCtx


class Method(str, enum.Enum):
    PIPELINE = "PIPELINE"
    CLOSED_FORM = "CLOSED_FORM"
    LIMIT = "LIMIT"


@dataclass(frozen=True)
class ConstantRecord:
    params: Params
    c_value: float
    method: Method
    beta_star: float
    cross_check_delta: float
    pipeline_value: float | None = None
    closed_form: str | None = None
    closed_form_id: str | None = None
    max_f: float | None = None
    flat: bool = False
    diagnostics: dict = field(default_factory=dict)

    def __post_init__(self):
        if not self.c_value > 0:
            raise ValueError("sharp constant must be positive")


@dataclass(frozen=True)
class BoundQuery:
    z: complex = 0j
    norm: float = 1.0
    d_z: float | None = None

    def __post_init__(self):
        if abs(self.z) >= 1:
            raise ValueError("z must lie in the open unit disk")
        if self.norm < 0:
            raise ValueError("norm must be non-negative")
        if self.d_z is not None and not self.d_z > 0:
            raise ValueError("d_z must be positive")

    @property
    def r(self) -> float:
        return abs(self.z)


def assemble(n: int, q: float, max_f):
    """(n!/pi) 2^{n+1-1/q} max_f^{1/q}; works for floats and mpf."""
    if isinstance(max_f, mpmath.mpf):
        qq = mpmath.mpf(q)
        return math.factorial(n) / mpmath.pi * mpmath.mpf(2) ** (n + 1 - 1 / qq) * max_f ** (1 / qq)
    return math.factorial(n) / math.pi * 2.0 ** (n + 1 - 1.0 / q) * max_f ** (1.0 / q)


def _closed_form(params: Params, beta_star: float, ctx: PrecisionCtx):
    n, q = params.n, params.q
    if q == 1 and n % 2 == 1:
        return cf.c_q1_odd(n, ctx)
    if q == 2:
        return cf.c_q2(n, ctx)
    if q == 1:
        with ctx.active():
            f = cf.fq1_even_sum(n, beta_star, ctx)
            return cf.ClosedFormValue(assemble(n, 1, f.value), f.formula_id)
    return None


@lru_cache(maxsize=256)
def _c_pn_cached(n: int, p: float, q: float, tol: float, gridsize: int, digits: int | None,
                 closed_digits: int) -> ConstantRecord:
    params = Params(n, p, q)
    cctx = PrecisionCtx(closed_digits)
    if math.isinf(q):
        lim = cf.c_q_infty(n, cctx)
        return ConstantRecord(params, float(lim.value), Method.LIMIT, 0.0, 0.0,
                              closed_form=mpmath.nstr(lim.value, closed_digits),
                              closed_form_id=lim.formula_id.value)
    prof = profile(params, gridsize, tol)
    max_f = prof.max_value
    diagnostics = {"f_at_0": prof.f_at_0, "f_at_half_pi": prof.f_at_half_pi,
                   "interior_grid_max": prof.interior_max}
    if digits is not None:
        ctx = PrecisionCtx(digits)
        val, err = fq_beta_mp(params, prof.argmax, ctx)
        with ctx.active():
            pipeline = float(assemble(n, q, val))
        diagnostics["bigfloat_max_f"] = mpmath.nstr(val, digits)
        diagnostics["bigfloat_err"] = float(err)
        max_f = float(val)
    else:
        pipeline = assemble(n, q, max_f)
    if q == 1 and n % 2 == 0:
        # same constant without the 2^n factor, kept for comparison only
        diagnostics["even_without_2n"] = pipeline / 2.0 ** n
    closed = _closed_form(params, prof.argmax, cctx)
    if closed is None:
        return ConstantRecord(params, pipeline, Method.PIPELINE, prof.argmax, 0.0, pipeline,
                              max_f=max_f, flat=prof.flat, diagnostics=diagnostics)
    exact = float(closed.value)
    delta = abs(pipeline - exact) / exact
    return ConstantRecord(params, exact, Method.CLOSED_FORM, prof.argmax, delta, pipeline,
                          mpmath.nstr(closed.value, closed_digits), closed.formula_id.value,
                          max_f, prof.flat, diagnostics)


def c_pn(params: Params, tol: float = 1e-12, gridsize: int = DEFAULT_GRID,
         ctx: PrecisionCtx | None = None, closed_digits: int = 30) -> ConstantRecord:
    """The sharp constant C_{p,n}, from the quadrature/optimiser pipeline.

    When a closed form exists (q = 1 with n odd, q = 2, q = inf) it becomes
    ``c_value`` and the relative pipeline disagreement is ``cross_check_delta``.
    With ``ctx`` the maximiser found in double precision is re-integrated in
    big-float arithmetic.
    """
    digits = None if ctx is None else ctx.digits
    return _c_pn_cached(params.n, params.p, params.q, tol, gridsize, digits, closed_digits)


def bound_rhs(record: ConstantRecord, query: BoundQuery) -> float:
    """C_{p,n} (1 - r^2)^{-1/p-n} * norm; +inf once the weight overflows."""
    if query.norm == 0:
        return 0.0
    params = record.params
    expo = params.inv_p + params.n
    base = 1.0 - query.r ** 2
    if base <= 0.0:
        return math.inf
    log_rhs = math.log(record.c_value) - expo * math.log(base) + math.log(query.norm)
    if log_rhs > 709.0:
        return math.inf
    return record.c_value * base ** (-expo) * query.norm


def domain_bound(n: int, d_z: float) -> float:
    """Bound on |f^(n)(z)| when |Re f| <= 1 on a domain at distance d_z from z."""
    if not d_z > 0:
        raise ValueError("d_z must be positive")
    if math.isinf(d_z):
        return 0.0
    return c_pn(Params.from_p(n, math.inf)).c_value / d_z ** n


@dataclass(frozen=True)
class BlochBound:
    value: float
    n: int
    oscillation: float
    convention: str
    odd_order: bool

    def __float__(self):
        return self.value


def bloch_order_n(n: int, oscillation: float = 1.0, convention: str = "midrange") -> BlochBound:
    """Bound on sup (1-|z|^2)^n |f^(n)(z)| for Re f of the given oscillation.

    ``midrange``: subtracting the mid-range constant leaves sup|Re f| = osc/2,
    so the bound is C_{inf,n} * osc / 2.  ``plain``: the weaker statement
    that the bound is C_{inf,n} whenever osc <= 1, i.e. C_{inf,n} * osc.
    Even n is computed from the same chain and flagged via ``odd_order``.
    """
    if oscillation < 0:
        raise ValueError("oscillation must be non-negative")
    c = c_pn(Params.from_p(n, math.inf)).c_value
    if convention == "midrange":
        value = c * oscillation / 2.0
    elif convention == "plain":
        value = c * oscillation
    else:
        raise ValueError(f"unknown convention {convention!r}")
    return BlochBound(value, n, oscillation, convention, n % 2 == 1)
