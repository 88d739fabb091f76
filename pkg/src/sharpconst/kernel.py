"""The kernel profile phi_beta, its L^q integral F_q(beta), and the sharp factor H_{n,p}(r).

Conventions: ``beta`` and ``v`` are radians, ``F_q`` is always the integral of
|phi_beta|^q over [0, pi] (no power-of-two prefactor).
"""

from __future__ import annotations

import math

import mpmath
import numpy as np

from .params import Params, PrecisionCtx, QuadResult
from .quadrature import QuadratureError, integrate_panels, sign_change_roots
from .search import golden_max

R_MAX_DOUBLE = 0.999


def _phase(params: Params, beta):
    return beta - 0.5 * math.pi * (params.n - 1)


def phi(params: Params, beta: float, v):
    """Vectorised phi_beta(v); no domain checks."""
    n = params.n
    return np.sin(v) ** params.sine_exponent * np.cos(v * (n + 1) + _phase(params, beta))


def phi_eval(params: Params, beta: float, v: float) -> float:
    """phi_beta(v) = sin^{(n+1)-2/q}(v) * cos(v(n+1) + beta - pi(n-1)/2) for v in [0, pi]."""
    if not 0.0 <= v <= math.pi:
        raise ValueError(f"v={v!r} outside [0, pi]")
    return float(phi(params, beta, np.float64(v)))


def kink_points(params: Params, beta: float) -> list[float]:
    """Interior zeros of the cosine factor, ascending."""
    if math.isinf(params.q):
        raise ValueError("kink points are only defined for finite q")
    n = params.n
    shift = 0.5 * math.pi + 0.5 * math.pi * (n - 1) - beta
    # v_j = (shift + j*pi)/(n+1) must lie in (0, pi)
    j_lo = math.floor(-shift / math.pi) - 1
    j_hi = math.ceil(((n + 1) * math.pi - shift) / math.pi) + 1
    eps = 1e-14
    out = []
    for j in range(j_lo, j_hi + 1):
        v = (shift + j * math.pi) / (n + 1)
        if eps < v < math.pi - eps:
            out.append(v)
    return sorted(out)


def _peak_breaks(g, lo: float, hi: float, q: float) -> list[float]:
    """Extra breakpoints bracketing the peak of |g|^q inside (lo, hi) for large q."""
    xs = np.linspace(lo, hi, 65)[1:-1]
    c = float(xs[np.argmax(np.abs(g(xs)))])
    width = 1.0 / math.sqrt(q)
    pts = [c]
    k = 1.0
    while k * width < hi - lo:
        pts.extend([c - k * width, c + k * width])
        k *= 2.0
    return sorted(x for x in pts if lo < x < hi)


def _breakpoints(params: Params, beta: float) -> list[float]:
    pts = [0.0, *kink_points(params, beta), math.pi]
    if params.q > 16:
        g = lambda v: phi(params, beta, v)
        extra = []
        for a, b in zip(pts[:-1], pts[1:]):
            extra.extend(_peak_breaks(g, a, b, params.q))
        pts = sorted(set(pts) | set(extra))
    return pts


def fq_beta(params: Params, beta: float, tol: float = 1e-12,
            ctx: PrecisionCtx | None = None) -> QuadResult:
    """F_q(beta): integral of |phi_beta(v)|^q over [0, pi], split at the kinks.

    ``tol`` is relative.  With ``ctx`` the panels are integrated by mpmath at
    ``ctx.digits`` and the value is returned rounded to double.
    """
    if math.isinf(params.q):
        raise ValueError("F_q is undefined for q = inf; use the sup form")
    if tol <= 0:
        raise ValueError("tol must be positive")
    q = params.q
    pts = _breakpoints(params, beta)
    if ctx is None:
        res = integrate_panels(lambda v: np.abs(phi(params, beta, v)) ** q, pts, tol)
        return QuadResult(res.value, res.err_estimate, res.panels,
                          tuple(kink_points(params, beta)))
    val, err = _fq_beta_mp(params, beta, pts, ctx)
    if err > tol * abs(val):
        raise QuadratureError(f"mpmath quadrature error {err} exceeds tolerance")
    return QuadResult(float(val), float(err), len(pts) - 1, tuple(kink_points(params, beta)))


def fq_beta_mp(params: Params, beta, ctx: PrecisionCtx):
    """Big-float F_q(beta) as an mpmath number (value, error estimate)."""
    return _fq_beta_mp(params, beta, _breakpoints(params, float(beta)), ctx)


def _fq_beta_mp(params: Params, beta, pts, ctx: PrecisionCtx):
    with ctx.active():
        n = params.n
        a = mpmath.mpf(n + 1) - mpmath.mpf(2) / mpmath.mpf(params.q)
        q = mpmath.mpf(params.q)
        ph = mpmath.mpf(beta) - mpmath.pi * (n - 1) / 2

        def f(v):
            return abs(mpmath.sin(v) ** a * mpmath.cos(v * (n + 1) + ph)) ** q

        kinks = _kinks_mp(params, beta)
        # peak breakpoints (large q only) come from the double-precision layout
        extra = [mpmath.mpf(x) for x in pts[1:-1]
                 if all(abs(x - float(k)) > 1e-9 for k in kinks)]
        nodes = sorted({mpmath.mpf(0), mpmath.pi, *kinks, *extra})
        val, err = mpmath.quad(f, nodes, error=True)
        return +val, +err


def _kinks_mp(params: Params, beta):
    n = params.n
    shift = mpmath.pi / 2 + mpmath.pi * (n - 1) / 2 - mpmath.mpf(beta)
    out = []
    for j in range(-n - 3, n + 4):
        v = (shift + j * mpmath.pi) / (n + 1)
        if 0 < v < mpmath.pi:
            out.append(v)
    return out


# ---------------------------------------------------------------------------
# the sharp factor integral I_alpha(r) and H_{n,p}(r)


def _s_grid(r: float, n: int) -> np.ndarray:
    """Scan grid on [0, 2pi] refined near s = 0, where the kernel varies on scale 1 - r."""
    m = 64 * (n + 1) + 256
    uni = np.linspace(0.0, 2.0 * math.pi, m + 1)
    # image of a uniform grid under the disk automorphism that concentrates at 0
    sig = np.linspace(-math.pi, math.pi, m + 1)[1:-1]
    k = (1.0 - r) / (1.0 + r)
    clustered = np.mod(2.0 * np.arctan(k * np.tan(0.5 * sig)), 2.0 * math.pi)
    return np.unique(np.concatenate([uni, clustered]))


def _i_alpha_real(params: Params, alpha: float, r: float):
    """Re[e^{i alpha} (r - e^{is}) (1 - r e^{is})^n e^{-i(n+1)s}] as a function of s."""
    n = params.n
    ea = complex(math.cos(alpha), math.sin(alpha))

    def g(s):
        e = np.exp(1j * s)
        return (ea * (r - e) * (1.0 - r * e) ** n * np.exp(-1j * (n + 1) * s)).real

    return g


def i_alpha(params: Params, alpha: float, r: float, tol: float = 1e-12,
            ctx: PrecisionCtx | None = None) -> QuadResult:
    """I_alpha(r) = int_0^{2pi} |Re(e^{i(alpha+t)} / (r - e^{it})^{n+1})|^q dt.

    Evaluated after the disk automorphism e^{it} = (r - e^{is})/(1 - r e^{is}),
    which turns the integrand into
    (1-r^2)^{1-q(n+1)} |g(s)|^q / |1 - r e^{is}|^2 with g a trigonometric polynomial.
    """
    if not 0.0 <= r < 1.0:
        raise ValueError("r must satisfy 0 <= r < 1")
    if math.isinf(params.q):
        raise ValueError("I_alpha needs finite q; use h_factor for p = 1")
    if r > R_MAX_DOUBLE and ctx is None:
        raise ValueError(f"r > {R_MAX_DOUBLE} needs big-float mode (pass ctx)")
    n, q = params.n, params.q
    g = _i_alpha_real(params, alpha, r)
    grid = _s_grid(r, n)
    roots = sign_change_roots(g, grid)
    roots = roots[(roots > 0.0) & (roots < 2.0 * math.pi)]
    if ctx is not None:
        return _i_alpha_mp(params, alpha, r, roots, ctx)
    pre = (1.0 - r * r) ** (1.0 - q * (n + 1))
    w = lambda s: 1.0 / np.abs(1.0 - r * np.exp(1j * s)) ** 2
    res = integrate_panels(lambda s: w(s) * np.abs(g(s)) ** q,
                           [0.0, *roots.tolist(), 2.0 * math.pi], tol)
    return QuadResult(pre * res.value, pre * res.err_estimate, res.panels, res.kinks)


def _i_alpha_mp(params, alpha, r, roots, ctx):
    n, q = params.n, params.q
    with ctx.active():
        rr, qq = mpmath.mpf(r), mpmath.mpf(q)
        ea = mpmath.expjpi(mpmath.mpf(alpha) / mpmath.pi)

        def g(s):
            e = mpmath.expj(s)
            return mpmath.re(ea * (rr - e) * (1 - rr * e) ** n * mpmath.expj(-(n + 1) * s))

        def f(s):
            return abs(g(s)) ** qq / abs(1 - rr * mpmath.expj(s)) ** 2

        nodes = [mpmath.mpf(0)]
        for x in roots:
            try:
                nodes.append(mpmath.findroot(g, mpmath.mpf(x)))
            except (ValueError, ZeroDivisionError):
                nodes.append(mpmath.mpf(x))
        nodes.append(2 * mpmath.pi)
        nodes = sorted(set(nodes))
        val, err = mpmath.quad(f, nodes, error=True)
        pre = (1 - rr * rr) ** (1 - qq * (n + 1))
        return QuadResult(float(pre * val), float(pre * err), len(nodes) - 1,
                          tuple(float(x) for x in nodes[1:-1]))


def h_factor(params: Params, r: float, tol: float = 1e-12, n_alpha: int = 48,
             ctx: PrecisionCtx | None = None) -> float:
    """H_{n,p}(r) = (n!/pi) sup_alpha I_alpha(r)^{1/q}.

    I_alpha is pi-periodic in alpha, so the sup is taken over a grid on
    [0, pi) followed by golden-section refinement.  For p = 1 the L^q norm is
    replaced by the sup of the kernel modulus, |r - e^{it}|^{-(n+1)}.
    """
    if not 0.0 <= r < 1.0:
        raise ValueError("r must satisfy 0 <= r < 1")
    n = params.n
    scale = math.factorial(n) / math.pi
    if math.isinf(params.q):
        t = np.linspace(0.0, 2.0 * math.pi, 4097)
        kern = np.abs(r - np.exp(1j * t)) ** (-(n + 1))
        return scale * float(kern.max())
    f = lambda a: i_alpha(params, a, r, tol, ctx).value
    alphas = np.linspace(0.0, math.pi, n_alpha, endpoint=False)
    vals = np.array([f(a) for a in alphas])
    j = int(np.argmax(vals))
    step = math.pi / n_alpha
    _, best = golden_max(f, alphas[j] - step, alphas[j] + step, xtol=1e-9)
    best = max(best, float(vals[j]))
    return scale * best ** (1.0 / params.q)


# ---------------------------------------------------------------------------
# the integrand of the boundary-maximum argument, as a function of z


def f_alpha(params: Params, alpha: float, z: complex, s):
    """|Re[e^{i(alpha+s)} (z - e^{is})^{n-1}]|^q |z - e^{is}|^{2q-2}."""
    e = np.exp(1j * s)
    d = z - e
    re = (np.exp(1j * (alpha + s)) * d ** (params.n - 1)).real
    return np.abs(re) ** params.q * np.abs(d) ** (2.0 * params.q - 2.0)


def circle_integral(params: Params, alpha: float, z: complex, tol: float = 1e-11) -> float:
    """Integral over s in [0, 2pi] of f_alpha(z, e^{is})."""
    n, q = params.n, params.q

    def g(s):
        return (np.exp(1j * (alpha + s)) * (z - np.exp(1j * s)) ** (n - 1)).real

    grid = np.linspace(0.0, 2.0 * math.pi, 128 * (n + 1) + 1)
    extra = []
    if abs(z) > 1.0 - 1e-12:
        # |z - e^{is}| vanishes at s = arg z
        extra.append(float(np.mod(np.angle(z), 2.0 * math.pi)))
    roots = sign_change_roots(g, grid)
    pts = sorted({0.0, 2.0 * math.pi, *[x for x in roots.tolist() + extra
                                          if 0.0 < x < 2.0 * math.pi]})
    weight = lambda s: np.abs(z - np.exp(1j * s)) ** (2.0 * q - 2.0)
    f = lambda s: weight(s) * np.abs(g(s)) ** q
    try:
        return integrate_panels(f, pts, tol).value
    except QuadratureError:
        # coincident near-zeros can defeat the scan; a looser tolerance always terminates
        return integrate_panels(f, pts, 1e-8).value


def boundary_max(params: Params, alpha: float, points: int = 256, tol: float = 1e-11) -> float:
    """Max over a uniform grid of |z| = 1 of circle_integral."""
    ts = np.arange(points) * (2.0 * math.pi / points)
    return max(circle_integral(params, alpha, complex(math.cos(t), math.sin(t)), tol) for t in ts)


def sub_mean_gap(params: Params, alpha: float, z0: complex, rho: float, points: int = 32,
                 tol: float = 1e-11) -> tuple[float, float]:
    """(value at z0, average over the circle |z - z0| = rho) of circle_integral."""
    center = circle_integral(params, alpha, z0, tol)
    th = np.arange(points) * (2.0 * math.pi / points)
    avg = float(np.mean([circle_integral(params, alpha, z0 + rho * np.exp(1j * t), tol)
                         for t in th]))
    return center, avg
