import math

import mpmath
import numpy as np
import pytest
import sympy as sp
from hypothesis import given, settings, strategies as st

from sharpconst.kernel import (boundary_max, circle_integral, fq_beta, h_factor, i_alpha,
                               kink_points, phi_eval, sub_mean_gap)
from sharpconst.params import Params, PrecisionCtx, QuadResult

qs = st.sampled_from([1.0, 1.25, 1.5, 2.0, 2.5, 3.0, 4.0])
ns = st.integers(1, 6)


def brute_i_alpha(n, q, alpha, r, m=10 ** 6):
    t = np.arange(m) * (2 * np.pi / m)
    e = np.exp(1j * t)
    vals = np.abs((np.exp(1j * (alpha + t)) / (r - e) ** (n + 1)).real) ** q
    return float(vals.sum() * (2 * np.pi / m))


# --- Params ----------------------------------------------------------------

def test_params_conjugacy():
    p = Params.from_p(3, math.inf)
    assert p.q == 1.0 and p.sine_exponent == 2.0
    p = Params.from_q(2, math.inf)
    assert p.p == 1.0 and p.sine_exponent == 3.0
    assert Params.from_p(1, 1.5).q == pytest.approx(3.0)
    with pytest.raises(ValueError):
        Params(1, 2.0, 3.0)
    with pytest.raises(ValueError):
        Params.from_p(0, 2.0)
    with pytest.raises(ValueError):
        Params.from_p(1, 0.5)


@given(n=ns, q=st.floats(1.0, 50.0))
def test_sine_exponent_bound(n, q):
    p = Params.from_q(n, q)
    assert p.sine_exponent >= n - 1 >= 0


# --- phi_eval ----------------------------------------------------------------

def test_phi_eval_trivial():
    assert phi_eval(Params.from_q(1, 1), 0.0, math.pi / 2) == pytest.approx(-1.0, abs=1e-15)
    assert phi_eval(Params.from_q(2, 1), 0.0, math.pi / 2) == pytest.approx(-1.0, abs=1e-15)


def test_phi_eval_against_bigfloat():
    with mpmath.workdps(50):
        v, b = mpmath.mpf("0.7"), mpmath.pi / 4
        ref = mpmath.sin(v) ** 3 * mpmath.cos(4 * v + b - mpmath.pi)
    assert phi_eval(Params.from_q(3, 2), math.pi / 4, 0.7) == pytest.approx(float(ref), rel=1e-14)


def test_phi_eval_domain():
    with pytest.raises(ValueError):
        phi_eval(Params.from_q(1, 1), 0.0, -0.1)
    with pytest.raises(ValueError):
        phi_eval(Params.from_q(1, 1), 0.0, 3.2)


@given(n=ns, q=qs, beta=st.floats(0, math.pi), v=st.floats(0, math.pi))
def test_phi_bounded(n, q, beta, v):
    assert abs(phi_eval(Params.from_q(n, q), beta, v)) <= 1.0 + 1e-15


# --- kink_points -------------------------------------------------------------

def test_kinks_trivial():
    assert kink_points(Params.from_q(1, 1), 0.0) == pytest.approx([math.pi / 4, 3 * math.pi / 4])
    assert kink_points(Params.from_q(2, 1), 0.0) == pytest.approx([math.pi / 3, 2 * math.pi / 3])


def scan_sign_changes(n, beta, m=200001):
    v = np.linspace(0, math.pi, m)
    c = np.cos(v * (n + 1) + beta - math.pi / 2 * (n - 1))
    idx = np.nonzero(c[:-1] * c[1:] < 0)[0]
    out = []
    for i in idx:
        lo, hi = v[i], v[i + 1]
        for _ in range(60):
            mid = 0.5 * (lo + hi)
            cm = math.cos(mid * (n + 1) + beta - math.pi / 2 * (n - 1))
            clo = math.cos(lo * (n + 1) + beta - math.pi / 2 * (n - 1))
            lo, hi = (mid, hi) if cm * clo > 0 else (lo, mid)
        out.append(0.5 * (lo + hi))
    return out


def test_kinks_n4_against_scan():
    got = kink_points(Params.from_q(4, 1), math.pi / 2)
    ref = scan_sign_changes(4, math.pi / 2)
    assert len(got) == 5
    assert got == pytest.approx(ref, abs=1e-12)


@given(n=ns, beta=st.floats(0.01, math.pi - 0.01))
@settings(max_examples=25)
def test_kinks_are_exactly_the_sign_changes(n, beta):
    params = Params.from_q(n, 1.5)
    got = kink_points(params, beta)
    ref = scan_sign_changes(n, beta, 20001)
    assert got == pytest.approx(ref, abs=1e-10)
    assert all(a < b for a, b in zip(got, got[1:]))
    # phi itself changes sign at every kink (sin v > 0 inside)
    for k in got:
        l = phi_eval(params, beta, k - 1e-7)
        r = phi_eval(params, beta, k + 1e-7)
        assert l * r < 0


def test_kinks_need_finite_q():
    with pytest.raises(ValueError):
        kink_points(Params.from_q(1, math.inf), 0.0)


# --- fq_beta -----------------------------------------------------------------

@pytest.mark.parametrize("beta", [0.0, 0.4, 1.3, math.pi / 2, 2.9])
def test_fq_n1_q1_is_two(beta):
    res = fq_beta(Params.from_q(1, 1), beta)
    assert isinstance(res, QuadResult)
    assert res.value == pytest.approx(2.0, rel=1e-12)
    assert res.err_estimate <= 1e-12 * 2.0 * 10


def test_fq_n2_q1_beta0_piecewise_antiderivative():
    # |sin v sin 3v| integrated panel by panel with A(v) = sin 2v/4 - sin 4v/8
    A = lambda v: math.sin(2 * v) / 4 - math.sin(4 * v) / 8
    pts = [0, math.pi / 3, 2 * math.pi / 3, math.pi]
    ref = sum(abs(A(b) - A(a)) for a, b in zip(pts, pts[1:]))
    assert ref == pytest.approx(3 * math.sqrt(3) / 4, rel=1e-15)
    assert fq_beta(Params.from_q(2, 1), 0.0).value == pytest.approx(ref, rel=1e-12)


def test_fq_n1_q2_termwise():
    v, b = sp.symbols("v b", real=True)
    expr = sp.expand(sp.expand_trig(sp.sin(v) ** 2 * sp.cos(2 * v + b) ** 2))
    ref = sp.simplify(sp.integrate(expr, (v, 0, sp.pi)))
    assert ref == sp.pi / 4
    for beta in (0.0, 0.3, 1.1, 2.5):
        assert fq_beta(Params.from_q(1, 2), beta).value == pytest.approx(math.pi / 4, rel=1e-12)


def test_fq_bigfloat_matches_double():
    params = Params.from_q(3, 1.5)
    a = fq_beta(params, 0.7).value
    b = fq_beta(params, 0.7, ctx=PrecisionCtx(30)).value
    assert a == pytest.approx(b, rel=1e-12)


def test_fq_large_q_peak():
    # near v = pi/2 the integrand is ~exp(-q a d^2) with a = (n+1)/2 + (n+1)^2/2
    n, q = 3, 1e5
    a = (n + 1) / 2 + (n + 1) ** 2 / 2
    laplace = math.sqrt(math.pi / (q * a))
    assert fq_beta(Params.from_q(n, q), 0.0).value == pytest.approx(laplace, rel=1e-3)


def test_fq_rejects_infinite_q():
    with pytest.raises(ValueError):
        fq_beta(Params.from_q(1, math.inf), 0.0)


@given(n=ns, q=qs, beta=st.floats(0, math.pi))
@settings(max_examples=25)
def test_fq_symmetry(n, q, beta):
    params = Params.from_q(n, q)
    tol = 1e-12
    a = fq_beta(params, beta, tol).value
    b = fq_beta(params, math.pi - beta, tol).value
    assert abs(a - b) <= 2 * tol * 10 * max(a, 1.0)


@pytest.mark.parametrize("n", [1, 2, 3, 4, 5])
def test_q2_flat(n):
    params = Params.from_q(n, 2)
    tol = 1e-12
    vals = [fq_beta(params, b, tol).value for b in np.linspace(0, math.pi, 64)]
    assert max(vals) - min(vals) <= 10 * tol * max(vals)


# --- i_alpha -----------------------------------------------------------------

def test_i_alpha_r0_collapse():
    assert i_alpha(Params.from_q(1, 1), 0.0, 0.0).value == pytest.approx(4.0, rel=1e-12)


@pytest.mark.parametrize("n,q,alpha", [(1, 1.0, 0.3), (2, 1.5, 1.0), (3, 3.0, 2.2), (4, 2.0, 0.0)])
def test_i_alpha_r0_matches_beta_function(n, q, alpha):
    # at r = 0 the integrand is |cos(alpha - n t)|^q, whose integral over 2 pi is 2 B(1/2, (q+1)/2)
    ref = 2 * float(mpmath.beta(0.5, (q + 1) / 2))
    assert i_alpha(Params.from_q(n, q), alpha, 0.0).value == pytest.approx(ref, rel=1e-11)


def test_i_alpha_against_fine_trapezoid():
    params = Params.from_q(2, 2)
    alpha, r = math.pi / 3, 0.5
    got = i_alpha(params, alpha, r).value
    assert got == pytest.approx(brute_i_alpha(2, 2.0, alpha, r), rel=1e-9)
    fmax = max(fq_beta(params, b).value for b in np.linspace(0, math.pi / 2, 9))
    bound = 2 ** (3 * 2 - 1) * (1 - r * r) ** (1 - 3 * 2) * fmax
    assert got <= bound * (1 + 1e-12)


def test_i_alpha_increasing_in_r():
    params = Params.from_q(1, 1)
    lo = i_alpha(params, 0.0, 0.5).value
    hi = i_alpha(params, 0.0, 0.9).value
    assert lo == pytest.approx(brute_i_alpha(1, 1.0, 0.0, 0.5), rel=1e-6)
    assert hi == pytest.approx(brute_i_alpha(1, 1.0, 0.0, 0.9), rel=1e-5)
    assert math.isfinite(hi) and hi > lo


def test_i_alpha_near_one_needs_bigfloat():
    params = Params.from_q(1, 1.5)
    with pytest.raises(ValueError):
        i_alpha(params, 0.0, 0.9995)
    big = i_alpha(params, 0.0, 0.9995, tol=1e-10, ctx=PrecisionCtx(20))
    assert math.isfinite(big.value) and big.value > 0


def test_i_alpha_bigfloat_agrees():
    params = Params.from_q(2, 1.5)
    a = i_alpha(params, 0.4, 0.7).value
    b = i_alpha(params, 0.4, 0.7, ctx=PrecisionCtx(25)).value
    assert a == pytest.approx(b, rel=1e-11)


# --- h_factor ----------------------------------------------------------------

def test_h_factor_r0_n1_pinf():
    assert h_factor(Params.from_p(1, math.inf), 0.0) == pytest.approx(4 / math.pi, rel=1e-12)


def test_h_factor_against_brute_grid():
    n, q, r = 2, 2.0, 0.3
    m = 10 ** 5
    t = np.arange(m) * (2 * np.pi / m)
    base = np.exp(1j * t) / (r - np.exp(1j * t)) ** (n + 1)
    best = 0.0
    for alpha in np.arange(512) * (2 * np.pi / 512):
        val = float(np.sum((np.exp(1j * alpha) * base).real ** 2) * (2 * np.pi / m))
        best = max(best, val)
    brute = math.factorial(n) / math.pi * best ** (1 / q)
    got = h_factor(Params.from_q(n, q), r)
    assert got >= brute * (1 - 1e-12)
    assert got == pytest.approx(brute, rel=1e-4)


def test_h_factor_p1_uses_sup():
    n, r = 2, 0.4
    assert h_factor(Params.from_p(n, 1), r) == pytest.approx(
        math.factorial(n) / math.pi / (1 - r) ** (n + 1), rel=1e-12)


# --- boundary maximum and sub-mean-value -------------------------------------

def test_boundary_integral_identity():
    # on |z| = 1 the integral is 2^{(n+1)q-1} F_q(alpha + n t)
    n, q, alpha, t = 3, 1.5, 0.3, 0.8
    params = Params.from_q(n, q)
    z = complex(math.cos(t), math.sin(t))
    ref = 2 ** ((n + 1) * q - 1) * fq_beta(params, alpha + n * t).value
    assert circle_integral(params, alpha, z) == pytest.approx(ref, rel=1e-9)


@pytest.mark.parametrize("n,q,alpha,z", [(2, 1.0, 0.5, 0.3 + 0.4j), (3, 2.5, 1.2, -0.6j),
                                         (1, 1.5, 0.0, 0.8)])
def test_boundary_maximum(n, q, alpha, z):
    params = Params.from_q(n, q)
    inner = circle_integral(params, alpha, z)
    assert inner <= boundary_max(params, alpha) * (1 + 1e-9)


@pytest.mark.parametrize("n,q,z0", [(2, 1.0, 0.2 + 0.1j), (4, 1.5, -0.5 + 0.3j), (1, 3.0, 0.7j)])
def test_sub_mean_value(n, q, z0):
    center, avg = sub_mean_gap(Params.from_q(n, q), 0.4, z0, 0.05)
    assert center <= avg + 1e-9 * abs(avg)
