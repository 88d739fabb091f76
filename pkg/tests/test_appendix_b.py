import math
from fractions import Fraction

import mpmath
import pytest
from hypothesis import given, settings, strategies as st

from sharpconst import appendix_b as ab
from sharpconst.params import PrecisionCtx

CTX60 = PrecisionCtx(60)


def direct_sum(s, beta, dps):
    with mpmath.workdps(dps):
        b = mpmath.mpf(beta)
        return mpmath.fsum(mpmath.sin((k * mpmath.pi - b) / s) ** s for k in range(1, s + 1))


def test_sumspec_validation():
    assert ab.SumSpec(7).m == 3
    for bad in (2, 1, 8):
        with pytest.raises(ValueError):
            ab.SumSpec(bad)


def test_g0_against_gamma_ratio():
    for s in (3, 7, 20, 99):
        with mpmath.workdps(60):
            ref = 2 * mpmath.gamma(mpmath.mpf(s + 1) / 2) / (mpmath.sqrt(mpmath.pi) * mpmath.gamma(mpmath.mpf(s) / 2))
        assert abs(ab.g0(s, CTX60) - ref) < mpmath.mpf(10) ** -55


@pytest.mark.parametrize("s", [4, 6, 10, 30])
def test_even_s_sum_is_constant(s):
    for beta in ("0", "0.4", "2.5"):
        assert abs(ab.f_sum(s, mpmath.mpf(beta), CTX60) - ab.g0(s, CTX60)) < mpmath.mpf(10) ** -50


@pytest.mark.parametrize("s", [3, 5, 7, 21, 99])
def test_first_coefficient_product_form(s):
    # (4/pi) * 1/(s+2) * 2/(s+4) * ... * s/(3s)
    prod = Fraction(1)
    for k in range(1, s + 1):
        prod *= Fraction(k, s + 2 * k)
    assert abs(ab.gl_exact(s, 1)) == prod
    assert abs(ab.gl_exact(s, 1)) == ab.excess_prefactor(s)


def test_coefficient_signs_and_log():
    m = 49
    assert (ab.gl_exact(99, 1) > 0) == ((m % 2) == 0)
    assert ab.gl_exact(99, 1) * ab.gl_exact(99, 2) < 0
    assert ab.gl_log10(99, 1) == pytest.approx(math.log10(2.5799047817666e-70), abs=1e-9)
    with pytest.raises(ValueError):
        ab.gl_exact(99, 0)


def test_f_sum_against_direct():
    got = ab.f_sum(99, 0, PrecisionCtx(150))
    assert abs(got - direct_sum(99, 0, 170)) < mpmath.mpf(10) ** -140


def test_symmetries_of_g():
    s = 7
    with CTX60.active():
        for x in ("0.3", "1.1", "2.7"):
            x = mpmath.mpf(x)
            assert abs(ab.g(s, x, CTX60) - ab.g(s, -x, CTX60)) < mpmath.mpf(10) ** -50
            assert abs(ab.g(s, x, CTX60) + ab.g(s, x + s * mpmath.pi, CTX60)) < mpmath.mpf(10) ** -50


def test_fourier_convention_is_shifted():
    assert ab.resolve_fourier_convention(CTX60) == "g"


@given(s=st.sampled_from([3, 5, 7, 9, 19]), x=st.floats(-6, 6))
@settings(max_examples=20)
def test_fourier_expansion_matches_direct(s, x):
    assert ab.fourier_expansion_check(s, x, CTX60) < mpmath.mpf(10) ** -45


@given(s=st.sampled_from([3, 5, 7, 19]), beta=st.floats(0, math.pi))
@settings(max_examples=20)
def test_shift_identity(s, beta):
    assert ab.shift_identity_check(s, beta, CTX60) < mpmath.mpf(10) ** -45


@pytest.mark.parametrize("s", [5, 7, 9, 11])
def test_small_s_excess_is_positive(s):
    res = ab.residual_cascade(s, levels=1, ctx=CTX60)
    assert res[0] > 0


def test_cascade_defaults_to_maximum():
    assert ab.maximum_beta(99) == 0.0
    assert ab.maximum_beta(101) == pytest.approx(math.pi / 2)


def test_cascade_at_s101_is_alternating_sum():
    # x = 0, so every cosine is 1 and the residual after L terms is bounded by the next term
    s, levels = 101, 4
    ctx = PrecisionCtx(ab.recommended_digits(s, levels))
    res = ab.residual_cascade(s, levels=levels, ctx=ctx)
    with ctx.active():
        for L in range(levels - 1):
            nxt = abs(ab.gl(s, L + 1, ctx))
            assert abs(res[L]) <= 2 * nxt
            assert abs(res[L]) >= nxt / 2


def test_cascade_refuses_low_precision():
    with pytest.raises(ab.PrecisionError):
        ab.residual_cascade(99, levels=3, ctx=PrecisionCtx(60))
    with pytest.raises(ValueError):
        ab.residual_cascade(99, ctx=PrecisionCtx(20))


def test_recommended_digits_is_sufficient():
    d = ab.recommended_digits(99, 3)
    res = ab.residual_cascade(99, levels=3, ctx=PrecisionCtx(d))
    ref = ab.residual_cascade(99, levels=3, ctx=PrecisionCtx(d + 60))
    with mpmath.workdps(d + 60):
        for a, b in zip(res, ref):
            assert abs(a - b) / abs(b) < mpmath.mpf(10) ** -10


def test_asymptotic_rate():
    rates = ab.asymptotic_probe([19, 99, 301], PrecisionCtx(40))
    gaps = [abs(float(r) - 27) for _, r in rates]
    assert gaps == sorted(gaps, reverse=True)
    with pytest.raises(ValueError):
        ab.asymptotic_probe([99, 19])


def test_local_maxima_observational():
    peaks = ab.local_maxima(9, samples=129, ctx=PrecisionCtx(40))
    assert any(abs(x) < 0.1 or abs(abs(x) - math.pi / 2) < 0.1 for x, _ in peaks)


def test_second_residual_is_pinned_by_third():
    # residual 1 minus g_2 (cos 4x = 1 at x = -pi/2) must reproduce residual 2 ~ 7.92129e-120
    ctx = PrecisionCtx(250)
    r0, r1, r2 = ab.residual_cascade(99, levels=3, ctx=ctx)
    with ctx.active():
        g2 = ab.gl(99, 2, ctx)
        assert abs(r1 - g2 - r2) < mpmath.mpf(10) ** -200
        assert mpmath.nstr(abs(r2), 6) == "7.92129e-120"
        # g_2 from the exact rational agrees with residual 1 to its leading digits
        assert mpmath.nstr(abs(g2), 8) == "5.9110594e-102"
        assert abs(r1 / g2 - 1) < mpmath.mpf(10) ** -17
