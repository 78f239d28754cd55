from fractions import Fraction

import mpmath
import pytest
from hypothesis import given
from hypothesis import strategies as st

from cyclespec.bessel import bessel_i, bessel_tail_index, tail_bound_for_index
from cyclespec.numeric import DomainError, context


@pytest.mark.parametrize("nu", [0, 1, 4, 17, 40])
@pytest.mark.parametrize("t", ["0.1", "1", "5", "30"])
def test_against_mpmath_besseli(nu, t):
    ctx = context(128)
    tt = ctx.mpf(t)
    ev = bessel_i(nu, tt, 128)
    with mpmath.workprec(200):
        ref = mpmath.besseli(nu, mpmath.mpf(t))
    assert abs(ev.value - ref) <= ev.tail_bound + ctx.ldexp(abs(ref), -120)


def test_negative_order_is_symmetric():
    assert bessel_i(-3, 2).value == bessel_i(3, 2).value


def test_zero_argument():
    assert bessel_i(0, 0).value == 1
    assert bessel_i(2, 0).value == 0


def test_negative_argument_rejected():
    with pytest.raises(DomainError):
        bessel_i(1, -1)


@given(
    st.integers(min_value=2, max_value=30),
    st.data(),
    st.sampled_from([Fraction(1, 10), Fraction(1), Fraction(5), Fraction(20)]),
)
def test_tail_index_certificate(m, data, t):
    ell = data.draw(st.integers(min_value=0, max_value=m - 1))
    ctx = context(128)
    tt = ctx.mpf(t.numerator) / t.denominator
    eps = ctx.ldexp(ctx.one, -90)
    K = bessel_tail_index(m, ell, tt, eps, 128)
    assert tail_bound_for_index(m, ell, tt, K, ctx) < eps
    # the bound really dominates the first dropped images
    with mpmath.workprec(200):
        dropped = sum(
            mpmath.exp(-tt) * mpmath.besseli(abs(ell + k * m), tt) for k in (K + 1, -K - 1, K + 2, -K - 2)
        )
    assert dropped <= tail_bound_for_index(m, ell, tt, K, ctx)
