from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from cyclespec.heat import (
    IMAGE,
    SPECTRAL,
    CycleParams,
    check_method_agreement,
    eigenvalues,
    heat_kernel_cycle,
    heat_residual,
)
from cyclespec.numeric import DomainError, approx_eq, context

from oracles import twisted_laplacian_matrix

betas = st.fractions(min_value=0, max_value=3, max_denominator=12)
ms = st.integers(min_value=2, max_value=12)


@pytest.mark.parametrize("m, beta", [(2, Fraction(0)), (3, Fraction(1, 4)), (7, Fraction(7, 10)), (10, Fraction(1, 3))])
@pytest.mark.parametrize("t", [Fraction(1, 10), Fraction(2)])
def test_matches_matrix_exponential(m, beta, t):
    ctx = context(160)
    K = ctx.expm(-ctx.mpf(t.numerator) / t.denominator * twisted_laplacian_matrix(m, beta, ctx))
    p = CycleParams(m, beta, 160)
    tt = ctx.mpf(t.numerator) / t.denominator
    for x in range(m):
        for y in range(m):
            for method in (SPECTRAL, IMAGE):
                got = heat_kernel_cycle(p, x, y, tt, method).value
                assert abs(got - K[x, y]) < ctx.ldexp(ctx.one, -120)


def test_eigenvalues_are_two_sin_squared():
    ctx = context(128)
    lams = eigenvalues(CycleParams(4, Fraction(1, 4), 128))
    expected = [2 * ctx.sinpi((j + ctx.mpf(1) / 4) / 4) ** 2 for j in range(4)]
    assert all(approx_eq(a, b) for a, b in zip(lams, expected))


def test_kernel_at_time_zero_is_delta():
    p = CycleParams(5, Fraction(1, 3))
    for y in range(5):
        assert approx_eq(heat_kernel_cycle(p, 2, y, 0).value, 1 if y == 2 else 0)


def test_bad_inputs():
    with pytest.raises(DomainError):
        CycleParams(1)
    with pytest.raises(DomainError):
        heat_kernel_cycle(CycleParams(3), 0, 0, -1)
    with pytest.raises(DomainError):
        heat_kernel_cycle(CycleParams(3), 0, 0, 1, "fourier")


@given(ms, betas, st.data(), st.sampled_from([Fraction(1, 10), Fraction(1), Fraction(5)]))
def test_image_and_spectral_agree(m, beta, data, t):
    x = data.draw(st.integers(min_value=0, max_value=m - 1))
    y = data.draw(st.integers(min_value=0, max_value=m - 1))
    ctx = context(128)
    delta, budget = check_method_agreement(CycleParams(m, beta), x, y, ctx.mpf(t.numerator) / t.denominator)
    assert delta < budget


@given(ms, betas, st.data())
def test_depends_on_beta_mod_one(m, beta, data):
    x = data.draw(st.integers(min_value=0, max_value=m - 1))
    a = heat_kernel_cycle(CycleParams(m, beta), x, 0, 1).value
    b = heat_kernel_cycle(CycleParams(m, beta + 2), x, 0, 1).value
    assert approx_eq(a, b)


@given(ms, betas, st.data())
def test_semigroup_property(m, beta, data):
    x = data.draw(st.integers(min_value=0, max_value=m - 1))
    y = data.draw(st.integers(min_value=0, max_value=m - 1))
    p = CycleParams(m, beta)
    lhs = heat_kernel_cycle(p, x, y, Fraction(3, 2)).value
    rhs = sum(heat_kernel_cycle(p, x, z, 1).value * heat_kernel_cycle(p, z, y, Fraction(1, 2)).value for z in range(m))
    assert approx_eq(lhs, rhs)


@given(ms, betas, st.data())
def test_hermitian(m, beta, data):
    x = data.draw(st.integers(min_value=0, max_value=m - 1))
    y = data.draw(st.integers(min_value=0, max_value=m - 1))
    p = CycleParams(m, beta)
    assert approx_eq(heat_kernel_cycle(p, x, y, 1).value, heat_kernel_cycle(p, y, x, 1).value.conjugate())


@given(ms, betas, st.data())
def test_solves_the_heat_equation(m, beta, data):
    x = data.draw(st.integers(min_value=0, max_value=m - 1))
    p = CycleParams(m, beta)
    ctx = p.ctx
    assert heat_residual(p, x, 0, Fraction(1, 2), analytic=True) < ctx.ldexp(ctx.one, -100)
    # the central difference is limited by h^2
    assert heat_residual(p, x, 0, Fraction(1, 2)) < ctx.ldexp(ctx.one, -36)


def test_untwisted_kernel_sums_to_one():
    p = CycleParams(9, 0)
    total = sum(heat_kernel_cycle(p, x, 0, 3).value for x in range(9))
    assert approx_eq(total, 1)
