from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from cyclespec import numeric
from cyclespec.numeric import (
    DomainError,
    approx_eq,
    as_rational,
    context,
    default_tolerance,
    divide,
    exp_2pi_i,
    parse_complex,
    reduce_mod,
    resolve_precision,
    sinpi,
)


def test_decimal_strings_are_exact():
    assert as_rational("0.3") == Fraction(3, 10)
    assert as_rational("7/10") == Fraction(7, 10)
    assert as_rational(0.1) == Fraction(1, 10)
    assert as_rational("-2/-4") == Fraction(1, 2)


@pytest.mark.parametrize("bad", ["1/0", "abc", "nan", "inf"])
def test_bad_rationals(bad):
    with pytest.raises(DomainError):
        as_rational(bad)


@pytest.mark.parametrize(
    "text, expected",
    [
        ("1+2i", (1, 2)),
        ("3", (3, 0)),
        ("-i", (0, -1)),
        ("2.5-0.5i", (Fraction(5, 2), Fraction(-1, 2))),
        ("4j", (0, 4)),
    ],
)
def test_parse_complex(text, expected):
    assert parse_complex(text) == tuple(Fraction(x) for x in expected)


def test_parse_complex_rejects_garbage():
    with pytest.raises(DomainError):
        parse_complex("1+2k")


def test_tolerance_at_default_precision():
    tol = default_tolerance(128)
    assert tol.abs_eps == tol.rel_eps == Fraction(1, 2**80)


def test_precision_env_override(monkeypatch):
    monkeypatch.setenv(numeric.PRECISION_ENV_VAR, "200")
    assert resolve_precision(None) == 200
    assert resolve_precision(96) == 96
    monkeypatch.setenv(numeric.PRECISION_ENV_VAR, "12")
    with pytest.raises(DomainError):
        resolve_precision(None)


def test_divide_refuses_tiny_divisor():
    ctx = context(128)
    with pytest.raises(DomainError):
        divide(ctx.one, ctx.ldexp(ctx.one, -100))
    assert divide(ctx.one, ctx.mpf(4)) == ctx.mpf(1) / 4


def test_values_keep_their_context():
    z = exp_2pi_i(Fraction(1, 7), context(200))
    assert z.context.prec == 200


@given(st.fractions(max_denominator=1000), st.integers(min_value=1, max_value=5))
def test_reduce_mod_range(q, period):
    r = reduce_mod(q, period)
    assert 0 <= r < period
    assert (q - r) % period == 0


@given(st.fractions(min_value=-5, max_value=5, max_denominator=60))
def test_exp_2pi_i_matches_mpmath(q):
    ctx = context(128)
    ref = ctx.expjpi(2 * ctx.mpf(q.numerator) / q.denominator)
    assert approx_eq(exp_2pi_i(q, ctx), ref)


@given(st.integers(min_value=-50, max_value=50))
def test_sinpi_vanishes_exactly_at_integers(k):
    assert sinpi(Fraction(k), context(128)) == 0
