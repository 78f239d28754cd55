from fractions import Fraction

import mpmath
import pytest
from hypothesis import assume, given
from hypothesis import strategies as st

from cyclespec.numeric import DomainError, approx_eq, context, rational_mpf
from cyclespec.trigsums import (
    ALTERNATING_COSECANT,
    CM_CSC,
    CM_CSC_ALT,
    CM_SHIFTED,
    COSECANT,
    COSECANT_DOUBLE,
    COSECANT_DOUBLE_NOSHIFT,
    COSECANT_NOSHIFT,
    COTANGENT,
    DIRECT,
    GENERATING_FUNCTION,
    KINDS,
    RECURRENCE,
    SECANT,
    SECANT_DOUBLE,
    SECANT_NOSHIFT,
    TANGENT,
    SumSpec,
    alternating_sum,
    chu_marini_check,
    direct_sum,
    double_arg_coeffs,
    evaluate_sum,
    recurrence_unshifted,
    recurrence_unshifted_symbolic,
    unshifted_from_generating_function,
    unshifted_values,
)

mp = mpmath


def oracle(kind, m, r, x, n, prec=320):
    """The defining sum, written out independently with mpmath floats."""
    with mp.workprec(prec):
        x = mp.mpf(x.numerator) / x.denominator
        pi = mp.pi
        tw = lambda j: mp.expjpi(2 * mp.mpf(r * j) / m)
        half = m // 2 if m % 2 == 0 else None
        if kind == COSECANT:
            terms = [mp.csc(pi * (j + x) / m) ** (2 * n) * tw(j) for j in range(m)]
        elif kind == SECANT:
            terms = [mp.sec(pi * (j + x) / m) ** (2 * n) * tw(j) for j in range(m)]
        elif kind == COSECANT_DOUBLE:
            terms = [mp.csc(2 * pi * (j + x) / m) ** n * tw(j) for j in range(m)]
        elif kind == SECANT_DOUBLE:
            terms = [mp.sec(2 * pi * (j + x) / m) ** n * tw(j) for j in range(m)]
        elif kind == COSECANT_NOSHIFT:
            terms = [mp.csc(pi * j / m) ** (2 * n) * tw(j) for j in range(1, m)]
        elif kind == SECANT_NOSHIFT:
            terms = [mp.sec(pi * j / m) ** (2 * n) * tw(j) for j in range(m) if j != half]
        elif kind == COSECANT_DOUBLE_NOSHIFT:
            terms = [mp.csc(2 * pi * j / m) ** n * tw(j) for j in range(1, m) if j != half]
        elif kind == COTANGENT:
            start = 1 if x == 0 else 0
            terms = [mp.cot(pi * (j + x) / m) ** (2 * n) * tw(j) for j in range(start, m)]
        elif kind == TANGENT:
            skip = half if x == 0 else None
            terms = [mp.tan(pi * (j + x) / m) ** (2 * n) * tw(j) for j in range(m) if j != skip]
        elif kind == ALTERNATING_COSECANT:
            start = 1 if x == 0 else 0
            return mp.fsum((-1) ** j * mp.csc(pi * (j + x) / m) ** (2 * n) for j in range(start, m))
        return mp.fsum(terms) / m


def _c(ctx, x):
    return ctx.mpc(rational_mpf(ctx, x)) if isinstance(x, (int, Fraction)) else ctx.mpc(x)


def close(value, ref, bits=100):
    ctx = context(128)
    value, ref = _c(ctx, value), _c(ctx, ref)
    return abs(value - ref) <= ctx.ldexp(ctx.one, -bits) * (1 + abs(ref))


# --- frozen values: each computed from `oracle` and the exact recurrence, then pinned


def test_frozen_unshifted_c():
    assert recurrence_unshifted(5, 1, 4) == [0, Fraction(-4, 25), Fraction(8, 25), Fraction(-64, 125)]
    # C(n) = (-1)^(n-1) 2^n c(n-1)
    assert unshifted_values(5, 1, 4)[:3] == [0, Fraction(16, 25), Fraction(64, 25)]
    for n, v in enumerate(unshifted_values(5, 1, 3), start=1):
        assert close(v, oracle(COSECANT_NOSHIFT, 5, 1, Fraction(0), n))


def test_frozen_double_secant():
    assert double_arg_coeffs(SECANT_DOUBLE, 7, 2, 0, 3) == [1, -5, 23]
    for n, v in enumerate([1, -5, 23], start=1):
        assert close(v, oracle(SECANT_DOUBLE, 7, 2, Fraction(0), n))


def test_well_known_evaluation():
    res = evaluate_sum(SumSpec(COSECANT, 5, 0, Fraction(1, 2), 1))
    assert res.exact == 5
    assert close(direct_sum(SumSpec(COSECANT, 5, 0, Fraction(1, 2), 1)).value, 5)


def test_secant_even_m_is_signed_cosecant():
    # reindexing j -> j + m/2 turns sec into csc and multiplies the twist by (-1)^r
    s = evaluate_sum(SumSpec(SECANT_NOSHIFT, 6, 1, 0, 2)).value
    c = evaluate_sum(SumSpec(COSECANT_NOSHIFT, 6, 1, 0, 2)).value
    assert approx_eq(s, -c)
    assert close(s, oracle(SECANT_NOSHIFT, 6, 1, Fraction(0), 2))


def test_alternating_small_case():
    # -csc^2(pi/4) + csc^2(pi/2) - csc^2(3pi/4) = -2 + 1 - 2
    assert alternating_sum(4, 0, 1).exact == -3
    assert close(direct_sum(SumSpec(ALTERNATING_COSECANT, 4, 2, 0, 1)).value, -3)


def test_cotangent_zeroth_term_uses_kept_indices():
    for m, r in [(5, 0), (5, 2), (6, 3)]:
        spec = SumSpec(COTANGENT, m, r, 0, 1)
        assert close(evaluate_sum(spec).value, oracle(COTANGENT, m, r, Fraction(0), 1))
    spec = SumSpec(TANGENT, 6, 1, 0, 2)
    assert close(evaluate_sum(spec).value, oracle(TANGENT, 6, 1, Fraction(0), 2))


def test_empty_double_sum():
    res = direct_sum(SumSpec(COSECANT_DOUBLE_NOSHIFT, 2, 0, 0, 1))
    assert res.value == 0 and "empty sum" in res.notes


def test_precision_escalation_near_singular_shift():
    spec = SumSpec(COSECANT, 3, 0, Fraction(1, 10**6), 2)
    res = direct_sum(spec)
    assert res.working_bits > 128 and res.notes
    for method in (RECURRENCE, GENERATING_FUNCTION):
        assert close(res.value, evaluate_sum(spec, method=method).value)


@pytest.mark.parametrize(
    "kind, m, shift",
    [
        (COSECANT, 4, 1),
        (SECANT, 4, 0),
        (SECANT_DOUBLE, 8, 2),
        (SECANT_DOUBLE, 6, Fraction(1, 2)),
        (COSECANT_DOUBLE, 5, Fraction(1, 2)),
        (COSECANT_NOSHIFT, 4, Fraction(1, 3)),
        (ALTERNATING_COSECANT, 5, Fraction(1, 3)),
        (COTANGENT, 4, 2),
    ],
)
def test_domain_errors(kind, m, shift):
    with pytest.raises(DomainError):
        SumSpec(kind, m, 0, shift, 1)


def test_bad_spec_fields():
    with pytest.raises(DomainError):
        SumSpec("cosine", 4)
    with pytest.raises(DomainError):
        SumSpec(COSECANT, 1, 0, Fraction(1, 2))
    with pytest.raises(DomainError):
        SumSpec(COSECANT, 4, 0, Fraction(1, 2), 0)
    with pytest.raises(DomainError):
        evaluate_sum(SumSpec(COSECANT, 4, 0, Fraction(1, 2)), method="guess")


def test_symbolic_recurrence_in_r():
    polys = recurrence_unshifted_symbolic(7, 3)
    for r in range(7):
        assert [p(Fraction(r)) for p in polys] == recurrence_unshifted(7, r, 3)


def test_generating_function_route_for_unshifted():
    for m in range(2, 9):
        for r in range(m):
            assert unshifted_from_generating_function(m, r, 4) == unshifted_values(m, r, 4)


@pytest.mark.parametrize("variant, m, beta", [(CM_CSC, 5, 0), (CM_CSC_ALT, 6, 0), (CM_SHIFTED, 4, Fraction(1, 3))])
def test_classical_generating_functions(variant, m, beta):
    ctx = context(128)
    for row in chu_marini_check(m, 4, variant, beta):
        assert row.delta < ctx.ldexp(ctx.one, -60)


def test_classical_generating_function_domain():
    with pytest.raises(DomainError):
        chu_marini_check(5, 2, CM_CSC_ALT)
    with pytest.raises(DomainError):
        chu_marini_check(5, 2, CM_SHIFTED, 1)


# --- properties

shifts = st.fractions(min_value=-2, max_value=3, max_denominator=12)


@st.composite
def valid_specs(draw):
    kind = draw(st.sampled_from(KINDS))
    m = draw(st.integers(min_value=2, max_value=10))
    r = draw(st.integers(min_value=-m, max_value=2 * m))
    x = Fraction(0) if kind in (COSECANT_NOSHIFT, SECANT_NOSHIFT, COSECANT_DOUBLE_NOSHIFT) else draw(shifts)
    n = draw(st.integers(min_value=1, max_value=4))
    try:
        return SumSpec(kind, m, r, x, n)
    except DomainError:
        assume(False)


@given(valid_specs())
def test_closed_forms_match_oracle(spec):
    ref = oracle(spec.kind, spec.m, spec.r, spec.shift, spec.power)
    for method in (RECURRENCE, GENERATING_FUNCTION, DIRECT):
        assert close(evaluate_sum(spec, method=method).value, ref)


@given(valid_specs())
def test_exact_results_are_consistent(spec):
    res = evaluate_sum(spec)
    if res.exact is not None:
        assert close(res.exact, res.value, bits=120)


@given(st.integers(min_value=2, max_value=10), st.integers(min_value=-10, max_value=10), shifts, st.integers(1, 3))
def test_shift_by_one_multiplies_by_root_of_unity(m, r, beta, n):
    assume(beta.denominator != 1)
    ctx = context(128)
    a = evaluate_sum(SumSpec(COSECANT, m, r, beta + 1, n)).value
    b = evaluate_sum(SumSpec(COSECANT, m, r, beta, n)).value
    assert approx_eq(a, ctx.expjpi(-2 * ctx.mpf(r) / m) * b)


@given(st.integers(min_value=2, max_value=10), st.integers(min_value=0, max_value=10), shifts, st.integers(1, 3))
def test_twist_reflection_is_conjugation(m, r, beta, n):
    assume(beta.denominator != 1)
    a = evaluate_sum(SumSpec(COSECANT, m, r, beta, n)).value
    b = evaluate_sum(SumSpec(COSECANT, m, -r, beta, n)).value
    assert approx_eq(a, b.conjugate())


@given(st.integers(min_value=2, max_value=10), st.integers(min_value=0, max_value=10), shifts, st.integers(1, 3))
def test_secant_is_cosecant_shifted_by_half_m(m, r, alpha, n):
    assume((alpha - Fraction(m, 2)).denominator != 1)
    a = evaluate_sum(SumSpec(SECANT, m, r, alpha, n)).value
    b = evaluate_sum(SumSpec(COSECANT, m, r, alpha + Fraction(m, 2), n)).value
    assert approx_eq(a, b)


@given(st.integers(min_value=2, max_value=7), st.integers(min_value=0, max_value=13), shifts, st.integers(1, 3))
def test_double_argument_on_even_cycle_halves_the_twist(k, r, beta, n):
    assume((2 * beta).denominator != 1 and beta.denominator != 1)
    doubled = evaluate_sum(SumSpec(COSECANT_DOUBLE, 2 * k, r, beta, 2 * n)).value
    if r % 2:
        assert approx_eq(doubled, 0)
    else:
        assert approx_eq(doubled, evaluate_sum(SumSpec(COSECANT, k, r // 2, beta, n)).value)


@given(st.integers(min_value=2, max_value=20), st.integers(min_value=0, max_value=19))
def test_unshifted_sums_are_rational_and_real(m, r):
    vals = unshifted_values(m, r % m, 3)
    assert all(isinstance(v, Fraction) for v in vals)
    # sum over r of C_{m,r}(n) keeps only j = 0, which the unshifted sum drops
    if r == 0:
        assert sum(unshifted_values(m, s, 3)[2] for s in range(m)) == 0
