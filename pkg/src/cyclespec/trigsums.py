"""Twisted cosecant, secant, cotangent and tangent sums.

Every sum has a direct oracle (:func:`direct_sum`) and at least one
closed-form path built from Chebyshev data.  Shifts are exact rationals and
are never reduced: moving ``beta`` by 1 multiplies a twisted sum by
``exp(-2 pi i r / m)``, so the value depends on the shift itself.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import ceil, comb, log2

from .chebyshev import (
    Poly,
    cheb_t,
    cheb_u,
    series_divide,
    shifted_t_coeff,
    shifted_u_coeff,
    t_coeff_or_zero,
    u_coeff_or_zero,
    valuation,
)
from .numeric import (
    CrossCheckError,
    DomainError,
    as_rational,
    context,
    cos_2pi,
    cospi,
    default_tolerance,
    exp_2pi_i,
    is_integer,
    reduce_mod,
    resolve_precision,
    sinpi,
)

COSECANT = "cosecant"
SECANT = "secant"
COSECANT_DOUBLE = "cosecant_double"
SECANT_DOUBLE = "secant_double"
COSECANT_NOSHIFT = "cosecant_noshift"
SECANT_NOSHIFT = "secant_noshift"
COSECANT_DOUBLE_NOSHIFT = "cosecant_double_noshift"
COTANGENT = "cotangent"
TANGENT = "tangent"
ALTERNATING_COSECANT = "alternating_cosecant"

KINDS = (
    COSECANT,
    SECANT,
    COSECANT_DOUBLE,
    SECANT_DOUBLE,
    COSECANT_NOSHIFT,
    SECANT_NOSHIFT,
    COSECANT_DOUBLE_NOSHIFT,
    COTANGENT,
    TANGENT,
    ALTERNATING_COSECANT,
)
DOUBLE_KINDS = (COSECANT_DOUBLE, SECANT_DOUBLE, COSECANT_DOUBLE_NOSHIFT)
NOSHIFT_KINDS = (COSECANT_NOSHIFT, SECANT_NOSHIFT, COSECANT_DOUBLE_NOSHIFT)

DIRECT = "direct"
GENERATING_FUNCTION = "generating_function"
RECURRENCE = "recurrence"
METHODS = (DIRECT, GENERATING_FUNCTION, RECURRENCE)

# summands with |sin| or |cos| below this trigger precision escalation
_ESCALATION_EXPONENT = -16
_MAX_ESCALATION = 4

HALF = Fraction(1, 2)
QUARTER = Fraction(1, 4)


# -- specs --------------------------------------------------------------------


@dataclass(frozen=True)
class SumSpec:
    """Parameters of one sum.

    ``power`` is ``n``: single-argument kinds use the exponent ``2n``, double
    argument kinds use ``n`` itself.  ``shift`` is ``beta`` for cosecant-type
    kinds and ``alpha`` for secant-type kinds.
    """

    kind: str
    m: int
    r: int = 0
    shift: Fraction = Fraction(0)
    power: int = 1

    def __post_init__(self):
        if self.kind not in KINDS:
            raise DomainError(f"unknown sum kind {self.kind!r}; use one of {', '.join(KINDS)}")
        if int(self.m) != self.m or self.m < 2:
            raise DomainError(f"m must be an integer >= 2, got {self.m}")
        if int(self.power) != self.power or self.power < 1:
            raise DomainError(f"power must be a positive integer, got {self.power}")
        object.__setattr__(self, "m", int(self.m))
        object.__setattr__(self, "r", int(self.r))
        object.__setattr__(self, "power", int(self.power))
        object.__setattr__(self, "shift", as_rational(self.shift))
        _check_domain(self)

    @property
    def ell(self) -> int:
        return self.r % self.m

    @property
    def exponent(self) -> int:
        """Exponent actually applied to each trigonometric factor."""
        return self.power if self.kind in DOUBLE_KINDS else 2 * self.power


def _check_domain(spec: SumSpec):
    m, x, kind = spec.m, spec.shift, spec.kind
    if kind in NOSHIFT_KINDS and x != 0:
        raise DomainError(f"{kind} has no shift; got shift={x}")
    if kind == COSECANT and is_integer(x):
        raise DomainError(f"cosecant sum requires beta not an integer, got {x}")
    if kind == SECANT and is_integer(x - Fraction(m, 2)):
        raise DomainError(f"secant sum requires alpha - m/2 not an integer, got alpha={x}, m={m}")
    if kind == SECANT_DOUBLE:
        if m % 4 == 0 and is_integer(x):
            raise DomainError(f"double-argument secant with 4 | m requires alpha not an integer, got {x}")
        if m % 4 == 2 and is_integer(x - HALF):
            raise DomainError(f"double-argument secant with m = 2 mod 4 requires alpha not in Z + 1/2, got {x}")
        if m % 2 == 1 and is_integer(2 * x - HALF):
            raise DomainError(f"double-argument secant with m odd requires 2*alpha not in Z + 1/2, got {x}")
    if kind == COSECANT_DOUBLE:
        if m % 2 == 1 and is_integer(2 * x):
            raise DomainError(f"double-argument cosecant with m odd requires 2*beta not an integer, got {x}")
        if m % 2 == 0 and is_integer(x):
            raise DomainError(f"double-argument cosecant with m even requires beta not an integer, got {x}")
    if kind in (COTANGENT, ALTERNATING_COSECANT) and is_integer(x) and x != 0:
        raise DomainError(f"{kind} requires beta = 0 or beta not an integer, got {x}")
    if kind == TANGENT and x != 0 and is_integer(x - Fraction(m, 2)):
        raise DomainError(f"tangent sum requires alpha = 0 or alpha - m/2 not an integer, got alpha={x}, m={m}")
    if kind == ALTERNATING_COSECANT and m % 2:
        raise DomainError(f"alternating cosecant sum requires m even, got m={m}")


@dataclass(frozen=True)
class SumResult:
    spec: SumSpec
    value: object
    exact: Fraction | None
    method: str
    working_bits: int = 0
    notes: tuple = field(default=())


# -- direct oracle ------------------------------------------------------------


def _terms(spec: SumSpec):
    """Yield ``(j, numerator_q, denominator_q, weight_q)`` per included index.

    A summand is ``(trig(num)/trig(den))**e * w`` where trig is sin or cos
    depending on kind; ``num`` is None when the numerator is 1.
    """
    m, x, kind = spec.m, spec.shift, spec.kind
    if kind == COSECANT_NOSHIFT:
        idx = range(1, m)
    elif kind == SECANT_NOSHIFT:
        idx = [j for j in range(m) if not (m % 2 == 0 and j == m // 2)]
    elif kind == COSECANT_DOUBLE_NOSHIFT:
        idx = [j for j in range(1, m) if not (m % 2 == 0 and j == m // 2)]
    elif kind == COTANGENT and x == 0:
        idx = range(1, m)
    elif kind == TANGENT and x == 0 and m % 2 == 0:
        idx = [j for j in range(m) if j != m // 2]
    elif kind == ALTERNATING_COSECANT and x == 0:
        idx = range(1, m)
    else:
        idx = range(m)
    scale = 2 if kind in DOUBLE_KINDS else 1
    for j in idx:
        yield j, Fraction(scale) * (j + x) / m


def _trig_parts(kind):
    """(numerator function or None, denominator function) for each kind."""
    if kind in (COSECANT, COSECANT_NOSHIFT, COSECANT_DOUBLE, COSECANT_DOUBLE_NOSHIFT, ALTERNATING_COSECANT):
        return None, sinpi
    if kind in (SECANT, SECANT_NOSHIFT, SECANT_DOUBLE):
        return None, cospi
    if kind == COTANGENT:
        return cospi, sinpi
    return sinpi, cospi


def _direct_at(spec: SumSpec, ctx):
    num_f, den_f = _trig_parts(spec.kind)
    e = spec.exponent
    total = ctx.mpc(0)
    for j, q in _terms(spec):
        base = 1 / den_f(q, ctx)
        if num_f is not None:
            base *= num_f(q, ctx)
        if spec.kind == ALTERNATING_COSECANT:
            w = -1 if j % 2 else 1
        else:
            w = exp_2pi_i(Fraction(spec.r * j, spec.m), ctx)
        total += base**e * w
    if spec.kind == ALTERNATING_COSECANT:
        return total
    return total / spec.m


def _min_denominator(spec: SumSpec, ctx):
    _, den_f = _trig_parts(spec.kind)
    return min((abs(den_f(q, ctx)) for _, q in _terms(spec)), default=None)


def direct_sum(spec: SumSpec, precision_bits: int | None = None) -> SumResult:
    """Literal evaluation of the defining sum.

    Single-argument kinds and the double kinds are averaged over ``m``; the
    alternating kind is the plain (unaveraged) sum over ``(-1)**j``.  Small
    denominators raise the working precision by doubling, up to four times
    the request, so that the bits lost to ``|trig|**-e`` are covered.
    """
    p = resolve_precision(precision_bits)
    ctx = context(p)
    tol = default_tolerance(p)
    smallest = _min_denominator(spec, ctx)
    if smallest is None:
        # every index excluded, e.g. the unshifted double cosecant at m = 2
        return SumResult(spec, ctx.mpc(0), None, DIRECT, p, ("empty sum",))
    if smallest < ctx.mpf(tol.abs_eps.numerator) / tol.abs_eps.denominator:
        raise DomainError(f"near-singular summand: a denominator has magnitude {ctx.nstr(smallest, 5)}")
    q = p
    notes = ()
    if smallest < ctx.ldexp(ctx.one, _ESCALATION_EXPONENT):
        loss = ceil(spec.exponent * log2(1 / float(smallest)))
        while q < p + loss and q < _MAX_ESCALATION * p:
            q *= 2
        if q < p + loss:
            raise DomainError(
                f"near-singular summand: about {loss} bits lost, more than {_MAX_ESCALATION}x precision covers"
            )
        notes = (f"precision escalated to {q} bits",)
    value = ctx.mpc(_direct_at(spec, context(q)))
    return SumResult(spec, value, None, DIRECT, q, notes)


# -- phase helpers --------------------------------------------------------------


def exact_phase(q: Fraction) -> Fraction | None:
    """``exp(2 pi i q)`` as a rational when it is real, else None."""
    q = reduce_mod(as_rational(q), 1)
    if q == 0:
        return Fraction(1)
    if q == HALF:
        return Fraction(-1)
    return None


def _phase(q: Fraction, ctx):
    ph = exact_phase(q)
    return ph if ph is not None else exp_2pi_i(q, ctx)


def _cos2pi(q: Fraction, ctx):
    r = reduce_mod(q, 1)
    for frac, val in ((0, 1), (QUARTER, 0), (HALF, -1), (3 * QUARTER, 0)):
        if r == frac:
            return Fraction(val)
    return cos_2pi(q, ctx)


def _one_minus_cos2pi(q: Fraction, ctx):
    """``1 - cos 2 pi q`` as ``2 sin^2 pi q``, which keeps its digits near integer ``q``."""
    c = _cos2pi(q, ctx)
    if isinstance(c, Fraction):
        return 1 - c
    sn = sinpi(reduce_mod(q, 1), ctx)
    return 2 * sn * sn


def _is_exact(*xs) -> bool:
    return all(isinstance(x, (int, Fraction)) for x in xs)


def _phases(ctx, q):
    """``(e^{2 pi i q}, cos 2 pi q)``, lifted together unless both are exact."""
    e, c = _phase(q, ctx), _cos2pi(q, ctx)
    if _is_exact(e, c):
        return e, c
    return ctx.mpc(_lift(e, ctx)), _lift(c, ctx)


def _coerce(seq, ctx, *deciders):
    """Keep ``seq`` exact when every decider is exact, else lift it into ``ctx``."""
    if _is_exact(*deciders):
        return list(seq)
    return [_lift(x, ctx) for x in seq]


def _lift(x, ctx):
    if isinstance(x, (int, Fraction)):
        x = Fraction(x)
        return ctx.mpf(x.numerator) / x.denominator
    return x


def _realize(x, ctx):
    if isinstance(x, (int, Fraction)):
        x = Fraction(x)
        return ctx.mpc(ctx.mpf(x.numerator) / x.denominator)
    return ctx.mpc(x)


# -- single-argument recurrences ------------------------------------------------


def recurrence_shifted(m: int, r: int, beta, N: int, precision_bits: int | None = None) -> list:
    """``C_{m,r}(beta, n+1)`` for ``n < N`` from the Taylor data of ``T_m, U`` at 1.

    Solves ``sum_j a~(n-j) c(j) = b_{m-l-1}(n) + e^{2 pi i beta} b_{l-1}(n)``
    with ``a~(0) = 1 - cos 2 pi beta``.  Entries are Fractions when every
    phase involved is real-rational, CNum otherwise.
    """
    beta = as_rational(beta)
    if is_integer(beta):
        raise DomainError(f"shifted recurrence requires beta not an integer, got {beta}")
    ctx = context(resolve_precision(precision_bits))
    ell = r % m
    e_beta, cos_b = _phases(ctx, beta)
    den = _coerce([_one_minus_cos2pi(beta, ctx)] + [shifted_t_coeff(m, k) for k in range(1, min(N, m + 1))], ctx, e_beta, cos_b)
    rhs = _coerce(
        [shifted_u_coeff(m - ell - 1, n) + e_beta * shifted_u_coeff(ell - 1, n) for n in range(N)], ctx, e_beta, cos_b
    )
    c = series_divide(rhs, den, N)
    pref = _phase(-beta * ell / m, ctx)
    return [pref * (-1) ** n * 2 ** (n + 1) * c[n] for n in range(N)]


def recurrence_unshifted(m: int, r: int, N: int) -> list[Fraction]:
    """Exact ``c_{m,r}(n)`` for ``n < N``; ``C_{m,r}(n+1) = (-1)**n 2**(n+1) c(n)``.

    >>> recurrence_unshifted(5, 0, 1)
    [Fraction(4, 5)]
    """
    if m < 2:
        raise DomainError(f"m must be >= 2, got {m}")
    ell = r % m
    den = [shifted_t_coeff(m, k + 1) for k in range(min(N, m))]
    rhs = [
        shifted_u_coeff(m - ell - 1, n + 1) + shifted_u_coeff(ell - 1, n + 1) - shifted_t_coeff(m, n + 2) / m
        for n in range(N)
    ]
    return series_divide(rhs, den, N)


def unshifted_values(m: int, r: int, N: int) -> list[Fraction]:
    """``C_{m,r}(n+1)`` for ``n < N``, exact."""
    return [(-1) ** n * 2 ** (n + 1) * c for n, c in enumerate(recurrence_unshifted(m, r, N))]


def _u_taylor_in_ell(m: int, k: int, reverse: bool) -> Poly:
    # b_{N-1}(k) = N prod_{j<=k} (N^2 - j^2)/(2j+1) / k!, N = m - ell or ell
    lam = Poly.z()
    big_n = (m - lam) if reverse else lam
    out = big_n
    for j in range(1, k + 1):
        out = out * (big_n * big_n - j * j) * Fraction(1, 2 * j + 1)
    return out * Fraction(1, _factorial(k))


def _factorial(k: int) -> int:
    out = 1
    for i in range(2, k + 1):
        out *= i
    return out


def recurrence_unshifted_symbolic(m: int, N: int) -> list[Poly]:
    """``c_{m,r}(n)`` as exact polynomials in ``r`` (valid for ``0 <= r < m``)."""
    den = [Poly.constant(shifted_t_coeff(m, k + 1)) for k in range(min(N, m))]
    out = []
    for n in range(N):
        acc = _u_taylor_in_ell(m, n + 1, True) + _u_taylor_in_ell(m, n + 1, False)
        acc = acc - shifted_t_coeff(m, n + 2) / m
        for j in range(max(0, n - len(den) + 1), n):
            acc = acc - den[n - j] * out[j]
        out.append(acc * (1 / den[0].coeff(0)))
    return out


def _compose_one_minus_2s(p: Poly, n_terms: int) -> list[Fraction]:
    """Coefficients of ``p(1 - 2s)`` in ``s``."""
    shifted = p.shift(1)
    return [shifted.coeff(k) * (-2) ** k for k in range(n_terms)]


def coeffs_from_generating_function(m: int, r: int, beta, N: int, precision_bits: int | None = None) -> list:
    """``C_{m,r}(beta, n+1)`` for ``n < N`` as Taylor coefficients of the generating function.

    Uses ``2 e^{-2 pi i beta l/m} (U_{m-l-1} + e^{2 pi i beta} U_{l-1}) / (T_m - cos 2 pi beta)``
    at ``1 - 2s``, with the polynomials built by the three-term recurrence
    and re-expanded exactly.
    """
    beta = as_rational(beta)
    if is_integer(beta):
        raise DomainError(f"generating function at s = 0 requires beta not an integer, got {beta}")
    ctx = context(resolve_precision(precision_bits))
    ell = r % m
    e_beta, cos_b = _phases(ctx, beta)
    ua = _compose_one_minus_2s(cheb_u(m - ell - 1), N)
    ub = _compose_one_minus_2s(cheb_u(ell - 1), N)
    den = _compose_one_minus_2s(cheb_t(m), N)
    den = _coerce(den, ctx, e_beta, cos_b)
    den[0] = _lift(_one_minus_cos2pi(beta, ctx), ctx) if not _is_exact(cos_b) else den[0] - cos_b
    num = _coerce([ua[k] + e_beta * ub[k] for k in range(N)], ctx, e_beta, cos_b)
    series = series_divide(num, den, N)
    pref = 2 * _phase(-beta * ell / m, ctx)
    return [pref * c for c in series]


def _laurent(num: list, den: list, n_terms: int):
    """Split ``num/den`` into ``(polar, regular)``; polar[k] multiplies ``z**-(k+1)``."""
    v = valuation(den)
    if v == len(den):
        raise DomainError("Laurent denominator vanishes identically")
    q = series_divide(num, den[v:], n_terms + v)
    return list(reversed(q[:v])), q[v:]


def unshifted_from_generating_function(m: int, r: int, N: int) -> list[Fraction]:
    """``C_{m,r}(n+1)`` for ``n < N`` from ``2 (U_{m-l-1} + U_{l-1})/(T_m - 1) + 1/(m s)`` at ``1 - 2s``.

    The simple pole of the rational part must cancel ``1/(m s)`` exactly.
    """
    ell = r % m
    ua = _compose_one_minus_2s(cheb_u(m - ell - 1), N + 1)
    ub = _compose_one_minus_2s(cheb_u(ell - 1), N + 1)
    den = _compose_one_minus_2s(cheb_t(m), N + 2)
    den[0] -= 1
    num = [2 * (a + b) for a, b in zip(ua, ub)]
    polar, regular = _laurent(num, den, N)
    if polar != [Fraction(-1, m)]:
        raise CrossCheckError(f"pole of the unshifted generating function is {polar}, expected [-1/{m}]")
    return regular[:N]


# -- secant sums ----------------------------------------------------------------


def secant_coeffs(m: int, r: int, alpha, N: int, precision_bits: int | None = None, method: str = RECURRENCE) -> list:
    """``S_{m,r}(alpha, n+1)`` for ``n < N``.

    With ``alpha - m/2`` not an integer this is the cosecant sum at
    ``beta = alpha - m/2`` (the summands agree term by term).  For ``alpha``
    with ``alpha - m/2`` an integer only ``alpha = 0`` is meaningful, with
    the index ``j = m/2`` dropped for even ``m``; there the reindexing
    ``j -> j + m/2`` gives ``S_{m,r}(n) = (-1)**r C_{m,r}(n)``.
    """
    alpha = as_rational(alpha)
    beta = alpha - Fraction(m, 2)
    if not is_integer(beta):
        if method == GENERATING_FUNCTION:
            return coeffs_from_generating_function(m, r, beta, N, precision_bits)
        return recurrence_shifted(m, r, beta, N, precision_bits)
    if alpha != 0:
        raise DomainError(f"secant sum requires alpha - m/2 not an integer, got alpha={alpha}, m={m}")
    vals = unshifted_from_generating_function(m, r, N) if method == GENERATING_FUNCTION else unshifted_values(m, r, N)
    return [(-1) ** (r % 2) * v for v in vals]


# -- double-argument sums ---------------------------------------------------------


def _double_secant(m: int, r: int, alpha: Fraction, N: int, ctx, method: str) -> list:
    ell = r % m
    e_alpha, cos_a = _phases(ctx, alpha)
    if method == GENERATING_FUNCTION:
        t_m, ua, ub = cheb_t(m), cheb_u(m - ell - 1), cheb_u(ell - 1)
        den = [t_m.coeff(k) for k in range(max(N, 1))]
        num = [ua.coeff(k) + e_alpha * ub.coeff(k) for k in range(N)]
    else:
        den = [t_coeff_or_zero(m, k) for k in range(max(N, 1))]
        num = [u_coeff_or_zero(m - ell - 1, k) + e_alpha * u_coeff_or_zero(ell - 1, k) for k in range(N)]
    den = _coerce(den, ctx, e_alpha, cos_a)
    den[0] -= cos_a
    num = _coerce(num, ctx, e_alpha, cos_a)
    if den[0] == 0 or (not _is_exact(den[0]) and abs(den[0]) < ctx.ldexp(ctx.one, 48 - ctx.prec)):
        raise DomainError(f"degenerate double-argument recurrence: T_m(0) = cos 2 pi alpha for m={m}, alpha={alpha}")
    c = series_divide(num, den, N)
    pref = -_phase(-alpha * ell / m, ctx)
    return [pref * x for x in c]


def _double_cosecant_noshift(m: int, r: int, N: int, ctx, method: str) -> list:
    ell = r % m
    # h(z) = e^{-i pi l/2} (U_{m-l-1} + e^{i pi m/2} U_{l-1}) / (T_m - cos(m pi/2)), minus the excluded poles
    if method == GENERATING_FUNCTION:
        t_m, ua, ub = cheb_t(m), cheb_u(m - ell - 1), cheb_u(ell - 1)
        den = [t_m.coeff(k) for k in range(N + 3)]
        a = [ua.coeff(k) for k in range(N + 3)]
        b = [ub.coeff(k) for k in range(N + 3)]
    else:
        den = [t_coeff_or_zero(m, k) for k in range(N + 3)]
        a = [u_coeff_or_zero(m - ell - 1, k) for k in range(N + 3)]
        b = [u_coeff_or_zero(ell - 1, k) for k in range(N + 3)]
    den[0] -= t_coeff_or_zero(m, 0)
    polar_a, reg_a = _laurent(a, den, N)
    polar_b, reg_b = _laurent(b, den, N)
    outer = exp_2pi_i(Fraction(-ell, 4), ctx)
    inner = exp_2pi_i(Fraction(m, 4), ctx)
    polar = [outer * (pa + inner * pb) for pa, pb in zip(polar_a, polar_b)]
    rho = Fraction(1 + (0 if m % 2 else (-1) ** ell), m)
    expected = [rho] + [0] * (len(polar) - 1)
    tol = default_tolerance(ctx.prec)
    eps = ctx.mpf(tol.abs_eps.numerator) / tol.abs_eps.denominator
    for got, want in zip(polar, expected):
        if abs(got - _realize(want, ctx)) > eps:
            raise CrossCheckError(f"polar part {polar} of the double cosecant generating function, expected {expected}")
    # the regular part of (generating function - rho/z) carries (-1)^n C~(n+1)
    return [(-1) ** n * outer * (reg_a[n] + inner * reg_b[n]) for n in range(N)]


def double_arg_coeffs(kind: str, m: int, r: int, shift, N: int, precision_bits: int | None = None,
                      method: str = RECURRENCE) -> list:
    """Double-argument sums ``S~``/``C~`` at powers ``n = 1..N``.

    ``secant_double`` solves the recurrence built from the monomial
    coefficients of ``T_m`` and ``U``.  ``cosecant_double`` is the secant
    sum at ``alpha = beta - m/4``.  The unshifted cosecant sum removes the
    poles of the excluded indices by Laurent division.
    """
    ctx = context(resolve_precision(precision_bits))
    shift = as_rational(shift)
    SumSpec(kind, m, r, shift, 1)
    if kind == SECANT_DOUBLE:
        return _double_secant(m, r, shift, N, ctx, method)
    if kind == COSECANT_DOUBLE:
        return _double_secant(m, r, shift - Fraction(m, 4), N, ctx, method)
    if kind == COSECANT_DOUBLE_NOSHIFT:
        return _double_cosecant_noshift(m, r, N, ctx, method)
    raise DomainError(f"double_arg_coeffs does not handle kind {kind!r}")


# -- cotangent, tangent, alternating ---------------------------------------------


def _zeroth_average(spec: SumSpec) -> Fraction:
    """``(1/m) sum_j e^{2 pi i r j/m}`` over the indices the sum keeps."""
    m, ell = spec.m, spec.ell
    full = Fraction(1 if ell == 0 else 0)
    if spec.kind == COTANGENT and spec.shift == 0:
        return full - Fraction(1, m)
    if spec.kind == TANGENT and spec.shift == 0 and m % 2 == 0:
        return full - Fraction((-1) ** ell, m)
    return full


def cot_tan_sum(spec: SumSpec, precision_bits: int | None = None, method: str = RECURRENCE) -> SumResult:
    """Even powers of cotangent or tangent from ``cot^2 = csc^2 - 1``.

    ``sum_k binom(n, k) (-1)**(n-k) C_k`` where ``C_0`` is the average of
    the twist over the kept indices (1 only when ``r = 0 mod m`` and nothing
    is dropped).
    """
    if spec.kind not in (COTANGENT, TANGENT):
        raise DomainError(f"cot_tan_sum needs kind cotangent or tangent, got {spec.kind}")
    p = resolve_precision(precision_bits)
    ctx = context(p)
    n = spec.power
    if spec.kind == COTANGENT:
        if spec.shift == 0:
            vals = (unshifted_from_generating_function if method == GENERATING_FUNCTION else unshifted_values)(
                spec.m, spec.r, n
            )
        elif method == GENERATING_FUNCTION:
            vals = coeffs_from_generating_function(spec.m, spec.r, spec.shift, n, p)
        else:
            vals = recurrence_shifted(spec.m, spec.r, spec.shift, n, p)
    else:
        vals = secant_coeffs(spec.m, spec.r, spec.shift, n, p, method)
    terms = [_zeroth_average(spec)] + list(vals)
    total = sum(comb(n, k) * (-1) ** (n - k) * terms[k] for k in range(n + 1))
    return _result(spec, total, method, ctx)


def alternating_sum(m: int, beta, n: int, precision_bits: int | None = None, method: str = RECURRENCE) -> SumResult:
    """``sum_j (-1)**j csc^{2n}((j + beta) pi / m)``, starting at ``j = 1`` when ``beta = 0``.

    The sign ``(-1)**j`` is the twist ``r = m/2``, so this is ``m`` times the
    averaged twisted sum.
    """
    spec = SumSpec(ALTERNATING_COSECANT, m, m // 2, beta, n)
    return _evaluate_closed(spec, resolve_precision(precision_bits), method)


def _result(spec: SumSpec, total, method: str, ctx) -> SumResult:
    exact = Fraction(total) if _is_exact(total) else None
    return SumResult(spec, _realize(total, ctx), exact, method, ctx.prec)


def _evaluate_closed(spec: SumSpec, p: int, method: str) -> SumResult:
    ctx = context(p)
    m, r, x, n = spec.m, spec.r, spec.shift, spec.power
    kind = spec.kind
    if kind in (COTANGENT, TANGENT):
        return cot_tan_sum(spec, p, method)
    if kind in DOUBLE_KINDS:
        total = double_arg_coeffs(kind, m, r, x, n, p, method)[-1]
    elif kind == COSECANT:
        gen = coeffs_from_generating_function if method == GENERATING_FUNCTION else recurrence_shifted
        total = gen(m, r, x, n, p)[-1]
    elif kind == COSECANT_NOSHIFT:
        gen = unshifted_from_generating_function if method == GENERATING_FUNCTION else unshifted_values
        total = gen(m, r, n)[-1]
    elif kind in (SECANT, SECANT_NOSHIFT):
        total = secant_coeffs(m, r, x, n, p, method)[-1]
    elif kind == ALTERNATING_COSECANT:
        half = m // 2
        if x == 0:
            gen = unshifted_from_generating_function if method == GENERATING_FUNCTION else unshifted_values
            total = m * gen(m, half, n)[-1]
        else:
            gen = coeffs_from_generating_function if method == GENERATING_FUNCTION else recurrence_shifted
            total = m * gen(m, half, x, n, p)[-1]
    else:  # pragma: no cover - KINDS is closed
        raise DomainError(f"unknown kind {kind!r}")
    return _result(spec, total, method, ctx)


def evaluate_sum(spec: SumSpec, precision_bits: int | None = None, method: str = RECURRENCE) -> SumResult:
    """Evaluate ``spec`` by ``method`` (``direct``, ``recurrence`` or ``generating_function``)."""
    if method not in METHODS:
        raise DomainError(f"unknown method {method!r}; use one of {', '.join(METHODS)}")
    p = resolve_precision(precision_bits)
    if method == DIRECT:
        return direct_sum(spec, p)
    return _evaluate_closed(spec, p, method)


# -- classical generating functions ---------------------------------------------

CM_CSC = "csc"
CM_CSC_ALT = "csc_alt"
CM_SHIFTED = "shifted"
CM_VARIANTS = (CM_CSC, CM_CSC_ALT, CM_SHIFTED)


@dataclass(frozen=True)
class CoefficientCheck:
    n: int
    from_generating_function: object
    from_module: object
    delta: object


def _classical_gf(variant: str, m: int, beta: Fraction, ctx):
    cos_b = cos_2pi(beta, ctx) if variant == CM_SHIFTED else None

    def g(y):
        a = ctx.asin(y)
        pre = m * y / ctx.sqrt(1 - y * y)
        if variant == CM_CSC:
            return 1 - pre * ctx.cot(m * a)
        if variant == CM_CSC_ALT:
            return 1 - pre * ctx.csc(m * a)
        return pre * ctx.sin(2 * m * a) / (ctx.cos(2 * m * a) - cos_b)

    return g


def _radius(variant: str, m: int, beta: Fraction, ctx):
    if variant == CM_SHIFTED:
        b = reduce_mod(beta, 1)
        return min(abs(sinpi(b / m, ctx)), abs(sinpi((1 - b) / m, ctx)))
    return sinpi(Fraction(1, m), ctx)


def generating_function_coefficients(variant: str, m: int, N: int, beta=0, precision_bits: int | None = None,
                                     points: int = 256) -> list:
    """Coefficients of ``y**(2n)``, ``n = 1..N``, of a classical generating function.

    The coefficients are read off a trapezoidal Cauchy integral on the circle
    of half the convergence radius, computed with 64 guard bits.
    """
    p = resolve_precision(precision_bits)
    ctx = context(p + 64)
    beta = as_rational(beta)
    rad = _radius(variant, m, beta, ctx) / 2
    g = _classical_gf(variant, m, beta, ctx)
    samples = []
    for k in range(points):
        w = exp_2pi_i(Fraction(k, points), ctx)
        samples.append((w, g(rad * w)))
    out = []
    for n in range(1, N + 1):
        acc = ctx.mpc(0)
        for w, val in samples:
            acc += val * w ** (-2 * n)
        out.append(context(p).mpc(acc / points / rad ** (2 * n)))
    return out


def chu_marini_check(m: int, N: int, variant: str = CM_CSC, beta=0, precision_bits: int | None = None) -> list:
    """Compare classical generating-function coefficients with this module's sums.

    ``csc``: ``sum_{j=1}^{m-1} csc^{2n}(j pi/m)``; ``csc_alt``: the same with
    ``(-1)**j`` (``m`` even); ``shifted``: ``sum_{j=0}^{m-1} csc^{2n}((j+beta) pi/m)``.
    """
    if variant not in CM_VARIANTS:
        raise DomainError(f"unknown generating-function variant {variant!r}; use one of {CM_VARIANTS}")
    if variant == CM_CSC_ALT and m % 2:
        raise DomainError(f"alternating generating function requires m even, got m={m}")
    beta = as_rational(beta)
    if variant == CM_SHIFTED and is_integer(beta):
        raise DomainError(f"shifted generating function requires beta not an integer, got {beta}")
    p = resolve_precision(precision_bits)
    ctx = context(p)
    gf = generating_function_coefficients(variant, m, N, beta, p)
    if variant == CM_CSC:
        ours = [m * v for v in unshifted_values(m, 0, N)]
    elif variant == CM_CSC_ALT:
        ours = [m * v for v in unshifted_values(m, m // 2, N)]
    else:
        ours = [m * v for v in recurrence_shifted(m, 0, beta, N, p)]
    report = []
    for n in range(N):
        mine = _realize(ours[n], ctx)
        report.append(CoefficientCheck(n + 1, gf[n], mine, abs(gf[n] - mine)))
    return report
