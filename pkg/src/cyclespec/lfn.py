"""Special values of the spectral L-functions of the cycle graph.

``L(n, chi) = sum_{j=1}^{m-1} chi(j) csc^{2n}(j pi/m)`` for even ``chi``,
``L~(n, chi)`` (an extra ``cot(j pi/m)`` factor) for odd ``chi``, and
``L^(n, chi) = sum_j chi(j) sec^n(2 j pi/m)`` for ``4`` not dividing ``m``.
Every route returns the L-value itself (never its conjugate).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .characters import DirichletCharacter, gauss_sum
from .chebyshev import Poly, cheb_t, cheb_u, series_divide, valuation
from .numeric import (
    CrossCheckError,
    DomainError,
    context,
    cospi,
    default_tolerance,
    rational_mpf,
    resolve_precision,
    sinpi,
)
from .trigsums import recurrence_shifted, recurrence_unshifted, recurrence_unshifted_symbolic

DIRECT = "direct"
GAUSS_RECURRENCE = "gauss_recurrence"
POLYNOMIAL = "polynomial"
DERIVATIVE = "derivative"
FINITE_DIFFERENCE = "finite_difference"
GENERATING_FUNCTION = "generating_function"


@dataclass(frozen=True)
class LValue:
    modulus: int
    character_index: int
    n: int
    value: object
    route: str
    error_budget: object
    flags: tuple = field(default=())


def _check_n(n):
    if int(n) != n or n < 1:
        raise DomainError(f"n must be a positive integer, got {n}")


def _budget(ctx, scale):
    tol = default_tolerance(ctx.prec)
    eps = ctx.mpf(tol.abs_eps.numerator) / tol.abs_eps.denominator
    return eps * (1 + scale)


def _require_primitive(chi: DirichletCharacter):
    if not chi.is_primitive:
        raise DomainError(
            f"this route needs a primitive character; index {chi.index} mod {chi.modulus} has conductor {chi.conductor}"
        )


def _conj_char(chi, r, p):
    return chi.value(r, p).conjugate()


# -- L(n, chi) -----------------------------------------------------------------


def l_direct(m: int, chi: DirichletCharacter, n: int, precision_bits: int | None = None) -> LValue:
    """Literal sum.  For odd ``chi`` the terms cancel in pairs and exact 0 is returned."""
    _check_n(n)
    p = resolve_precision(precision_bits)
    ctx = context(p)
    if chi.modulus != m:
        raise DomainError(f"character modulus {chi.modulus} differs from m={m}")
    if not chi.is_even:
        return LValue(m, chi.index, n, ctx.mpc(0), DIRECT, ctx.zero, ("odd character: identically zero",))
    total, scale = ctx.mpc(0), ctx.zero
    for j in range(1, m):
        term = sinpi(Fraction(j, m), ctx) ** (-2 * n)
        total += chi.value(j, p) * term
        scale += term
    return LValue(m, chi.index, n, total, DIRECT, _budget(ctx, scale))


def l_via_gauss(m: int, chi: DirichletCharacter, n: int, precision_bits: int | None = None) -> LValue:
    """``(-1)**(n+1) 2**n (m / conj(tau)) sum_r conj(chi(r)) c_{m,r}(n-1)`` with exact ``c``."""
    _check_n(n)
    _require_primitive(chi)
    if not chi.is_even:
        raise DomainError("the Gauss-sum evaluation applies to even characters")
    p = resolve_precision(precision_bits)
    ctx = context(p)
    acc, scale = ctx.mpc(0), Fraction(0)
    for r in range(m):
        c = recurrence_unshifted(m, r, n)[n - 1]
        acc += _conj_char(chi, r, p) * rational_mpf(ctx, c)
        scale += abs(c)
    tau_bar = gauss_sum(chi, p).conjugate()
    value = (-1) ** (n + 1) * 2**n * m * acc / tau_bar
    return LValue(m, chi.index, n, value, GAUSS_RECURRENCE, _budget(ctx, 2**n * m * rational_mpf(ctx, scale)))


def p2n_polynomial(m: int, n: int) -> Poly:
    """``P_{2n}(r) = (-1)**(n+1) 2**n m c_{m,r}(n-1)`` as an exact polynomial in ``r``.

    ``L(n, chi) = sum_r conj(chi(r)) P_{2n}(r) / conj(tau(chi))`` for even
    primitive ``chi``.  The degree must be exactly ``2n``.
    """
    _check_n(n)
    c = recurrence_unshifted_symbolic(m, n)[n - 1]
    poly = c * ((-1) ** (n + 1) * 2**n * m)
    if poly.degree != 2 * n:
        raise CrossCheckError(f"P_{2 * n} has degree {poly.degree}, expected {2 * n}")
    return poly


def closed_form_poly(m: int, n: int) -> Poly:
    """Short polynomials for ``n = 1, 2``: ``2 r (r - m)`` and ``-(2/3) r (r - m)(r^2 - m r - 2)``."""
    r = Poly.z()
    if n == 1:
        return 2 * (r - m) * r
    if n == 2:
        return Fraction(-2, 3) * r * (r - m) * (r * r - m * r - 2)
    raise DomainError(f"short closed forms exist for n = 1, 2 only, got n={n}")


def printed_l2_poly(m: int) -> Poly:
    """``-(2/3)(r - 2m)(r - m) r (r + m)``, a widely quoted form that is off by ``(2/3)(m^2 - 1) L(1)``."""
    r = Poly.z()
    return Fraction(-2, 3) * (r - 2 * m) * (r - m) * r * (r + m)


def polynomial_l_value(m: int, chi: DirichletCharacter, poly: Poly, precision_bits: int | None = None):
    """``sum_r conj(chi(r)) poly(r) / conj(tau(chi))``."""
    ctx = context(resolve_precision(precision_bits))
    acc = ctx.mpc(0)
    for r in range(m):
        acc += _conj_char(chi, r, ctx.prec) * rational_mpf(ctx, poly(Fraction(r)))
    return acc / gauss_sum(chi, ctx.prec).conjugate()


def l_polynomial(m: int, chi: DirichletCharacter, n: int, precision_bits: int | None = None,
                 allow_symbolic: bool = True) -> LValue:
    """``sum_r conj(chi(r)) P(r) / conj(tau(chi))`` for a polynomial ``P``.

    ``n = 1, 2`` use the short closed forms (they differ from ``P_{2n}`` by
    constants, which vanish against a non-principal character).  Larger
    ``n`` use :func:`p2n_polynomial` unless ``allow_symbolic`` is false.
    """
    _check_n(n)
    _require_primitive(chi)
    if not chi.is_even:
        raise DomainError("the polynomial evaluation applies to even characters")
    if n in (1, 2):
        poly, flags = closed_form_poly(m, n), ("closed form",)
    elif allow_symbolic:
        poly, flags = p2n_polynomial(m, n), ("symbolic P_2n",)
    else:
        raise DomainError(f"closed forms exist for n = 1, 2 only, got n={n}; enable the symbolic path")
    p = resolve_precision(precision_bits)
    ctx = context(p)
    value = polynomial_l_value(m, chi, poly, p)
    scale = sum(abs(poly(Fraction(r))) for r in range(m))
    return LValue(m, chi.index, n, value, POLYNOMIAL, _budget(ctx, rational_mpf(ctx, scale)), flags)


# -- L~(n, chi) ------------------------------------------------------------------


def l_tilde_direct(m: int, chi: DirichletCharacter, n: int, precision_bits: int | None = None) -> LValue:
    _check_n(n)
    p = resolve_precision(precision_bits)
    ctx = context(p)
    if chi.is_even:
        return LValue(m, chi.index, n, ctx.mpc(0), DIRECT, ctx.zero, ("even character: identically zero",))
    total, scale = ctx.mpc(0), ctx.zero
    for j in range(1, m):
        q = Fraction(j, m)
        s = sinpi(q, ctx)
        term = cospi(q, ctx) / s ** (2 * n + 1)
        total += chi.value(j, p) * term
        scale += abs(term)
    return LValue(m, chi.index, n, total, DIRECT, _budget(ctx, scale))


def beta_derivative_coeffs(m: int, r: int, N: int) -> list[Fraction]:
    """Exact ``d_r(k)``, ``k < N``, with ``d/dbeta F_{m,r}(t, beta)|_0 = 2 pi i sum_k d_r(k) t**k``.

    ``cos 2 pi beta`` is stationary at 0, so only the numerator moves:
    ``d/dbeta F = 2 pi i (U_{l-1} - (l/m)(U_{m-l-1} + U_{l-1})) / (T_m - 1)``
    at ``t + 1``.  The simple zero of ``T_m(t+1) - 1`` must cancel.
    """
    ell = r % m
    a = cheb_u(m - ell - 1).shift(1)
    b = cheb_u(ell - 1).shift(1)
    num = b - (a + b) * Fraction(ell, m)
    den = cheb_t(m).shift(1) - 1
    nums = [num.coeff(k) for k in range(N + 2)]
    dens = [den.coeff(k) for k in range(N + 2)]
    v = valuation(dens)
    if any(nums[k] for k in range(v)):
        raise CrossCheckError(f"beta-derivative of F_{{{m},{r}}} keeps a pole at t = 0")
    return series_divide(nums[v:], dens[v:], N)


def l_tilde(m: int, chi: DirichletCharacter, n: int, precision_bits: int | None = None,
            finite_difference: bool = False) -> LValue:
    """``L~(n, chi)`` from the beta-derivative of the character generating function.

    With ``G(t, beta) = (m/tau) sum_r chi(r) F_{m,r}(t, beta)``, whose ``t**k``
    coefficient is ``(-1)**k 2**-(k+1) conj(L(k+1, chi, beta))``, and
    ``d/dbeta L(s, chi, beta)|_0 = -(2 s pi/m) L~(s, chi)``, the ``pi`` cancels:
    ``conj(L~(n)) = (-1)**n 2**n i m**2 / (n tau) sum_r chi(r) d_r(n-1)``.
    The j = 0 term never enters because ``chi(0) = 0``.

    ``finite_difference`` replaces the exact derivative by a central
    difference of the shifted recurrence, at doubled precision.
    """
    _check_n(n)
    _require_primitive(chi)
    if chi.is_even:
        raise DomainError("the beta-derivative evaluation applies to odd characters")
    p = resolve_precision(precision_bits)
    ctx = context(p)
    if finite_difference:
        return _l_tilde_fd(m, chi, n, p)
    acc, scale = ctx.mpc(0), Fraction(0)
    for r in range(m):
        d = beta_derivative_coeffs(m, r, n)[n - 1]
        acc += chi.value(r, p) * rational_mpf(ctx, d)
        scale += abs(d)
    conj_value = (-1) ** n * 2**n * ctx.mpc(0, 1) * m * m * acc / (n * gauss_sum(chi, p))
    return LValue(m, chi.index, n, conj_value.conjugate(), DERIVATIVE,
                  _budget(ctx, 2**n * m * m * rational_mpf(ctx, scale)))


def _l_tilde_fd(m: int, chi: DirichletCharacter, n: int, p: int) -> LValue:
    # the j = 0 terms blow up like beta**-2n but cancel across r; doubled precision absorbs that
    q = 2 * p
    ctx = context(q)
    h = Fraction(1, 2 ** (q // 8))

    def weighted(beta):
        return sum(
            (chi.value(r, q) * recurrence_shifted(m, r, beta, n, q)[n - 1] for r in range(m)),
            ctx.mpc(0),
        )

    deriv = (weighted(h) - weighted(-h)) / (2 * rational_mpf(ctx, h))
    # sum_r chi(r) C_{m,r}(beta, n) = (tau/m) conj(L(n, chi, beta))
    d_conj_l = m * deriv / gauss_sum(chi, q)
    value = (-m * d_conj_l / (2 * n * ctx.pi)).conjugate()
    pctx = context(p)
    budget = pctx.mpf(2) ** (-(q // 4) + 8) * (1 + abs(value))
    return LValue(m, chi.index, n, pctx.mpc(value), FINITE_DIFFERENCE, budget, ("finite difference",))


# -- L^(n, chi) ------------------------------------------------------------------


def _check_hat_modulus(m):
    if m % 4 == 0:
        raise DomainError(f"the double-argument secant L-value requires m not divisible by 4, got m={m}")


def l_hat_direct(m: int, chi: DirichletCharacter, n: int, precision_bits: int | None = None) -> LValue:
    _check_n(n)
    _check_hat_modulus(m)
    p = resolve_precision(precision_bits)
    ctx = context(p)
    total, scale = ctx.mpc(0), ctx.zero
    for j in range(1, m):
        term = cospi(Fraction(2 * j, m), ctx) ** (-n)
        total += chi.value(j, p) * term
        scale += abs(term)
    return LValue(m, chi.index, n, total, DIRECT, _budget(ctx, scale))


def l_hat(m: int, chi: DirichletCharacter, n: int, precision_bits: int | None = None) -> LValue:
    """``L^(n, chi)`` from ``-(m / tau(conj chi)) sum_r conj(chi(r)) (U_{m-r-1} + U_{r-1}) / (T_m - 1)``.

    ``L^(n)`` is the coefficient of ``s**(n-1)`` (the expansion of
    ``1/(z - cos x)`` in ``z`` starts at ``sec x``).
    """
    _check_n(n)
    _check_hat_modulus(m)
    _require_primitive(chi)
    p = resolve_precision(precision_bits)
    ctx = context(p)
    t = cheb_t(m) - 1
    den = [t.coeff(k) for k in range(n)]
    acc, scale = ctx.mpc(0), Fraction(0)
    for r in range(1, m):
        num = cheb_u(m - r - 1) + cheb_u(r - 1)
        c = series_divide([num.coeff(k) for k in range(n)], den, n)[n - 1]
        acc += _conj_char(chi, r, p) * rational_mpf(ctx, c)
        scale += abs(c)
    value = -m * acc / gauss_sum(chi.conjugate(), p)
    return LValue(m, chi.index, n, value, GENERATING_FUNCTION, _budget(ctx, m * rational_mpf(ctx, scale)))
