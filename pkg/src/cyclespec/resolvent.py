"""Twisted resolvent kernel ``G(x, y; s)`` of the cycle graph.

Three independent evaluations are offered:

* ``resolvent_spectral``: the partial-fraction sum over the ``m`` eigenmodes;
* ``resolvent_closed``: the Chebyshev rational form, or the equivalent
  hyperbolic form for ``Re(s) > 0``;
* ``resolvent_from_laplace``: numerical Laplace transform of the heat kernel.

Phase convention.  With ``r = x - y`` and ``ell = r mod m`` the true kernel is
``G = exp(2 pi i beta r / m) * F_{m,r}(s, beta)`` where ``F`` is the Chebyshev
form.  Every function takes ``normalization="kernel"`` (``G``) or
``normalization="cancelled"`` (``F``).  ``G`` is 1-periodic in ``beta``;
``F`` is not.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass
from fractions import Fraction

from .chebyshev import Poly, cheb_t, cheb_u, eval as poly_eval, eval_exact, series_divide
from .heat import CycleParams, spectral_sum, twisted_laplacian_apply
from .numeric import (
    DomainError,
    PoleError,
    as_rational,
    context,
    cos_2pi,
    default_tolerance,
    exp_2pi_i,
    resolve_precision,
    sinpi,
    to_complex,
    to_real,
)

KERNEL = "kernel"
CANCELLED = "cancelled"
NORMALIZATIONS = (KERNEL, CANCELLED)


@dataclass(frozen=True)
class ResolventClosedForm:
    """Ingredients of ``F_{m,r}(s, beta)`` in Chebyshev form, variable ``z = s + 1``."""

    m: int
    ell: int
    beta: Fraction
    numerator_parts: tuple[Poly, Poly]
    denominator: Poly
    cos_term: object
    prefactor: object

    def evaluate(self, s):
        ctx = self.cos_term.context
        z = to_complex(s, ctx) + 1
        u_hi, u_lo = self.numerator_parts
        num = poly_eval(u_hi, z) + exp_2pi_i(self.beta, ctx) * poly_eval(u_lo, z)
        den = poly_eval(self.denominator, z) - self.cos_term
        return num, den


def closed_form(m: int, beta, r: int, precision_bits: int | None = None) -> ResolventClosedForm:
    _check_m(m)
    ctx = context(resolve_precision(precision_bits))
    beta = as_rational(beta)
    ell = r % m
    return ResolventClosedForm(
        m=m,
        ell=ell,
        beta=beta,
        numerator_parts=(cheb_u(m - ell - 1), cheb_u(ell - 1)),
        denominator=cheb_t(m),
        cos_term=cos_2pi(beta, ctx),
        prefactor=exp_2pi_i(-beta * ell / m, ctx),
    )


def _check_m(m):
    if int(m) != m or m < 2:
        raise DomainError(f"m must be an integer >= 2, got {m}")


def _check_normalization(normalization):
    if normalization not in NORMALIZATIONS:
        raise DomainError(f"normalization must be one of {NORMALIZATIONS}, got {normalization!r}")


def _phase(beta: Fraction, r: int, m: int, normalization: str, ctx):
    """Factor converting the cancelled form into the requested normalization."""
    return exp_2pi_i(beta * r / m, ctx) if normalization == KERNEL else ctx.mpc(1)


def resolvent_spectral(m: int, beta, r: int, s, precision_bits: int | None = None, normalization: str = KERNEL):
    """``(1/m) sum_j exp(2 pi i (j + beta) r / m) / (s + 2 sin^2(pi (j + beta) / m))``.

    With ``normalization="cancelled"`` the twist phase ``exp(2 pi i beta r/m)``
    is dropped, giving ``F_{m,r}(s, beta)``.  Raises :class:`PoleError` naming
    the offending ``j`` when ``s`` is within tolerance of a pole.
    """
    _check_m(m)
    _check_normalization(normalization)
    ctx = context(resolve_precision(precision_bits))
    beta = as_rational(beta)
    s = to_complex(s, ctx)
    tol = default_tolerance(ctx.prec)
    eps = ctx.mpf(tol.abs_eps.numerator) / tol.abs_eps.denominator
    total = ctx.mpc(0)
    for j in range(m):
        sn = sinpi((j + beta) / m, ctx)
        den = s + 2 * sn * sn
        if abs(den) <= eps:
            raise PoleError(f"s={ctx.nstr(s, 10)} is on the pole of mode j={j} (m={m}, beta={beta})")
        total += exp_2pi_i(Fraction(j * r, m), ctx) / den
    return _phase(beta, r, m, normalization, ctx) * total / m


def resolvent_closed(
    m: int,
    beta,
    r: int,
    s,
    precision_bits: int | None = None,
    normalization: str = CANCELLED,
    form: str = "chebyshev",
):
    """Closed-form resolvent.

    ``form="chebyshev"`` evaluates
    ``exp(-2 pi i beta ell/m) (U_{m-ell-1}(s+1) + exp(2 pi i beta) U_{ell-1}(s+1)) / (T_m(s+1) - cos 2 pi beta)``
    and is valid wherever the denominator does not vanish.
    ``form="hyperbolic"`` uses ``sinh``/``cosh`` of ``w = arccosh(s+1)`` on
    principal branches and is only accepted for ``Re(s) > 0``.
    """
    _check_m(m)
    _check_normalization(normalization)
    ctx = context(resolve_precision(precision_bits))
    beta = as_rational(beta)
    s = to_complex(s, ctx)
    ell = r % m
    tol = default_tolerance(ctx.prec)
    eps = ctx.mpf(tol.abs_eps.numerator) / tol.abs_eps.denominator
    if form == "chebyshev":
        cf = closed_form(m, beta, r, ctx.prec)
        num, den = cf.evaluate(s)
        prefactor = cf.prefactor
    elif form == "hyperbolic":
        if not s.real > 0:
            raise DomainError("hyperbolic form of the resolvent needs Re(s) > 0")
        w = ctx.acosh(s + 1)
        root = ctx.sqrt(s * s + 2 * s)
        num = (ctx.sinh((m - ell) * w) + exp_2pi_i(beta, ctx) * ctx.sinh(ell * w)) / root
        den = ctx.cosh(m * w) - cos_2pi(beta, ctx)
        prefactor = exp_2pi_i(-beta * ell / m, ctx)
    else:
        raise DomainError(f"unknown closed form {form!r}; use 'chebyshev' or 'hyperbolic'")
    if abs(den) <= eps:
        raise PoleError(f"T_m(s+1) - cos(2 pi beta) vanishes at s={ctx.nstr(s, 10)} (m={m}, beta={beta})")
    return _phase(beta, r, m, normalization, ctx) * prefactor * num / den


@dataclass(frozen=True)
class RationalFn:
    """Exact rational function ``numerator(s) / denominator(s)``."""

    numerator: Poly
    denominator: Poly

    def evaluate_exact(self, s) -> Fraction:
        d = eval_exact(self.denominator, s)
        if d == 0:
            raise PoleError(f"denominator vanishes at s={s}")
        return eval_exact(self.numerator, s) / d

    def evaluate(self, s, precision_bits: int | None = None):
        ctx = s.context if hasattr(s, "context") else context(resolve_precision(precision_bits))
        s = to_complex(s, ctx)
        return poly_eval(self.numerator, s) / poly_eval(self.denominator, s)

    def taylor(self, n_terms: int) -> list[Fraction]:
        """Exact Taylor coefficients at ``s = 0``."""
        return series_divide(self.numerator.coeffs, self.denominator.coeffs, n_terms)


@functools.lru_cache(maxsize=None)
def resolvent_rational(m: int, r: int) -> RationalFn:
    """``F_{m,r}(s) = (U_{m-l-1}(s+1) + U_{l-1}(s+1)) / (T_m(s+1) - 1) - 1/(ms)`` exactly.

    ``T_m(s+1) - 1 = s * D1(s)`` with ``D1(0) = m^2``, so
    ``F = (m N - D1) / (m s D1)``; the numerator ``m N - D1`` vanishes at 0
    and is divided by ``s`` exactly.  Taylor coefficients are ``c_{m,r}(n)``.
    """
    _check_m(m)
    ell = r % m
    one = Fraction(1)
    num = (cheb_u(m - ell - 1) + cheb_u(ell - 1)).shift(one)
    d1 = (cheb_t(m).shift(one) - 1).divide_by_z()
    combined = m * num - d1
    if combined.coeff(0) != 0:
        raise AssertionError("s = 0 singularity failed to cancel")
    return RationalFn(combined.divide_by_z(), m * d1)


@dataclass(frozen=True)
class Pole:
    value: object
    modes: tuple[int, ...]

    @property
    def coincident(self) -> bool:
        return len(self.modes) > 1


def resolvent_poles(m: int, beta, precision_bits: int | None = None) -> list[Pole]:
    """Sorted distinct poles ``-2 sin^2(pi (j + beta)/m)`` with the modes hitting each.

    Two modes share a pole iff ``j + j' + 2 beta`` is divisible by ``m``
    (or ``j = j'``); the test is exact on rationals.
    """
    _check_m(m)
    ctx = context(resolve_precision(precision_bits))
    beta = as_rational(beta)
    groups: list[list[int]] = []
    for j in range(m):
        for g in groups:
            q = (j + g[0] + 2 * beta) / m
            if q.denominator == 1:
                g.append(j)
                break
        else:
            groups.append([j])
    poles = []
    for g in groups:
        sn = sinpi((g[0] + beta) / m, ctx)
        poles.append(Pole(-2 * sn * sn, tuple(g)))
    poles.sort(key=lambda p: p.value)
    return poles


def denominator_roots(m: int, beta, precision_bits: int | None = None) -> list:
    """Numerical roots in ``s`` of ``T_m(s+1) - cos 2 pi beta`` (with multiplicity)."""
    ctx = context(resolve_precision(precision_bits))
    beta = as_rational(beta)
    poly = cheb_t(m).shift(1)
    coeffs = [ctx.mpf(c.numerator) / c.denominator for c in poly.coeffs]
    coeffs[0] -= cos_2pi(beta, ctx)
    roots = ctx.polyroots(list(reversed(coeffs)), maxsteps=400, extraprec=2 * ctx.prec)
    return sorted((ctx.re(z) for z in roots))


@dataclass(frozen=True)
class LaplaceResult:
    value: object
    quadrature_error: object
    tail_bound: object

    @property
    def budget(self):
        return self.quadrature_error + self.tail_bound


def resolvent_from_laplace(
    m: int, beta, x: int, y: int, s, T=60, precision_bits: int | None = None
) -> LaplaceResult:
    """``int_0^T exp(-s t) K(x, y; t) dt`` by tanh-sinh quadrature.

    Returns the kernel normalization.  The discarded tail is bounded by
    ``exp(-Re(s) T) / Re(s)`` because ``|K| <= 1`` for real ``beta``.
    """
    _check_m(m)
    ctx = context(resolve_precision(precision_bits))
    s = to_complex(s, ctx)
    if not s.real > 0:
        raise DomainError("Laplace transform of the heat kernel needs Re(s) > 0")
    T = to_real(T, ctx)
    b = CycleParams(m, as_rational(beta), ctx.prec).reduced_beta
    r = x - y

    def integrand(t):
        return ctx.exp(-s * t) * spectral_sum(m, b, ctx.prec, t, r)

    # short panels near 0 where the kernel varies fastest, then width 4
    nodes = [ctx.zero]
    edge = 1
    while edge < T:
        nodes.append(ctx.mpf(edge))
        edge = edge * 2 if edge < 8 else edge + 4
    nodes.append(T)
    value, err = ctx.quad(integrand, nodes, error=True, maxdegree=10)
    tail = ctx.exp(-s.real * T) / s.real
    return LaplaceResult(value, err, tail)


def resolvent_identity_residual(m: int, beta, y: int, s, precision_bits: int | None = None):
    """``max_x |((s + Delta) G(., y; s))(x) - delta_y(x)|`` with the kernel normalization."""
    if not 0 <= y < m:
        raise DomainError(f"vertex y must lie in 0..{m - 1}, got {y}")
    ctx = context(resolve_precision(precision_bits))
    s = to_complex(s, ctx)
    params = CycleParams(m, as_rational(beta), ctx.prec)
    column = [resolvent_spectral(m, beta, x - y, s, ctx.prec, KERNEL) for x in range(m)]
    lap = twisted_laplacian_apply(params, column)
    worst = ctx.zero
    for x in range(m):
        target = 1 if x == y else 0
        worst = max(worst, abs(s * column[x] + lap[x] - target))
    return worst
