"""Modified Bessel function ``I_nu(t)`` of integer order with a certified tail."""

from __future__ import annotations

import functools
from dataclasses import dataclass
from math import factorial

from .numeric import DomainError, context, resolve_precision, to_real


@dataclass(frozen=True)
class BesselEval:
    order: int
    argument: object
    value: object
    tail_bound: object


def bessel_i(nu: int, t, precision_bits: int | None = None) -> BesselEval:
    """``I_nu(t)`` by the ascending series, ``t >= 0``.

    The series is cut once the next term drops below
    ``2**-(p+8) * (partial_sum + 1)``; the discarded remainder is bounded by a
    geometric series whose ratio is the (decreasing) term ratio at the cut.
    """
    ctx = context(resolve_precision(precision_bits))
    t = to_real(t, ctx)
    if t < 0:
        raise DomainError("bessel_i needs t >= 0")
    value, tail = _series(abs(int(nu)), t, ctx.prec)
    return BesselEval(int(nu), t, value, tail)


@functools.lru_cache(maxsize=65536)
def _series(order: int, t, prec: int):
    ctx = context(prec)
    if t == 0:
        return ctx.mpf(1 if order == 0 else 0), ctx.zero
    half = t / 2
    x2 = half * half
    cutoff = ctx.ldexp(ctx.one, -(ctx.prec + 8))
    power = half**order
    k = 0
    k_fact = 1
    nk_fact = factorial(order)
    total = ctx.zero
    while True:
        term = power / (k_fact * nk_fact)
        total += term
        k += 1
        k_fact *= k
        nk_fact *= order + k
        power *= x2
        next_term = power / (k_fact * nk_fact)
        ratio = x2 / ((k + 1) * (order + k + 1))
        # once ratio < 1 all later ratios are smaller still
        if ratio < 1 and next_term <= cutoff * (total + 1):
            return total, next_term / (1 - ratio)


def bessel_term_bound(nu: int, t, ctx):
    """Upper bound ``(t/2)**nu / nu!`` for ``exp(-t) * I_nu(t)``, ``nu >= 0``."""
    return (t / 2) ** nu / factorial(nu)


def _progression_tail(nu0: int, t, ctx):
    # sum_{nu >= nu0} (t/2)^nu / nu!, valid once nu0 + 1 > t/2
    ratio = (t / 2) / (nu0 + 1)
    return bessel_term_bound(nu0, t, ctx) / (1 - ratio)


def bessel_tail_index(m: int, ell: int, t, eps, precision_bits: int | None = None) -> int:
    """Smallest ``K`` with ``sum_{|k|>K} exp(-t) I_{|ell+km|}(t) < eps``.

    Uses ``exp(-t) I_nu(t) <= (t/2)**nu / nu!``.  The two discarded
    progressions start at orders ``(K+1)m + ell`` and ``(K+1)m - ell``; each is
    dominated by the full tail of the bound from ``(K+1)m - ell`` upward.
    """
    if m < 2:
        raise DomainError("bessel_tail_index needs m >= 2")
    if not 0 <= ell < m:
        raise DomainError("bessel_tail_index needs 0 <= ell < m")
    ctx = context(resolve_precision(precision_bits))
    t = to_real(t, ctx)
    eps = to_real(eps, ctx)
    if eps <= 0:
        raise DomainError("bessel_tail_index needs eps > 0")
    if t == 0:
        return 0
    K = 0
    while True:
        nu0 = (K + 1) * m - ell
        if nu0 + 1 > t / 2 and 2 * _progression_tail(nu0, t, ctx) < eps:
            return K
        K += 1


def tail_bound_for_index(m: int, ell: int, t, K: int, ctx):
    """The certificate value used by :func:`bessel_tail_index` for a given ``K``."""
    if t == 0:
        return ctx.zero
    nu0 = (K + 1) * m - ell
    if nu0 + 1 <= t / 2:
        return ctx.inf
    return 2 * _progression_tail(nu0, t, ctx)
