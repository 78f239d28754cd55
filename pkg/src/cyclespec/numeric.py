"""Scalar layer: exact rationals, precision-carrying complex numbers, tolerances.

Exact quantities are :class:`fractions.Fraction`.  Transcendental quantities are
:mod:`mpmath` numbers created inside a per-precision :class:`mpmath.MPContext`,
so every value carries the working precision it was computed at and arithmetic
between values of one context never silently drops to double precision.
"""

from __future__ import annotations

import functools
import os
import re
from dataclasses import dataclass
from decimal import Decimal, InvalidOperation
from fractions import Fraction
from numbers import Rational as _RationalABC

from mpmath import MPContext

DEFAULT_PRECISION_BITS = 128
PRECISION_ENV_VAR = "CYCLESPEC_PRECISION_BITS"
MIN_PRECISION_BITS = 53


class CycleSpecError(Exception):
    """Base class for all library errors."""


class DomainError(CycleSpecError, ValueError):
    """Parameters violate the hypotheses under which a formula holds."""


class PoleError(DomainError):
    """Evaluation point sits on (or too close to) a pole."""


class CrossCheckError(CycleSpecError):
    """Two independent computations disagree beyond their error budget."""


@functools.lru_cache(maxsize=None)
def context(precision_bits: int) -> MPContext:
    """Return the shared mpmath context for ``precision_bits``.

    Contexts are created once and never mutated afterwards.
    """
    if precision_bits < MIN_PRECISION_BITS:
        raise DomainError(f"precision_bits must be >= {MIN_PRECISION_BITS}, got {precision_bits}")
    ctx = MPContext()
    ctx.prec = int(precision_bits)
    return ctx


def default_precision() -> int:
    value = os.environ.get(PRECISION_ENV_VAR)
    if not value:
        return DEFAULT_PRECISION_BITS
    try:
        bits = int(value)
    except ValueError:
        raise DomainError(f"{PRECISION_ENV_VAR}={value!r} is not an integer") from None
    if bits < MIN_PRECISION_BITS:
        raise DomainError(f"{PRECISION_ENV_VAR} must be >= {MIN_PRECISION_BITS}")
    return bits


def resolve_precision(precision_bits: int | None) -> int:
    if precision_bits is None:
        return default_precision()
    if precision_bits < MIN_PRECISION_BITS:
        raise DomainError(f"precision_bits must be >= {MIN_PRECISION_BITS}, got {precision_bits}")
    return int(precision_bits)


@dataclass(frozen=True)
class Tolerance:
    """Mixed absolute/relative comparison threshold."""

    abs_eps: float | Fraction
    rel_eps: float | Fraction

    def __post_init__(self):
        if not (self.abs_eps > 0 and self.rel_eps > 0):
            raise DomainError("tolerances must be positive")


def default_tolerance(precision_bits: int | None = None) -> Tolerance:
    """``2**(48 - p)`` for both components; ``2**-80`` at the 128-bit default."""
    p = resolve_precision(precision_bits)
    eps = Fraction(1, 2 ** (p - 48))
    return Tolerance(eps, eps)


def rational_to_cnum(x, precision_bits: int | None = None):
    """Round an exact rational to the nearest complex number at the given precision."""
    ctx = context(resolve_precision(precision_bits))
    q = as_rational(x)
    return ctx.mpc(ctx.mpf(q.numerator) / q.denominator)


def to_cnum(x, precision_bits: int | None = None):
    """Convert ints, Fractions, floats, complex or mpmath numbers to an mpc."""
    ctx = context(resolve_precision(precision_bits))
    if isinstance(x, _RationalABC):
        return rational_to_cnum(x, ctx.prec)
    return ctx.mpc(x)


def approx_eq(a, b, tol: Tolerance | None = None) -> bool:
    """``|a-b| <= abs_eps + rel_eps * max(|a|, |b|)``."""
    ctx = _context_of(a, b)
    if tol is None:
        tol = default_tolerance(ctx.prec)
    a = _to_ctx(ctx, a)
    b = _to_ctx(ctx, b)
    bound = _to_ctx(ctx, tol.abs_eps) + _to_ctx(ctx, tol.rel_eps) * max(abs(a), abs(b))
    return abs(a - b) <= bound


def divide(a, b, tol: Tolerance | None = None):
    """Quotient ``a/b`` that refuses divisors smaller than ``tol.abs_eps``."""
    ctx = _context_of(a, b)
    if tol is None:
        tol = default_tolerance(ctx.prec)
    b = _to_ctx(ctx, b)
    if abs(b) < _to_ctx(ctx, tol.abs_eps):
        raise DomainError(f"division by a value of modulus {ctx.nstr(abs(b), 5)} below tolerance")
    return _to_ctx(ctx, a) / b


def _context_of(*values) -> MPContext:
    for v in values:
        ctx = getattr(v, "context", None)
        if isinstance(ctx, MPContext):
            return ctx
    return context(default_precision())


def _to_ctx(ctx: MPContext, x):
    if isinstance(x, Fraction):
        return ctx.mpf(x.numerator) / x.denominator
    return ctx.convert(x)


# -- rational parsing -------------------------------------------------------

_RATIONAL_RE = re.compile(r"^\s*([+-]?\d+)\s*/\s*([+-]?\d+)\s*$")


def as_rational(x) -> Fraction:
    """Coerce ``x`` to an exact :class:`Fraction`.

    Strings may be ``"p/q"`` or decimals ("0.3" is exactly 3/10).  Python
    floats are read through their shortest decimal repr for the same reason.
    """
    if isinstance(x, Fraction):
        return x
    if isinstance(x, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, _RationalABC):
        return Fraction(x.numerator, x.denominator)
    if isinstance(x, float):
        if x != x or x in (float("inf"), float("-inf")):
            raise DomainError(f"non-finite value {x!r}")
        return Fraction(repr(x))
    if isinstance(x, Decimal):
        if not x.is_finite():
            raise DomainError(f"non-finite value {x!r}")
        return Fraction(x)
    if isinstance(x, str):
        m = _RATIONAL_RE.match(x)
        if m:
            den = int(m.group(2))
            if den == 0:
                raise DomainError(f"zero denominator in {x!r}")
            return Fraction(int(m.group(1)), den)
        try:
            d = Decimal(x.strip())
        except InvalidOperation:
            raise DomainError(f"cannot parse {x!r} as a rational") from None
        if not d.is_finite():
            raise DomainError(f"non-finite value {x!r}")
        return Fraction(d)
    raise TypeError(f"cannot interpret {type(x).__name__} as an exact rational")


def format_rational(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


_NUM = r"(?:\d+(?:\.\d*)?|\.\d+)(?:[eE][+-]?\d+)?"
_COMPLEX_RE = re.compile(rf"^(?P<re>[+-]?{_NUM})?(?:(?P<im>[+-]?(?:{_NUM})?)[ij])?$")


def parse_complex(text: str) -> tuple[Fraction, Fraction]:
    """Parse ``"a+bi"``, ``"a"``, ``"bi"`` or ``"a-i"`` into exact (re, im)."""
    s = text.strip().replace(" ", "")
    m = _COMPLEX_RE.match(s)
    if not s or not m or (m.group("re") and m.group("im") and m.group("im")[0] not in "+-"):
        raise DomainError(f"cannot parse {text!r} as a complex number")
    real = as_rational(m.group("re")) if m.group("re") else Fraction(0)
    im = m.group("im")
    if im == "" and m.group("re"):
        # "2j": the leading number is the imaginary coefficient
        return Fraction(0), real
    if im is None:
        imag = Fraction(0)
    elif im in ("", "+", "-"):
        imag = Fraction(-1 if im == "-" else 1)
    else:
        imag = as_rational(im)
    return real, imag


# -- trigonometry at rational multiples of pi --------------------------------

def reduce_mod(q: Fraction, period: int = 1) -> Fraction:
    """``q`` reduced into ``[0, period)``, exactly."""
    return q - period * (q // period)


def rational_mpf(ctx: MPContext, q):
    """Exact rational (or int) as an mpf of ``ctx``."""
    q = Fraction(q)
    return ctx.mpf(q.numerator) / q.denominator


def sinpi(q: Fraction, ctx: MPContext):
    """``sin(pi*q)`` with the argument reduced exactly mod 2 first."""
    return ctx.sinpi(rational_mpf(ctx, reduce_mod(q, 2)))


def cospi(q: Fraction, ctx: MPContext):
    return ctx.cospi(rational_mpf(ctx, reduce_mod(q, 2)))


def exp_2pi_i(q: Fraction, ctx: MPContext):
    """``exp(2*pi*i*q)`` with ``q`` reduced exactly mod 1."""
    return _root_of_unity(reduce_mod(as_rational(q), 1), ctx.prec)


@functools.lru_cache(maxsize=65536)
def _root_of_unity(q: Fraction, prec: int):
    ctx = context(prec)
    if q == 0:
        return ctx.mpc(1)
    xf = rational_mpf(ctx, 2 * q)
    return ctx.mpc(ctx.cospi(xf), ctx.sinpi(xf))


def cos_2pi(q: Fraction, ctx: MPContext):
    return cospi(2 * reduce_mod(q, 1), ctx)


def is_integer(q: Fraction) -> bool:
    return q.denominator == 1


def max_abs(values) -> object:
    best = None
    for v in values:
        a = abs(v)
        if best is None or a > best:
            best = a
    return best


def to_complex(x, ctx: MPContext):
    """Convert a number (Fraction, int, float, complex, mpmath, "a+bi") into ``ctx``."""
    if isinstance(x, str):
        re_, im_ = parse_complex(x)
        return ctx.mpc(rational_mpf(ctx, re_), rational_mpf(ctx, im_))
    if isinstance(x, _RationalABC):
        return ctx.mpc(rational_mpf(ctx, as_rational(x)))
    return ctx.mpc(ctx.convert(x))


def to_real(x, ctx: MPContext):
    """Like :func:`to_complex` but insists on a finite real value."""
    if isinstance(x, str):
        x = as_rational(x)
    if isinstance(x, _RationalABC):
        return rational_mpf(ctx, as_rational(x))
    v = ctx.convert(x)
    if isinstance(v, ctx.mpc):
        if v.imag != 0:
            raise DomainError(f"expected a real number, got {x!r}")
        v = v.real
    if not ctx.isfinite(v):
        raise DomainError(f"expected a finite number, got {x!r}")
    return v
