"""Exact Chebyshev polynomials and their coefficient tables.

``T_n`` and ``U_n`` are built by the three-term recurrence over the integers.
The closed-form coefficient formulas (Taylor coefficients about ``z = 1`` and
monomial coefficients about ``z = 0``) are exposed separately so each can be
checked against the recurrence.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass
from fractions import Fraction
from math import comb, factorial

from .numeric import DomainError, as_rational


@dataclass(frozen=True)
class Poly:
    """Univariate polynomial with exact rational coefficients.

    ``coeffs[k]`` multiplies ``z**k``; trailing zeros are trimmed so the zero
    polynomial has an empty tuple.
    """

    coeffs: tuple[Fraction, ...] = ()

    def __post_init__(self):
        cs = [as_rational(c) for c in self.coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))

    @classmethod
    def constant(cls, c) -> Poly:
        return cls((c,))

    @classmethod
    def z(cls) -> Poly:
        return cls((0, 1))

    @property
    def degree(self) -> int:
        """Degree, with ``-1`` for the zero polynomial."""
        return len(self.coeffs) - 1

    def coeff(self, k: int) -> Fraction:
        if 0 <= k < len(self.coeffs):
            return self.coeffs[k]
        return Fraction(0)

    def is_zero(self) -> bool:
        return not self.coeffs

    def __add__(self, other):
        other = _as_poly(other)
        n = max(len(self.coeffs), len(other.coeffs))
        return Poly(tuple(self.coeff(k) + other.coeff(k) for k in range(n)))

    __radd__ = __add__

    def __neg__(self):
        return Poly(tuple(-c for c in self.coeffs))

    def __sub__(self, other):
        return self + (-_as_poly(other))

    def __rsub__(self, other):
        return _as_poly(other) - self

    def __mul__(self, other):
        other = _as_poly(other)
        if self.is_zero() or other.is_zero():
            return Poly()
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return Poly(tuple(out))

    __rmul__ = __mul__

    def __pow__(self, k: int):
        out = Poly.constant(1)
        for _ in range(k):
            out = out * self
        return out

    def shift(self, c) -> Poly:
        """Return ``p(z + c)`` by exact binomial re-expansion."""
        c = as_rational(c)
        out = [Fraction(0)] * len(self.coeffs)
        for k, a in enumerate(self.coeffs):
            if not a:
                continue
            for i in range(k + 1):
                out[i] += a * comb(k, i) * c ** (k - i)
        return Poly(tuple(out))

    def divide_by_z(self) -> Poly:
        """Exact division by ``z``; the constant term must vanish."""
        if self.coeff(0) != 0:
            raise DomainError("polynomial does not vanish at 0; cannot divide by z")
        return Poly(self.coeffs[1:])

    def __call__(self, z):
        if isinstance(z, (int, Fraction)):
            return eval_exact(self, z)
        return eval(self, z)

    def __repr__(self):
        if self.is_zero():
            return "Poly(0)"
        terms = []
        for k, c in enumerate(self.coeffs):
            if c:
                terms.append(f"{c}" + ("" if k == 0 else "*z" if k == 1 else f"*z**{k}"))
        return "Poly(" + " + ".join(terms) + ")"


def _as_poly(x) -> Poly:
    return x if isinstance(x, Poly) else Poly.constant(x)


def eval_exact(p: Poly, z) -> Fraction:
    """Horner evaluation at an exact rational."""
    z = as_rational(z)
    acc = Fraction(0)
    for c in reversed(p.coeffs):
        acc = acc * z + c
    return acc


def eval(p: Poly, z):
    """Horner evaluation at an mpmath number, at that number's precision."""
    ctx = z.context
    acc = ctx.zero
    for c in reversed(p.coeffs):
        acc = acc * z + ctx.mpf(c.numerator) / c.denominator
    return acc


@functools.lru_cache(maxsize=None)
def cheb_t(n: int) -> Poly:
    """Chebyshev polynomial of the first kind, ``T_{n+1} = 2z T_n - T_{n-1}``."""
    if n < 0:
        raise DomainError(f"cheb_t needs n >= 0, got {n}")
    if n == 0:
        return Poly.constant(1)
    if n == 1:
        return Poly.z()
    return _next(cheb_t(n - 1), cheb_t(n - 2))


@functools.lru_cache(maxsize=None)
def cheb_u(n: int) -> Poly:
    """Chebyshev polynomial of the second kind; ``U_{-1}`` is the zero polynomial."""
    if n < -1:
        raise DomainError(f"cheb_u needs n >= -1, got {n}")
    if n == -1:
        return Poly()
    if n == 0:
        return Poly.constant(1)
    if n == 1:
        return Poly((0, 2))
    return _next(cheb_u(n - 1), cheb_u(n - 2))


def _next(p1: Poly, p0: Poly) -> Poly:
    return Poly((0,) + tuple(2 * c for c in p1.coeffs)) - p0


def shifted_t_coeff(n: int, k: int) -> Fraction:
    """Coefficient ``a_n(k)`` of ``(z-1)**k`` in ``T_n(z)``.

    >>> shifted_t_coeff(5, 1)
    Fraction(25, 1)
    """
    if n < 0 or k < 0:
        raise DomainError("shifted_t_coeff needs n, k >= 0")
    if k == 0:
        return Fraction(1)
    if k > n:
        return Fraction(0)
    prod = Fraction(1)
    for j in range(k):
        prod *= Fraction(n * n - j * j, 2 * j + 1)
    return prod / factorial(k)


def shifted_u_coeff(n: int, k: int) -> Fraction:
    """Coefficient ``b_n(k)`` of ``(z-1)**k`` in ``U_n(z)`` (zero for ``n = -1``)."""
    if n < -1 or k < 0:
        raise DomainError("shifted_u_coeff needs n >= -1, k >= 0")
    if n == -1 or k > n:
        return Fraction(0)
    prod = Fraction(1)
    for j in range(k + 1):
        prod *= Fraction((n + 1) ** 2 - j * j, 2 * j + 1)
    return prod / ((n + 1) * factorial(k))


def _check_monomial_index(n: int, j: int):
    if n < 0 or j < 0 or j > n:
        raise DomainError(f"monomial coefficient index needs 0 <= j <= n, got n={n}, j={j}")


def monomial_t_coeff(n: int, j: int) -> Fraction:
    """Coefficient ``t_n(j)`` of ``z**j`` in ``T_n``."""
    _check_monomial_index(n, j)
    if (n - j) % 2:
        return Fraction(0)
    if n == 0:
        return Fraction(1)
    h = (n - j) // 2
    return (-1) ** h * Fraction(n, n + j) * comb((n + j) // 2, h) * 2**j


def monomial_u_coeff(n: int, j: int) -> Fraction:
    """Coefficient ``u_n(j)`` of ``z**j`` in ``U_n``."""
    _check_monomial_index(n, j)
    if (n - j) % 2:
        return Fraction(0)
    h = (n - j) // 2
    return Fraction((-1) ** h * comb((n + j) // 2, h) * 2**j)


def t_coeff_or_zero(n: int, j: int) -> Fraction:
    """``t_n(j)`` extended by zero outside ``0 <= j <= n``."""
    return monomial_t_coeff(n, j) if 0 <= j <= n else Fraction(0)


def u_coeff_or_zero(n: int, j: int) -> Fraction:
    """``u_n(j)`` extended by zero outside ``0 <= j <= n`` and for ``n = -1``."""
    return monomial_u_coeff(n, j) if 0 <= j <= n else Fraction(0)


# -- formal power series --------------------------------------------------------

def series_divide(num, den, n_terms: int):
    """First ``n_terms`` Taylor coefficients of ``num/den`` at 0.

    ``num`` and ``den`` are coefficient sequences of any field type (Fractions
    stay exact); ``den[0]`` must be nonzero.
    """
    if not den or den[0] == 0:
        raise DomainError("series denominator vanishes at 0")
    d0 = den[0]
    out = []
    for n in range(n_terms):
        acc = num[n] if n < len(num) else 0
        for j in range(max(0, n - len(den) + 1), n):
            acc = acc - den[n - j] * out[j]
        out.append(acc / d0)
    return out


def valuation(coeffs, is_zero=lambda c: c == 0) -> int:
    """Index of the first coefficient that is not zero (``len`` if none)."""
    for k, c in enumerate(coeffs):
        if not is_zero(c):
            return k
    return len(coeffs)
