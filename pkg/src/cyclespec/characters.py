"""Dirichlet characters modulo ``m`` held as exact exponent vectors.

The unit group ``(Z/mZ)*`` is split by the prime factorization of ``m``.
Each odd prime power contributes one cyclic factor with its smallest
primitive root; ``2**e`` contributes ``-1`` (for ``e >= 2``) and ``5`` (for
``e >= 3``).  Generators are lifted to ``Z/mZ`` by the Chinese remainder
theorem and listed in increasing prime order, ``-1`` before ``5``.

A character is the vector ``(a_1, ..., a_k)`` with ``chi(g_i) = e(a_i / o_i)``
where ``e(x) = exp(2 pi i x)``.  Characters are enumerated lexicographically
in that vector, so index 0 is always the principal character.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from math import gcd

from .numeric import DomainError, context, default_tolerance, exp_2pi_i, resolve_precision

EVEN = "even"
ODD = "odd"


def factorize(n: int) -> list[tuple[int, int]]:
    """Prime factorization by trial division, primes ascending."""
    out = []
    p = 2
    while p * p <= n:
        if n % p == 0:
            e = 0
            while n % p == 0:
                n //= p
                e += 1
            out.append((p, e))
        p += 1
    if n > 1:
        out.append((n, 1))
    return out


def _order_mod(g: int, n: int) -> int:
    k, x = 1, g % n
    while x != 1:
        x = x * g % n
        k += 1
    return k


def primitive_root(n: int) -> int:
    """Smallest generator of the cyclic group ``(Z/nZ)*`` (``n`` an odd prime power)."""
    phi = sum(1 for a in range(1, n) if gcd(a, n) == 1)
    for g in range(2, n):
        if gcd(g, n) == 1 and _order_mod(g, n) == phi:
            return g
    raise DomainError(f"(Z/{n}Z)* is not cyclic")


def _crt_lift(residue: int, q: int, m: int) -> int:
    # the unit congruent to residue mod q and to 1 mod m/q
    rest = m // q
    for x in range(residue % q, m, q):
        if x % rest == 1 % rest:
            return x
    raise AssertionError("CRT lift failed")  # pragma: no cover


@dataclass(frozen=True)
class UnitGroup:
    modulus: int
    generators: tuple[int, ...]
    orders: tuple[int, ...]
    dlog: dict  # unit -> exponent tuple

    @property
    def size(self) -> int:
        return len(self.dlog)


@functools.lru_cache(maxsize=None)
def unit_group(m: int) -> UnitGroup:
    """Generators, their orders and a discrete-log table for ``(Z/mZ)*``."""
    if int(m) != m or m < 1:
        raise DomainError(f"modulus must be a positive integer, got {m}")
    gens, orders = [], []
    for p, e in factorize(m):
        q = p**e
        if p == 2:
            if e >= 2:
                gens.append(_crt_lift(q - 1, q, m))
                orders.append(2)
            if e >= 3:
                gens.append(_crt_lift(5, q, m))
                orders.append(2 ** (e - 2))
        else:
            gens.append(_crt_lift(primitive_root(q), q, m))
            orders.append(q // p * (p - 1))
    dlog = {}
    for ks in product(*(range(o) for o in orders)):
        x = 1
        for g, k in zip(gens, ks):
            x = x * pow(g, k, m) % m
        dlog[x % m] = ks
    return UnitGroup(m, tuple(gens), tuple(orders), dlog)


@dataclass(frozen=True)
class DirichletCharacter:
    """Character mod ``modulus`` with ``chi(g_i) = e(exponents[i] / orders[i])``."""

    modulus: int
    exponents: tuple[int, ...]

    def __post_init__(self):
        grp = unit_group(self.modulus)
        if len(self.exponents) != len(grp.orders):
            raise DomainError(f"need {len(grp.orders)} exponents for modulus {self.modulus}")
        object.__setattr__(self, "exponents", tuple(a % o for a, o in zip(self.exponents, grp.orders)))

    @property
    def group(self) -> UnitGroup:
        return unit_group(self.modulus)

    @property
    def index(self) -> int:
        """Position in :func:`enumerate_characters` (mixed radix over the orders)."""
        idx = 0
        for a, o in zip(self.exponents, self.group.orders):
            idx = idx * o + a
        return idx

    def angle(self, j: int) -> Fraction | None:
        """``chi(j) = e(angle)`` with ``angle`` in ``[0, 1)``; None off the units."""
        ks = self.group.dlog.get(j % self.modulus)
        if ks is None:
            return None
        total = sum(Fraction(a * k, o) for a, k, o in zip(self.exponents, ks, self.group.orders))
        return total - (total.numerator // total.denominator)

    def value(self, j: int, precision_bits: int | None = None):
        ctx = context(resolve_precision(precision_bits))
        a = self.angle(j)
        return ctx.mpc(0) if a is None else exp_2pi_i(a, ctx)

    def values(self, precision_bits: int | None = None) -> list:
        return [self.value(j, precision_bits) for j in range(self.modulus)]

    def conjugate(self) -> DirichletCharacter:
        return DirichletCharacter(self.modulus, tuple(-a for a in self.exponents))

    def __mul__(self, other: DirichletCharacter) -> DirichletCharacter:
        if other.modulus != self.modulus:
            raise DomainError("characters have different moduli")
        return DirichletCharacter(self.modulus, tuple(a + b for a, b in zip(self.exponents, other.exponents)))

    @property
    def is_principal(self) -> bool:
        return not any(self.exponents)

    @property
    def is_real(self) -> bool:
        return all(self.angle(j) in (None, 0, Fraction(1, 2)) for j in range(self.modulus))

    @property
    def parity(self) -> str:
        return EVEN if self.angle(self.modulus - 1) == 0 else ODD

    @property
    def is_even(self) -> bool:
        return self.parity == EVEN

    @functools.cached_property
    def conductor(self) -> int:
        """Smallest ``f | m`` such that ``chi`` is trivial on units ``= 1 (mod f)``."""
        m = self.modulus
        for f in sorted(d for d in range(1, m + 1) if m % d == 0):
            if all(self.angle(x) == 0 for x in range(1, m, f) if gcd(x, m) == 1):
                return f
        return m  # pragma: no cover

    @property
    def is_primitive(self) -> bool:
        return self.conductor == self.modulus

    def __repr__(self):
        return f"DirichletCharacter(modulus={self.modulus}, index={self.index}, exponents={self.exponents})"


def enumerate_characters(m: int) -> list[DirichletCharacter]:
    """All ``phi(m)`` characters mod ``m`` in lexicographic exponent order."""
    if int(m) != m or m < 2:
        raise DomainError(f"modulus must be an integer >= 2, got {m}")
    grp = unit_group(m)
    return [DirichletCharacter(m, ks) for ks in product(*(range(o) for o in grp.orders))]


def character(m: int, index: int) -> DirichletCharacter:
    """The character at ``index`` in :func:`enumerate_characters`."""
    chars = enumerate_characters(m)
    if not 0 <= index < len(chars):
        raise DomainError(f"character index must be in 0..{len(chars) - 1} for modulus {m}, got {index}")
    return chars[index]


def is_primitive(chi: DirichletCharacter) -> bool:
    return chi.is_primitive


def conductor(chi: DirichletCharacter) -> int:
    return chi.conductor


def gauss_sum(chi: DirichletCharacter, precision_bits: int | None = None):
    """``tau(chi) = sum_r chi(r) e(r/m)``, each term a single exact root of unity."""
    ctx = context(resolve_precision(precision_bits))
    m = chi.modulus
    total = ctx.mpc(0)
    for r in range(m):
        a = chi.angle(r)
        if a is not None:
            total += exp_2pi_i(a + Fraction(r, m), ctx)
    return total


@dataclass(frozen=True)
class IdentityReport:
    j: int
    lhs: object
    rhs: object
    delta: object
    ok: bool


def twisted_sum_identity_check(chi: DirichletCharacter, j: int, precision_bits: int | None = None) -> IdentityReport:
    """Compare ``sum_r chi(r) e(r j/m)`` with ``conj(chi(j)) tau(chi)``."""
    if not chi.is_primitive:
        raise DomainError(f"the twisted Gauss-sum identity needs a primitive character; conductor is {chi.conductor}")
    p = resolve_precision(precision_bits)
    ctx = context(p)
    m = chi.modulus
    lhs = ctx.mpc(0)
    for r in range(m):
        a = chi.angle(r)
        if a is not None:
            lhs += exp_2pi_i(a + Fraction(r * j, m), ctx)
    rhs = ctx.conj(chi.value(j, p)) * gauss_sum(chi, p)
    tol = default_tolerance(p)
    delta = abs(lhs - rhs)
    return IdentityReport(j, lhs, rhs, delta, bool(delta <= ctx.mpf(tol.abs_eps.numerator) / tol.abs_eps.denominator))


def orthogonality_defect(m: int, precision_bits: int | None = None):
    """Largest ``|sum_j chi(j) conj(psi(j)) - phi(m) [chi = psi]|`` over all pairs."""
    p = resolve_precision(precision_bits)
    ctx = context(p)
    chars = enumerate_characters(m)
    tables = [c.values(p) for c in chars]
    phi = len(chars)
    worst = ctx.zero
    for i, a in enumerate(tables):
        for k, b in enumerate(tables):
            s = ctx.fsum(x * ctx.conj(y) for x, y in zip(a, b))
            worst = max(worst, abs(s - (phi if i == k else 0)))
    return worst
