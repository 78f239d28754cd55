"""Twisted heat kernel on the cycle graph, by Bessel images and by eigenfunctions.

The cycle ``X_m`` has vertices ``Z/mZ`` and edge weights 1/2.  Functions are
twisted by the additive character ``x -> exp(2 pi i beta x)``:
``f(x + k m) = exp(2 pi i beta k) f(x)``.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass
from fractions import Fraction

from .bessel import bessel_i, bessel_tail_index, tail_bound_for_index
from .numeric import (
    DomainError,
    as_rational,
    context,
    default_tolerance,
    exp_2pi_i,
    reduce_mod,
    resolve_precision,
    sinpi,
    to_real,
)

IMAGE = "image"
SPECTRAL = "spectral"
METHODS = (IMAGE, SPECTRAL)


@dataclass(frozen=True)
class CycleParams:
    """Cycle length ``m``, twist ``beta`` (kept as given) and working precision."""

    m: int
    beta: Fraction = Fraction(0)
    precision_bits: int | None = None

    def __post_init__(self):
        if int(self.m) != self.m or self.m < 2:
            raise DomainError(f"cycle length m must be an integer >= 2, got {self.m}")
        object.__setattr__(self, "m", int(self.m))
        object.__setattr__(self, "beta", as_rational(self.beta))
        object.__setattr__(self, "precision_bits", resolve_precision(self.precision_bits))

    @property
    def ctx(self):
        return context(self.precision_bits)

    @property
    def reduced_beta(self) -> Fraction:
        """Twist reduced into ``[0, 1)``; the kernel depends on nothing else."""
        return reduce_mod(self.beta, 1)


@dataclass(frozen=True)
class HeatValue:
    params: CycleParams
    x: int
    y: int
    t: object
    value: object
    method: str
    tail_bound: object


def eigenvalue(params: CycleParams, j: int):
    """``lambda_j = 2 sin^2(pi (j + beta) / m)``."""
    s = sinpi((j + params.reduced_beta) / params.m, params.ctx)
    return 2 * s * s


def eigenvalues(params: CycleParams) -> list:
    return [eigenvalue(params, j) for j in range(params.m)]


def eigenfunction(params: CycleParams, j: int) -> list:
    """Normalized twisted character ``psi_j`` sampled on ``0..m-1``."""
    ctx = params.ctx
    norm = 1 / ctx.sqrt(params.m)
    b = params.reduced_beta
    return [norm * exp_2pi_i((j + b) * x / params.m, ctx) for x in range(params.m)]


def heat_kernel_line(x: int, y: int, t, precision_bits: int | None = None):
    """Heat kernel on the integer line, ``exp(-t) I_{x-y}(t)``."""
    ctx = context(resolve_precision(precision_bits))
    t = to_real(t, ctx)
    if t < 0:
        raise DomainError("heat kernel needs t >= 0")
    return ctx.mpc(ctx.exp(-t) * bessel_i(x - y, t, ctx.prec).value)


def heat_kernel_cycle(params: CycleParams, x: int, y: int, t, method: str = SPECTRAL) -> HeatValue:
    """Twisted heat kernel ``K(x, y; t)`` on ``X_m``.

    ``method="spectral"`` sums the ``m`` eigenmodes exactly.  ``method="image"``
    folds the line kernel over ``mZ`` with twist weights, truncated at the
    index from :func:`bessel_tail_index`; ``tail_bound`` then covers both the
    dropped images and every Bessel series remainder.
    """
    ctx = params.ctx
    t = to_real(t, ctx)
    if t < 0:
        raise DomainError("heat kernel needs t >= 0")
    if method == SPECTRAL:
        value = _spectral(params, x - y, t)
        tail = ctx.zero
    elif method == IMAGE:
        value, tail = _image(params, x, y, t)
    else:
        raise DomainError(f"unknown heat kernel method {method!r}; use one of {METHODS}")
    return HeatValue(params, x, y, t, value, method, tail)


@functools.lru_cache(maxsize=4096)
def _modes(m: int, beta: Fraction, prec: int, t):
    params = CycleParams(m, beta, prec)
    lams = eigenvalues(params)
    return lams, [params.ctx.exp(-lam * t) for lam in lams]


def _spectral(params: CycleParams, r: int, t, derivative: bool = False):
    return _spectral_sum(params.m, params.reduced_beta, params.precision_bits, t, r, derivative)


def spectral_sum(m: int, b: Fraction, prec: int, t, r: int, derivative: bool = False):
    """Uncached spectral kernel (or its time derivative) at ``r = x - y``."""
    ctx = context(prec)
    lams, decay = _modes(m, b, prec, t)
    total = ctx.mpc(0)
    for j in range(m):
        term = decay[j] * exp_2pi_i((j + b) * r / m, ctx)
        total += -lams[j] * term if derivative else term
    return total / m


# the kernel depends on (x, y) only through r = x - y
_spectral_sum = functools.lru_cache(maxsize=65536)(spectral_sum)


def _image(params: CycleParams, x: int, y: int, t):
    r = x - y
    ell = r % params.m
    b = params.reduced_beta
    total, tail = _image_sum(params.m, b, params.precision_bits, t, ell)
    prefactor = exp_2pi_i(-b * Fraction(ell - r, params.m), params.ctx)
    return prefactor * total, tail


@functools.lru_cache(maxsize=65536)
def _image_sum(m: int, b: Fraction, prec: int, t, ell: int):
    ctx = context(prec)
    eps = ctx.ldexp(ctx.one, -(prec + 8))
    K = bessel_tail_index(m, ell, t, eps, prec)
    et = ctx.exp(-t)
    total = ctx.mpc(0)
    series_err = ctx.zero
    for k in range(-K, K + 1):
        ev = bessel_i(ell + k * m, t, prec)
        total += exp_2pi_i(-b * k, ctx) * ev.value
        series_err += ev.tail_bound
    tail = tail_bound_for_index(m, ell, t, K, ctx) + et * series_err
    return et * total, tail


def heat_time_derivative(params: CycleParams, x: int, y: int, t):
    """Exact ``d/dt K(x, y; t)`` from the spectral sum."""
    return _spectral(params, x - y, to_real(t, params.ctx), derivative=True)


def twisted_laplacian_apply(params: CycleParams, f) -> list:
    """``(Delta f)(x) = f(x) - (f(x+1) + f(x-1)) / 2`` with twisted wrap-around."""
    m = params.m
    if len(f) != m:
        raise DomainError(f"vector length {len(f)} does not match m={m}")
    ctx = params.ctx
    f = [ctx.mpc(v) if not isinstance(v, Fraction) else ctx.mpc(ctx.mpf(v.numerator) / v.denominator) for v in f]
    twist = exp_2pi_i(params.reduced_beta, ctx)
    out = []
    for x in range(m):
        right = f[x + 1] if x + 1 < m else twist * f[0]
        left = f[x - 1] if x >= 1 else f[m - 1] / twist
        out.append(f[x] - (right + left) / 2)
    return out


def heat_residual(params: CycleParams, x: int, y: int, t, h=Fraction(1, 2**20), analytic: bool = False):
    """``|dK/dt + (Delta K(., y; t))(x)|`` for the spectral kernel.

    The time derivative is a central difference with step ``h`` unless
    ``analytic`` is set, in which case the eigenvalue factors are used.
    """
    ctx = params.ctx
    t = to_real(t, ctx)
    h = to_real(h, ctx)
    if not t > h > 0:
        raise DomainError("heat_residual needs t > h > 0")
    if analytic:
        dt = heat_time_derivative(params, x, y, t)
    else:
        dt = (_spectral(params, x - y, t + h) - _spectral(params, x - y, t - h)) / (2 * h)
    column = [_spectral(params, v - y, t) for v in range(params.m)]
    lap = twisted_laplacian_apply(params, column)
    # column is indexed by canonical vertices; shift to x by the twist
    q, ell = divmod(x, params.m)
    lap_x = lap[ell] * exp_2pi_i(params.reduced_beta * q, ctx)
    return abs(dt + lap_x)


def check_method_agreement(params: CycleParams, x: int, y: int, t) -> tuple:
    """Return ``(delta, budget)`` comparing image and spectral kernels."""
    img = heat_kernel_cycle(params, x, y, t, IMAGE)
    spec = heat_kernel_cycle(params, x, y, t, SPECTRAL)
    tol = default_tolerance(params.precision_bits)
    ctx = params.ctx
    budget = img.tail_bound + ctx.mpf(tol.abs_eps.numerator) / tol.abs_eps.denominator
    return abs(img.value - spec.value), budget
