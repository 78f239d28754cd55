"""Twisted cosecant/secant sums, heat and resolvent kernels, and spectral
L-values on the cycle graph, each computed by independent routes."""

from .numeric import CrossCheckError, CycleSpecError, DomainError, PoleError
from .trigsums import SumSpec, direct_sum, evaluate_sum

__version__ = "0.1.0"

__all__ = [
    "CrossCheckError",
    "CycleSpecError",
    "DomainError",
    "PoleError",
    "SumSpec",
    "direct_sum",
    "evaluate_sum",
]
