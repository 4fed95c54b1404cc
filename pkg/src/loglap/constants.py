"""Dimension-dependent constants of the logarithmic Laplacian.

For dimension N the operator acts as

    L u(x) = c_N * int ( u(x) 1_{|x-y|<=1} - u(y) ) / |x-y|^N dy + rho_N u(x),

with Fourier symbol 2 ln|xi|.  This module evaluates the kernel constant
c_N, the unit-sphere measure, the zero-order shift rho_N, and the two
coefficients that drive the volume-based eigenvalue bounds.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .specfun import EULER_GAMMA, digamma, ln_gamma

__all__ = ["DimensionConstants", "dimension_constants"]


@dataclass(frozen=True)
class DimensionConstants:
    """The closed-form constants for one space dimension.

    Attributes
    ----------
    dim:
        Space dimension N >= 1.
    kernel_constant:
        Prefactor of the singular integral, pi^{-N/2} Gamma(N/2).
    sphere_measure:
        Surface measure of the unit sphere, 2 pi^{N/2} / Gamma(N/2).
        Satisfies kernel_constant * sphere_measure = 2 identically.
    zero_order_shift:
        Additive zero-order constant, 2 ln 2 + psi(N/2) - gamma.
    volume_coefficient:
        Coefficient of |Omega| in the eigenvalue lower bounds,
        2 * sphere_measure / (N^2 (2 pi)^N).
    counting_coefficient:
        Coefficient in the eigenvalue-sum upper bound,
        2 (2 pi)^N N / sphere_measure.
    """

    dim: int
    kernel_constant: float
    sphere_measure: float
    zero_order_shift: float
    volume_coefficient: float
    counting_coefficient: float


def dimension_constants(dim: int) -> DimensionConstants:
    """Evaluate all dimension constants for an integer dimension in [1, 10]."""
    if not isinstance(dim, int) or isinstance(dim, bool):
        raise ValueError(f"dimension must be an integer, got {dim!r}")
    if not 1 <= dim <= 10:
        # Everything downstream is exercised in dimensions 1 and 2; the cap
        # keeps the special-function arguments inside their validated range.
        raise ValueError(f"dimension must be in [1, 10], got {dim}")
    half = dim / 2.0
    lg = ln_gamma(half)
    kernel = math.pi ** (-half) * math.exp(lg)
    sphere = 2.0 * math.pi**half * math.exp(-lg)
    shift = 2.0 * math.log(2.0) + digamma(half) - EULER_GAMMA
    vol_coef = 2.0 * sphere / (dim**2 * (2.0 * math.pi) ** dim)
    count_coef = 2.0 * (2.0 * math.pi) ** dim * dim / sphere
    return DimensionConstants(
        dim=dim,
        kernel_constant=kernel,
        sphere_measure=sphere,
        zero_order_shift=shift,
        volume_coefficient=vol_coef,
        counting_coefficient=count_coef,
    )
