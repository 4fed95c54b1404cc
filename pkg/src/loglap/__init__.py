"""Galerkin spectra and closed-form eigenvalue bounds for the logarithmic Laplacian.

The package splits into small layers: validated special functions
(`specfun`), dimension constants (`constants`), the two scalar root equations
(`roots`), domain geometry with collar test functions (`geometry`),
piecewise-constant Galerkin assembly (`discretize`), eigensolves and
spectral diagnostics (`spectrum`), the closed-form bound formulas
(`bounds`), and a CLI harness (`cli`).
"""

from .bounds import (
    BallProfile,
    BoundReport,
    SampledProfile,
    counting_envelope,
    log_moment_check,
    lower_bound_eigenvalue,
    lower_bound_smallest,
    lower_bound_sum,
    upper_bound_smallest_large,
    upper_bound_smallest_small,
    upper_bound_sum,
)
from .constants import DimensionConstants, dimension_constants
from .discretize import (
    Grid,
    QuadFormMatrix,
    assemble_form,
    build_grid,
    plane_wave_symbol_1d,
    rayleigh_quotient,
)
from .geometry import Domain, TestFunctionSpec, ball, box, interval
from .roots import RootResult, solve_log_ratio, solve_r_ln_r
from .specfun import NumericsError, SpecialValue, cosint, digamma, ln_gamma
from .spectrum import (
    Spectrum,
    counting_function,
    eig_symmetric,
    envelope_samples,
    spectrum_from_values,
    weyl_diagnostics,
)

__version__ = "0.1.0"

__all__ = [
    "BallProfile",
    "BoundReport",
    "DimensionConstants",
    "Domain",
    "Grid",
    "NumericsError",
    "QuadFormMatrix",
    "RootResult",
    "SampledProfile",
    "SpecialValue",
    "Spectrum",
    "TestFunctionSpec",
    "__version__",
    "assemble_form",
    "ball",
    "box",
    "build_grid",
    "cosint",
    "counting_envelope",
    "counting_function",
    "digamma",
    "dimension_constants",
    "eig_symmetric",
    "envelope_samples",
    "interval",
    "ln_gamma",
    "log_moment_check",
    "lower_bound_eigenvalue",
    "lower_bound_smallest",
    "lower_bound_sum",
    "plane_wave_symbol_1d",
    "rayleigh_quotient",
    "solve_log_ratio",
    "solve_r_ln_r",
    "spectrum_from_values",
    "upper_bound_smallest_large",
    "upper_bound_smallest_small",
    "upper_bound_sum",
    "weyl_diagnostics",
]
