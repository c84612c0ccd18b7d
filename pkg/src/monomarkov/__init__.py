"""Sharp pointwise and uniform derivative bounds for monotone polynomials."""

from .bounds import (
    BoundReport,
    baselines,
    bernstein_constant,
    bernstein_qazi,
    growth_profile,
    markov_constant,
    pointwise_bound,
)
from .extremal import (
    ExtremalPoly,
    build_pointwise_extremal,
    build_remark_family,
    sharpness_ratio,
)
from .kernels import cd_kernel, g_extremal, kernel_F, kernel_H, kernel_S
from .oracle import LPProblem, LPStatus, grid_upper_bound, sandwich, solve_lp
from .orthobasis import WeightId, basis_poly, build_basis, eval_basis, gauss_legendre
from .polycore import ChebPoly

__all__ = [
    "BoundReport",
    "ChebPoly",
    "ExtremalPoly",
    "LPProblem",
    "LPStatus",
    "WeightId",
    "baselines",
    "basis_poly",
    "bernstein_constant",
    "bernstein_qazi",
    "build_basis",
    "build_pointwise_extremal",
    "build_remark_family",
    "cd_kernel",
    "eval_basis",
    "g_extremal",
    "gauss_legendre",
    "grid_upper_bound",
    "growth_profile",
    "kernel_F",
    "kernel_H",
    "kernel_S",
    "markov_constant",
    "pointwise_bound",
    "sandwich",
    "sharpness_ratio",
    "solve_lp",
]
