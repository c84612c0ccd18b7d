"""Christoffel-Darboux kernels and the diagonal kernel functions S_k, H_k, F_k.

    S_k(x) = (1+x)   * sum_{l<=k}   p_l(x)^2   (weight 1+x)
    H_k(x) = (1-x^2) * sum_{l<=k-1} p_l(x)^2   (weight 1-x^2; empty for k=0)
    F_k(x) =           sum_{l<=k}   p_l(x)^2   (weight 1)

All three accept scalars or arrays.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .orthobasis import (
    OrthoBasis,
    WeightId,
    basis_polys,
    build_basis,
    eval_basis,
    evaluate_weight,
)
from .polycore import ArrayLike, ChebPoly, divide_linear

CONFLUENT_TOL = 1e-8
DIVISION_RTOL = 1e-10


@dataclass(frozen=True)
class KernelEval:
    weight: WeightId
    k: int
    x: float
    value: float


def _as_output(v: np.ndarray) -> ArrayLike:
    return float(v) if np.ndim(v) == 0 else v


def cd_kernel(
    basis: OrthoBasis, k: int, x: ArrayLike, y: ArrayLike, method: str = "sum"
) -> ArrayLike:
    """``K_k(x, y) = sum_{l<=k} p_l(x) p_l(y)``.

    ``method="quotient"`` uses the Christoffel-Darboux closed form
    ``(gamma_k/gamma_{k+1}) (p_{k+1}(x) p_k(y) - p_k(x) p_{k+1}(y)) / (x - y)``
    and needs ``k + 1 <= basis.max_degree``; points with ``|x - y| <= 1e-8``
    always fall back to the direct sum.
    """
    if k < 0 or k > basis.max_degree:
        raise ValueError(f"kernel index {k} outside 0..{basis.max_degree}")
    px = eval_basis(basis, x)
    py = eval_basis(basis, y)
    direct = np.sum(px[: k + 1] * py[: k + 1], axis=0)
    if method == "sum":
        return _as_output(direct)
    if method != "quotient":
        raise ValueError(f"unknown method {method!r}")
    if k + 1 > basis.max_degree:
        raise ValueError("quotient form needs p_{k+1}; build the basis one degree higher")
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    diff = x - y
    far = np.abs(diff) > CONFLUENT_TOL
    safe = np.where(far, diff, 1.0)
    ratio = basis.gamma[k] / basis.gamma[k + 1]
    quot = ratio * (px[k + 1] * py[k] - px[k] * py[k + 1]) / safe
    return _as_output(np.where(far, quot, direct))


def christoffel_sum(weight: WeightId, k: int, x: ArrayLike) -> ArrayLike:
    """Diagonal ``K_k(x, x)``; zero when ``k < 0``."""
    if k < 0:
        return _as_output(np.zeros(np.shape(x)))
    vals = eval_basis(build_basis(weight, k), x)
    return _as_output(np.sum(vals * vals, axis=0))


def weighted_diagonal(weight: WeightId, k: int, x: ArrayLike) -> ArrayLike:
    """``w(x) K_k(x, x)``, the largest value of ``D(x)/int D`` for densities ``w g^2``."""
    return _as_output(evaluate_weight(weight, x) * christoffel_sum(weight, k, x))


def kernel_S(k: int, x: ArrayLike) -> ArrayLike:
    return weighted_diagonal(WeightId.PLUS, k, x)


def kernel_H(k: int, x: ArrayLike) -> ArrayLike:
    return weighted_diagonal(WeightId.BRIDGE, k - 1, x)


def kernel_F(k: int, x: ArrayLike) -> ArrayLike:
    return weighted_diagonal(WeightId.LEGENDRE, k, x)


def kernel_poly(basis: OrthoBasis, k: int, x0: float) -> ChebPoly:
    """``t -> K_k(t, x0)`` as a Chebyshev series."""
    if k > basis.max_degree:
        raise ValueError(f"kernel index {k} outside 0..{basis.max_degree}")
    weights = eval_basis(basis, x0)[: k + 1]
    polys = basis_polys(basis)
    coeffs = np.zeros(k + 1)
    for w_l, p in zip(weights, polys):
        coeffs[: len(p.coeffs)] += w_l * p.coeffs
    return ChebPoly(coeffs)


def g_extremal(basis: OrthoBasis, k: int, x0: float) -> ChebPoly:
    """Divided difference ``(p_{k+1}(t) p_k(x0) - p_{k+1}(x0) p_k(t)) / (t - x0)``.

    Computed by synthetic division of the numerator; equals
    ``(gamma_{k+1}/gamma_k) K_k(t, x0)``.
    """
    if k + 1 > basis.max_degree:
        raise ValueError("g_extremal needs p_{k+1}; build the basis one degree higher")
    polys = basis_polys(basis)
    vals = eval_basis(basis, x0)
    numerator = polys[k + 1] * float(vals[k]) - polys[k] * float(vals[k + 1])
    quotient, remainder = divide_linear(numerator, x0)
    scale = float(np.linalg.norm(numerator.coeffs))
    if abs(remainder) >= DIVISION_RTOL * scale:
        raise ArithmeticError(f"synthetic division left remainder {remainder:.3e}")
    return quotient
