"""Monotone polynomials that attain (or are tested against) the pointwise bound.

Per-point extremals take the density ``D(t) = w(t) K_k(t, x0)^2`` for the
winning weight ``w``; by the reproducing property ``D(x0) / int D`` equals
``w(x0) K_k(x0, x0)``, so ``P' = D`` meets the bound with equality. The
diagonal-sum family ``D(t) = w(t) K_k(t, t)`` is built as well, but only its
sharpness is measured.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from .bounds import pointwise_bound, split_degree
from .kernels import kernel_poly
from .orthobasis import WeightId, basis_polys, build_basis
from .polycore import ChebPoly, antiderivative, mul, sup_norm

CERTIFICATE_RTOL = 1e-9


class CertificateError(AssertionError):
    """The constructed polynomial failed to attain the bound it was built for."""


@dataclass(frozen=True)
class ExtremalPoly:
    n: int
    x0: Optional[float]  # None for the diagonal-sum family
    branch: Optional[WeightId]
    poly: ChebPoly
    deriv: ChebPoly


def centred_antiderivative(density: ChebPoly) -> ChebPoly:
    """Antiderivative shifted so that ``P(-1) = -P(1)``."""
    q = antiderivative(density, -1.0)
    return q - 0.5 * q(1.0)


def extremal_density(n: int, x0: float) -> tuple[WeightId, ChebPoly]:
    """Winning weight and the density ``w(t) K_k(t, x0)^2`` of degree ``n - 1``."""
    report = pointwise_bound(n, x0)
    weight = report.winning_weight
    k = report.weight_k
    basis = build_basis(weight, k)
    kern = kernel_poly(basis, k, x0)
    return weight, mul(weight.poly(), mul(kern, kern))


def build_pointwise_extremal(n: int, x0: float) -> ExtremalPoly:
    """Monotone ``P`` of degree ``n`` with ``P'(x0) = bound(n, x0) ||P||``.

    Raises :class:`CertificateError` if the equality fails beyond 1e-9 relative.
    """
    split_degree(n)
    if abs(x0) > 1.0:
        raise ValueError(f"x0 must lie in [-1, 1], got {x0}")
    weight, density = extremal_density(n, x0)
    poly = centred_antiderivative(density)
    e = ExtremalPoly(int(n), float(x0), weight, poly, density)
    ratio = sharpness_ratio(e, x0)
    if not abs(ratio - 1.0) <= CERTIFICATE_RTOL:
        raise CertificateError(f"n={n}, x0={x0}: sharpness ratio {ratio!r} != 1")
    return e


def _diagonal_density(weight: WeightId, k: int) -> ChebPoly:
    total = ChebPoly(np.zeros(1))
    if k < 0:
        return total
    for p in basis_polys(build_basis(weight, k)):
        total = total + mul(p, p)
    return mul(weight.poly(), total)


def build_remark_family(n: int) -> list[ExtremalPoly]:
    """Diagonal-sum polynomials: ``[s_k]`` for even ``n``, ``[h_k, f_k]`` for odd.

    ``h_0`` vanishes identically, so ``n = 1`` yields only ``f_0``.
    """
    k, parity = split_degree(n)
    if parity == "even":
        plan = [(WeightId.PLUS, k)]
    else:
        plan = [(WeightId.BRIDGE, k - 1), (WeightId.LEGENDRE, k)]
    out = []
    for weight, idx in plan:
        if idx < 0:
            continue
        density = _diagonal_density(weight, idx)
        out.append(ExtremalPoly(int(n), None, weight, centred_antiderivative(density), density))
    return out


def sharpness_ratio(e: ExtremalPoly, x0: float) -> float:
    """``P'(x0) / (bound(n, x0) ||P||)``; at most 1 for any monotone ``P``."""
    bound = pointwise_bound(e.n, x0).bound
    return float(e.deriv(x0)) / (bound * sup_norm(e.poly))


def monotone_from_density(density: ChebPoly, shift: float = 0.0) -> ExtremalPoly:
    """Wrap an arbitrary nonnegative density as a monotone polynomial."""
    poly = antiderivative(density, -1.0) + shift
    return ExtremalPoly(poly.degree, None, None, poly, density)


def lukacs_density(degree: int, rng: np.random.Generator) -> ChebPoly:
    """Random density nonnegative on [-1, 1] in Lukacs form.

    Even degree ``2m``: ``A^2 + (1-x^2) B^2``; odd ``2m+1``: ``(1+x) C^2 + (1-x) D^2``.
    """
    if degree < 0:
        raise ValueError("degree must be >= 0")
    if degree % 2 == 0:
        m = degree // 2
        a = ChebPoly(rng.standard_normal(m + 1))
        out = mul(a, a)
        if m >= 1:
            b = ChebPoly(rng.standard_normal(m))
            out = out + mul(WeightId.BRIDGE.poly(), mul(b, b))
        return out
    m = (degree - 1) // 2
    c = ChebPoly(rng.standard_normal(m + 1))
    d = ChebPoly(rng.standard_normal(m + 1))
    return mul(WeightId.PLUS.poly(), mul(c, c)) + mul(WeightId.MINUS.poly(), mul(d, d))


def random_monotone_corpus(
    count: int, seed: int, max_degree: int = 20
) -> list[ExtremalPoly]:
    """``count`` random monotone polynomials of degree 1..``max_degree``."""
    rng = np.random.default_rng(seed)
    corpus = []
    for _ in range(count):
        n = int(rng.integers(1, max_degree + 1))
        density = lukacs_density(n - 1, rng)
        shift = float(rng.standard_normal())
        corpus.append(monotone_from_density(density, shift))
    return corpus


def expected_remark_ratio(k: int) -> float:
    """Ratio of the diagonal-sum family at an endpoint: ``1 / (k + 1)``."""
    return 1.0 / (k + 1)
