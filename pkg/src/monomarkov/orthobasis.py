"""Orthonormal polynomials for the weights 1, 1+x, 1-x and 1-x^2 on [-1, 1].

The weight ``(1-x)**alpha * (1+x)**beta`` is labelled by ``J^(alpha, beta)``,
so ``1+x`` is ``J^(0,1)`` and ``1-x`` is ``J^(1,0)``. Members are normalised to
``int w p_i p_j = delta_ij`` with positive leading coefficient and satisfy

    b_{l+1} p_{l+1}(x) = (x - a_l) p_l(x) - b_l p_{l-1}(x).
"""

from __future__ import annotations

import enum
import functools
import math
from dataclasses import dataclass

import numpy as np

from .polycore import ArrayLike, ChebPoly, _check_domain

AGREEMENT_TOL = 1e-10


class WeightId(enum.Enum):
    LEGENDRE = (0, 0)
    PLUS = (0, 1)
    MINUS = (1, 0)
    BRIDGE = (1, 1)

    @property
    def alpha(self) -> int:
        return self.value[0]

    @property
    def beta(self) -> int:
        return self.value[1]

    @property
    def symbol(self) -> str:
        return f"J^({self.alpha},{self.beta})"

    def poly(self) -> ChebPoly:
        """The weight as a Chebyshev series."""
        return {
            WeightId.LEGENDRE: ChebPoly(np.array([1.0])),
            WeightId.PLUS: ChebPoly(np.array([1.0, 1.0])),
            WeightId.MINUS: ChebPoly(np.array([1.0, -1.0])),
            WeightId.BRIDGE: ChebPoly(np.array([0.5, 0.0, -0.5])),
        }[self]


def evaluate_weight(weight: WeightId, x: ArrayLike) -> ArrayLike:
    x = np.asarray(x, dtype=float)
    out = (1.0 - x) ** weight.alpha * (1.0 + x) ** weight.beta
    return float(out) if out.ndim == 0 else out


def weight_mass(weight: WeightId) -> float:
    """``int_{-1}^{1} w``: 2 for the constant and linear weights, 4/3 for 1-x^2."""
    return 4.0 / 3.0 if weight is WeightId.BRIDGE else 2.0


class ConvergenceError(ArithmeticError):
    pass


@dataclass(frozen=True)
class QuadRule:
    nodes: np.ndarray
    weights: np.ndarray
    order: int

    def integrate(self, values: np.ndarray) -> float:
        return float(np.dot(self.weights, values))


@functools.lru_cache(maxsize=None)
def gauss_legendre(m: int) -> QuadRule:
    """``m``-point Gauss-Legendre rule on [-1, 1].

    Newton iteration on ``P_m`` from the Chebyshev guesses
    ``cos(pi (i + 3/4) / (m + 1/2))``. Cached per order; the cached arrays are
    read-only so sharing them between threads is safe.
    """
    if m < 1:
        raise ValueError("quadrature order must be >= 1")
    i = np.arange(m)
    x = np.cos(np.pi * (i + 0.75) / (m + 0.5))
    for _ in range(100):
        p0, p1 = np.ones_like(x), x.copy()
        for j in range(2, m + 1):
            p0, p1 = p1, ((2 * j - 1) * x * p1 - (j - 1) * p0) / j
        dp = m * (x * p1 - p0) / (x * x - 1.0)
        dx = p1 / dp
        x = x - dx
        if np.max(np.abs(dx)) < 1e-15:
            break
    else:
        raise ConvergenceError(f"Gauss-Legendre Newton did not converge for m={m}")
    p0, p1 = np.ones_like(x), x.copy()
    for j in range(2, m + 1):
        p0, p1 = p1, ((2 * j - 1) * x * p1 - (j - 1) * p0) / j
    dp = m * (x * p1 - p0) / (x * x - 1.0)
    w = 2.0 / ((1.0 - x * x) * dp * dp)
    order = np.argsort(x)
    nodes, weights = x[order], w[order]
    # symmetrise: roots of P_m come in +/- pairs
    nodes = 0.5 * (nodes - nodes[::-1])
    weights = 0.5 * (weights + weights[::-1])
    nodes.setflags(write=False)
    weights.setflags(write=False)
    return QuadRule(nodes, weights, m)


def jacobi_recurrence(weight: WeightId, k: int) -> tuple[np.ndarray, np.ndarray]:
    """Closed-form orthonormal Jacobi coefficients ``a_0..a_{k-1}``, ``b_1..b_k``."""
    al, be = weight.alpha, weight.beta
    s = al + be
    a = np.empty(k)
    b = np.empty(k)
    for n in range(k):
        if n == 0:
            a[n] = (be - al) / (s + 2.0)
        else:
            a[n] = (be * be - al * al) / ((2 * n + s) * (2 * n + s + 2.0))
    for j in range(k):
        n = j + 1
        t = 2 * n + s
        num = 4.0 * n * (n + al) * (n + be) * (n + s)
        den = t * t * (t + 1.0) * (t - 1.0)
        b[j] = math.sqrt(num / den)
    return a, b


def stieltjes_recurrence(weight: WeightId, k: int) -> tuple[np.ndarray, np.ndarray]:
    """Recurrence coefficients by the Stieltjes procedure.

    Inner products are taken with a Gauss-Legendre rule of ``k + 3`` points,
    which is exact for every ``w p_l^2 x`` with ``l <= k``.
    """
    rule = gauss_legendre(k + 3)
    x = rule.nodes
    dw = rule.weights * evaluate_weight(weight, x)
    a = np.empty(k)
    b = np.empty(k)
    p_prev = np.zeros_like(x)
    p = np.full_like(x, 1.0 / math.sqrt(np.sum(dw)))
    b_l = 0.0
    for l in range(k):
        a[l] = np.sum(dw * x * p * p)
        r = (x - a[l]) * p - b_l * p_prev
        b_l = math.sqrt(np.sum(dw * r * r))
        b[l] = b_l
        p_prev, p = p, r / b_l
    return a, b


@dataclass(frozen=True, eq=False)
class OrthoBasis:
    """Recurrence data for the orthonormal members ``p_0 .. p_k``."""

    weight: WeightId
    max_degree: int
    a: np.ndarray
    b: np.ndarray
    mu0: float
    gamma: np.ndarray  # monomial leading coefficients gamma_0..gamma_k

    def evaluate(self, x: ArrayLike) -> np.ndarray:
        return eval_basis(self, x)


@functools.lru_cache(maxsize=256)
def build_basis(weight: WeightId, k: int) -> OrthoBasis:
    """Build ``p_0..p_k`` for ``weight``.

    The closed-form Jacobi coefficients are checked against a Stieltjes
    construction from the weight itself; a mismatch above 1e-10 raises.
    """
    if not isinstance(k, (int, np.integer)) or k < 0:
        raise ValueError(f"max degree must be a non-negative integer, got {k!r}")
    k = int(k)
    a, b = jacobi_recurrence(weight, k)
    a_s, b_s = stieltjes_recurrence(weight, k)
    if k and max(np.max(np.abs(a - a_s)), np.max(np.abs(b - b_s))) > AGREEMENT_TOL:
        raise ArithmeticError(f"recurrence routes disagree for {weight.name}, k={k}")
    mu0 = weight_mass(weight)
    gamma = np.empty(k + 1)
    gamma[0] = 1.0 / math.sqrt(mu0)
    for l in range(k):
        gamma[l + 1] = gamma[l] / b[l]
    for arr in (a, b, gamma):
        arr.setflags(write=False)
    return OrthoBasis(weight, k, a, b, mu0, gamma)


def eval_basis(basis: OrthoBasis, x: ArrayLike) -> np.ndarray:
    """Values ``p_0(x) .. p_k(x)`` stacked along the first axis."""
    _check_domain(x)
    x = np.asarray(x, dtype=float)
    out = np.empty((basis.max_degree + 1,) + x.shape)
    out[0] = 1.0 / math.sqrt(basis.mu0)
    prev = np.zeros_like(x)
    b_l = 0.0
    for l in range(basis.max_degree):
        nxt = ((x - basis.a[l]) * out[l] - b_l * prev) / basis.b[l]
        prev = out[l]
        out[l + 1] = nxt
        b_l = basis.b[l]
    return out


def basis_poly(basis: OrthoBasis, l: int) -> ChebPoly:
    """Chebyshev coefficients of ``p_l``."""
    if not 0 <= l <= basis.max_degree:
        raise ValueError(f"index {l} outside 0..{basis.max_degree}")
    return basis_polys(basis)[l]


def basis_polys(basis: OrthoBasis) -> list[ChebPoly]:
    """All members ``p_0 .. p_k`` as Chebyshev series."""
    k = basis.max_degree
    coeffs = np.zeros((k + 1, k + 1))
    coeffs[0, 0] = 1.0 / math.sqrt(basis.mu0)
    for l in range(k):
        cur = coeffs[l]
        # x * sum c_j T_j
        xc = np.zeros(k + 1)
        xc[1] += cur[0]
        xc[0] += 0.5 * cur[1]
        xc[2:] += 0.5 * cur[1:k]
        xc[1:k] += 0.5 * cur[2 : k + 1]
        nxt = xc - basis.a[l] * cur
        if l > 0:
            nxt -= basis.b[l - 1] * coeffs[l - 1]
        coeffs[l + 1] = nxt / basis.b[l]
    return [ChebPoly(coeffs[l, : l + 1]) for l in range(k + 1)]
