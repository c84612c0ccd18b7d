"""Dense polynomials on [-1, 1] stored in the Chebyshev (first kind) basis.

Arithmetic is delegated to :mod:`numpy.polynomial.chebyshev`; this module adds
coefficient trimming, domain checks, division by a linear factor and a
sup-norm search that the rest of the package relies on.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Union

import numpy as np
from numpy.polynomial import chebyshev as C

ArrayLike = Union[float, np.ndarray]

TRIM_RTOL = 1e-14
DOMAIN_SLACK = 1e-12

_GOLDEN = (math.sqrt(5.0) - 1.0) / 2.0


class DomainError(ValueError):
    """Raised when a point lies outside [-1, 1]."""


def _check_domain(x: ArrayLike) -> None:
    if np.any(np.abs(x) > 1.0 + DOMAIN_SLACK):
        raise DomainError(f"evaluation point outside [-1, 1]: {x!r}")


def trim(coeffs: Iterable[float], rtol: float = TRIM_RTOL) -> np.ndarray:
    """Drop trailing coefficients smaller than ``rtol * max|c|``."""
    c = np.array(coeffs, dtype=float).ravel()
    if c.size == 0:
        return np.zeros(1)
    scale = np.max(np.abs(c))
    if scale == 0.0:
        return np.zeros(1)
    keep = np.nonzero(np.abs(c) > rtol * scale)[0]
    return c[: keep[-1] + 1].copy()


@dataclass(frozen=True, eq=False)
class ChebPoly:
    """Polynomial ``sum_j coeffs[j] * T_j(x)`` on [-1, 1].

    Instances are immutable; the coefficient array is made read-only.
    """

    coeffs: np.ndarray

    def __post_init__(self) -> None:
        c = trim(self.coeffs)
        c.setflags(write=False)
        object.__setattr__(self, "coeffs", c)

    @classmethod
    def constant(cls, value: float) -> "ChebPoly":
        return cls(np.array([float(value)]))

    @classmethod
    def basis(cls, j: int) -> "ChebPoly":
        """The Chebyshev polynomial ``T_j``."""
        c = np.zeros(j + 1)
        c[j] = 1.0
        return cls(c)

    @classmethod
    def identity(cls) -> "ChebPoly":
        return cls(np.array([0.0, 1.0]))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def is_zero(self) -> bool:
        return self.degree == 0 and self.coeffs[0] == 0.0

    def leading_coefficient(self) -> float:
        """Leading coefficient in the monomial basis (``2**(d-1) * c_d``)."""
        d = self.degree
        if d == 0:
            return float(self.coeffs[0])
        return float(self.coeffs[d] * 2.0 ** (d - 1))

    def __call__(self, x: ArrayLike) -> ArrayLike:
        return eval_poly(self, x)

    def __add__(self, other: "ChebPoly | float") -> "ChebPoly":
        if not isinstance(other, ChebPoly):
            other = ChebPoly.constant(other)
        return ChebPoly(C.chebadd(self.coeffs, other.coeffs))

    __radd__ = __add__

    def __sub__(self, other: "ChebPoly | float") -> "ChebPoly":
        if not isinstance(other, ChebPoly):
            other = ChebPoly.constant(other)
        return ChebPoly(C.chebsub(self.coeffs, other.coeffs))

    def __neg__(self) -> "ChebPoly":
        return ChebPoly(-self.coeffs)

    def __mul__(self, other: "ChebPoly | float") -> "ChebPoly":
        if isinstance(other, ChebPoly):
            return mul(self, other)
        return ChebPoly(self.coeffs * float(other))

    __rmul__ = __mul__

    def __repr__(self) -> str:
        return f"ChebPoly({np.array2string(self.coeffs, precision=6)})"


def eval_poly(p: ChebPoly, x: ArrayLike) -> ArrayLike:
    """Clenshaw evaluation of ``p`` at ``x`` (scalar or array) in [-1, 1]."""
    _check_domain(x)
    y = C.chebval(x, p.coeffs)
    if np.ndim(y) == 0:
        return float(y)
    return y


def mul(p: ChebPoly, q: ChebPoly) -> ChebPoly:
    return ChebPoly(C.chebmul(p.coeffs, q.coeffs))


def derivative(p: ChebPoly) -> ChebPoly:
    if p.degree == 0:
        return ChebPoly(np.zeros(1))
    return ChebPoly(C.chebder(p.coeffs))


def antiderivative(p: ChebPoly, lower: float = -1.0) -> ChebPoly:
    """Return ``Q`` with ``Q' = p`` and ``Q(lower) = 0``."""
    _check_domain(lower)
    return ChebPoly(C.chebint(p.coeffs, lbnd=lower))


def definite_integral(p: ChebPoly) -> float:
    """Integral of ``p`` over [-1, 1]; odd-index terms vanish."""
    total = 0.0
    for j in range(0, len(p.coeffs), 2):
        total += p.coeffs[j] * 2.0 / (1.0 - j * j)
    return float(total)


def divide_linear(p: ChebPoly, x0: float) -> tuple[ChebPoly, float]:
    """Synthetic division ``p(x) = (x - x0) q(x) + r``.

    Runs the Chebyshev analogue of Horner's scheme from the top coefficient
    down, using ``x T_0 = T_1`` and ``x T_j = (T_{j+1} + T_{j-1}) / 2``.
    The remainder equals ``p(x0)``.
    """
    n = p.coeffs
    m = len(n) - 1
    if m == 0:
        return ChebPoly(np.zeros(1)), float(n[0])
    q = np.zeros(m + 2)  # q[m], q[m+1] stay zero as padding
    for i in range(m, 0, -1):
        rhs = n[i] - 0.5 * q[i + 1] + x0 * q[i]
        q[i - 1] = rhs if i == 1 else 2.0 * rhs
    remainder = n[0] - (0.5 * q[1] - x0 * q[0])
    return ChebPoly(q[:m]), float(remainder)


def chebyshev_lobatto(count: int) -> np.ndarray:
    """``count`` Chebyshev extreme points on [-1, 1] in ascending order.

    The sine form keeps the grid exactly symmetric and hits 0 for odd counts.
    """
    if count < 2:
        raise ValueError("need at least two points")
    m = count - 1
    j = np.arange(count)
    return np.sin(np.pi * (2 * j - m) / (2 * m))


def _golden_max(f, a: float, b: float, tol: float = 1e-12) -> tuple[float, float]:
    c = b - _GOLDEN * (b - a)
    d = a + _GOLDEN * (b - a)
    fc, fd = f(c), f(d)
    while b - a > tol:
        if fc >= fd:
            b, d, fd = d, c, fc
            c = b - _GOLDEN * (b - a)
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            d = a + _GOLDEN * (b - a)
            fd = f(d)
    x = 0.5 * (a + b)
    return x, f(x)


def sup_norm(p: ChebPoly) -> float:
    """Max of ``|p|`` on [-1, 1].

    Scans ``max(64, 8 deg)`` Chebyshev points plus endpoints, then polishes each
    interior local maximiser with at most five Newton steps on ``p'``; a step
    that leaves the bracketing cell falls back to golden-section search.
    """
    if p.degree == 0:
        return abs(float(p.coeffs[0]))
    grid = chebyshev_lobatto(max(64, 8 * p.degree))
    vals = np.abs(C.chebval(grid, p.coeffs))
    best = float(max(vals[0], vals[-1]))
    dp = C.chebder(p.coeffs)
    ddp = C.chebder(dp) if len(dp) > 1 else np.zeros(1)
    interior = np.nonzero((vals[1:-1] >= vals[:-2]) & (vals[1:-1] >= vals[2:]))[0] + 1
    for i in interior:
        lo, hi = grid[i - 1], grid[i + 1]
        x = grid[i]
        ok = True
        for _ in range(5):
            h = C.chebval(x, ddp)
            if h == 0.0:
                ok = False
                break
            step = C.chebval(x, dp) / h
            x_new = x - step
            if not lo <= x_new <= hi:
                ok = False
                break
            x = x_new
            if abs(step) < 1e-15:
                break
        if ok:
            value = abs(C.chebval(x, p.coeffs))
        else:
            _, value = _golden_max(lambda t: abs(C.chebval(t, p.coeffs)), lo, hi)
        best = max(best, float(value), float(vals[i]))
    return best
