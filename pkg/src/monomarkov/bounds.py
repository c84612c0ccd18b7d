"""Sharp derivative bounds for monotone polynomials.

For ``P`` monotone of degree ``n`` and ``x0`` in [-1, 1]:

    n = 2k+2:  |P'(x0)| <= 2 max(S_k(x0), S_k(-x0)) ||P||
    n = 2k+1:  |P'(x0)| <= 2 max(F_k(x0), H_k(x0))  ||P||

The uniform (Markov) and weighted (Bernstein) constants are sups of these
pointwise constants, found numerically on a Chebyshev grid with golden-section
polishing.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from .kernels import kernel_F, kernel_H, kernel_S
from .orthobasis import WeightId
from .polycore import _golden_max, chebyshev_lobatto

SUP_GRID = 2001
SUP_XTOL = 1e-10
# refine every grid-local maximum within this fraction of the best grid value
REFINE_FRACTION = 0.99
TIE_RTOL = 1e-13


@dataclass(frozen=True)
class BoundReport:
    n: int
    x0: float
    k: int
    parity: str  # "even" (n = 2k+2) or "odd" (n = 2k+1)
    branch_a: float  # S_k(x0) or F_k(x0)
    branch_b: float  # S_k(-x0) or H_k(x0)
    winner: str  # "S+", "S-", "F", "H" or "tie"
    bound: float

    @property
    def winning_weight(self) -> WeightId:
        """Weight of the extremal density (ties resolve to branch a)."""
        if self.parity == "even":
            return WeightId.MINUS if self.winner == "S-" else WeightId.PLUS
        return WeightId.BRIDGE if self.winner == "H" else WeightId.LEGENDRE

    @property
    def weight_k(self) -> int:
        """Highest orthonormal index entering the winning kernel."""
        return self.k - 1 if self.winning_weight is WeightId.BRIDGE else self.k


def split_degree(n: int) -> tuple[int, str]:
    if not isinstance(n, (int, np.integer)) or n < 1:
        raise ValueError(f"degree must be an integer >= 1, got {n!r}")
    n = int(n)
    if n % 2 == 0:
        return (n - 2) // 2, "even"
    return (n - 1) // 2, "odd"


def branch_values(n: int, x):
    """Both kernel branches at ``x`` (scalar or array)."""
    k, parity = split_degree(n)
    x = np.asarray(x, dtype=float)
    if parity == "even":
        return kernel_S(k, x), kernel_S(k, -x)
    return kernel_F(k, x), kernel_H(k, x)


def bound_function(n: int) -> Callable:
    """Vectorised ``x0 -> 2 max(branch_a, branch_b)``."""

    def f(x):
        a, b = branch_values(n, x)
        return 2.0 * np.maximum(a, b)

    return f


def pointwise_bound(n: int, x0: float) -> BoundReport:
    if abs(x0) > 1.0:
        raise ValueError(f"x0 must lie in [-1, 1], got {x0}")
    k, parity = split_degree(n)
    a, b = (float(v) for v in branch_values(n, float(x0)))
    winner = classify_winner(parity, a, b)
    return BoundReport(int(n), float(x0), k, parity, a, b, winner, 2.0 * max(a, b))


def classify_winner(parity: str, a: float, b: float) -> str:
    """Branch tag for the larger of ``a`` and ``b``; near-equal values tie."""
    if math.isclose(a, b, rel_tol=TIE_RTOL, abs_tol=1e-300):
        return "tie"
    if parity == "even":
        return "S+" if a > b else "S-"
    return "F" if a > b else "H"


def grid_sup(
    f: Callable, grid: np.ndarray | None = None, xtol: float = SUP_XTOL
) -> tuple[float, float]:
    """Sup of a vectorised ``f`` on [-1, 1]: returns ``(argmax, value)``.

    Every grid-local maximum whose value is within 1% of the best grid value is
    polished by golden-section search on its two neighbouring cells. Reductions
    run sequentially in grid order, so results do not depend on scheduling.
    """
    if grid is None:
        grid = chebyshev_lobatto(SUP_GRID)
    vals = np.asarray(f(grid), dtype=float)
    i_best = int(np.argmax(vals))
    best_x, best_v = float(grid[i_best]), float(vals[i_best])
    top = vals[i_best]
    m = len(grid)
    for i in range(m):
        if vals[i] < REFINE_FRACTION * top:
            continue
        left = vals[i - 1] if i > 0 else -np.inf
        right = vals[i + 1] if i < m - 1 else -np.inf
        if vals[i] < left or vals[i] < right:
            continue
        if i == 0 or i == m - 1:
            continue  # endpoint values are exact already
        x, v = _golden_max(lambda t: float(f(np.float64(t))), grid[i - 1], grid[i + 1], xtol)
        if v > best_v:
            best_x, best_v = x, v
    return best_x, best_v


def markov_maximizer(n: int) -> tuple[float, float]:
    """``(x0, value)`` maximising the pointwise bound over [-1, 1]."""
    split_degree(n)
    return grid_sup(bound_function(n))


def markov_constant(n: int) -> float:
    """``sup_{x0} pointwise_bound(n, x0)``, computed numerically."""
    return markov_maximizer(n)[1]


def bernstein_qazi(n: int) -> float:
    """Known sup of ``||P'|| / ||P||`` over monotone polynomials of degree ``n``."""
    split_degree(n)
    return (n + 1) ** 2 / 4.0 if n % 2 else n * (n + 2) / 4.0


def bernstein_constant(n: int) -> float:
    """Sharp constant ``C`` in ``sqrt(1-x^2) |P'(x)| <= C ||P||`` for monotone ``P``."""
    k, parity = split_degree(n)
    if parity == "even":
        _, v = grid_sup(lambda x: np.sqrt(1.0 - x * x) * kernel_S(k, x))
        return 2.0 * v
    _, vh = grid_sup(lambda x: np.sqrt(1.0 - x * x) * kernel_H(k, x))
    _, vf = grid_sup(lambda x: np.sqrt(1.0 - x * x) * kernel_F(k, x))
    return 2.0 * max(vh, vf)


def growth_profile(n_list: Sequence[int]) -> list[tuple[int, float]]:
    """``(n, bernstein_constant(n) / n)`` in input order."""
    return [(int(n), bernstein_constant(n) / n) for n in n_list]


@dataclass(frozen=True)
class ConstantRow:
    n: int
    markov_mono: float
    bernstein_qazi: float
    bernstein_mono: float
    classical_markov: float

    @property
    def ratio_bernstein_over_n(self) -> float:
        return self.bernstein_mono / self.n


def baselines(n: int) -> dict[str, float]:
    """Classical Markov constant ``n^2`` and the monotone closed form."""
    split_degree(n)
    return {"classical_markov": float(n * n), "bernstein_qazi": bernstein_qazi(n)}


def constant_row(n: int) -> ConstantRow:
    base = baselines(n)
    return ConstantRow(
        n=int(n),
        markov_mono=markov_constant(n),
        bernstein_qazi=base["bernstein_qazi"],
        bernstein_mono=bernstein_constant(n),
        classical_markov=base["classical_markov"],
    )


def constant_table(n_max: int) -> list[ConstantRow]:
    return [constant_row(n) for n in range(1, n_max + 1)]
