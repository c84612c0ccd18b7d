"""Independent LP check of the pointwise constant.

The quantity ``max D(x0) / int D`` over densities ``D >= 0`` of degree
``n - 1`` is bounded from above by relaxing ``D >= 0`` on [-1, 1] to
``D >= 0`` on a finite grid, and from below by evaluating the kernel-square
extremal density. The LP solver is a dense two-phase simplex.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Optional

import numpy as np
from numpy.polynomial import chebyshev as C

from .bounds import pointwise_bound, split_degree
from .extremal import extremal_density
from .polycore import chebyshev_lobatto, definite_integral

FEAS_TOL = 1e-9
PIVOT_TOL = 1e-11
GAP_TARGET = 1e-3
GRID_CAP = 2**16


class LPStatus(enum.Enum):
    OPTIMAL = "optimal"
    UNBOUNDED = "unbounded"
    INFEASIBLE = "infeasible"


class SolverError(RuntimeError):
    pass


class GridTooCoarse(RuntimeError):
    """The grid relaxation is unbounded; refine the grid and retry."""


class VerificationFailure(AssertionError):
    pass


@dataclass
class LPProblem:
    """maximize ``c @ v`` s.t. ``A_eq v = b_eq`` and ``A_ge v >= b_ge``; ``v`` free."""

    objective: np.ndarray
    a_eq: np.ndarray
    b_eq: np.ndarray
    a_ge: np.ndarray
    b_ge: np.ndarray

    def __post_init__(self) -> None:
        self.objective = np.asarray(self.objective, dtype=float).ravel()
        nv = self.objective.size
        self.a_eq = np.asarray(self.a_eq, dtype=float).reshape(-1, nv)
        self.b_eq = np.asarray(self.b_eq, dtype=float).ravel()
        self.a_ge = np.asarray(self.a_ge, dtype=float).reshape(-1, nv)
        self.b_ge = np.asarray(self.b_ge, dtype=float).ravel()
        if len(self.b_eq) != len(self.a_eq) or len(self.b_ge) != len(self.a_ge):
            raise ValueError("constraint rows and right-hand sides differ in length")
        for arr in (self.objective, self.a_eq, self.b_eq, self.a_ge, self.b_ge):
            if not np.all(np.isfinite(arr)):
                raise ValueError("LP data must be finite")


@dataclass
class LPResult:
    status: LPStatus
    value: Optional[float] = None
    v: Optional[np.ndarray] = None
    iterations: int = 0


def _pivot(tab: np.ndarray, i: int, j: int) -> None:
    row = tab[i] / tab[i, j]
    tab -= np.outer(tab[:, j], row)
    tab[i] = row


def _simplex_standard(
    cost: np.ndarray, m: np.ndarray, rhs: np.ndarray, max_iter: int
) -> tuple[LPStatus, Optional[np.ndarray], Optional[list[int]], np.ndarray, int]:
    """Two-phase tableau simplex for ``min cost @ z, m z = rhs, z >= 0``.

    Entering column: most negative reduced cost, lowest index on ties; after a
    run of degenerate pivots the rule switches to Bland's (lowest index) to
    rule out cycling. Leaving row: minimum ratio, lowest basis index on ties.
    Returns status, basis, kept rows and iteration count.
    """
    rows, cols = m.shape
    sign = np.where(rhs < 0, -1.0, 1.0)
    m = m * sign[:, None]
    rhs = rhs * sign
    # phase 1 tableau: [m | I | rhs]
    tab = np.zeros((rows + 1, cols + rows + 1))
    tab[:rows, :cols] = m
    tab[:rows, cols : cols + rows] = np.eye(rows)
    tab[:rows, -1] = rhs
    basis = list(range(cols, cols + rows))
    total = 0

    def run(obj_row: int, allowed: int) -> tuple[bool, int]:
        nonlocal total
        degenerate = 0
        for it in range(max_iter):
            red = tab[obj_row, :allowed]
            if degenerate > 50:
                cand = np.nonzero(red < -PIVOT_TOL)[0]
                if cand.size == 0:
                    return True, it
                j = int(cand[0])
            else:
                j = int(np.argmin(red))
                if red[j] >= -PIVOT_TOL:
                    return True, it
            col = tab[:rows, j]
            pos = col > PIVOT_TOL
            if not np.any(pos):
                return False, it
            ratios = np.full(rows, np.inf)
            ratios[pos] = tab[:rows, -1][pos] / col[pos]
            rmin = ratios.min()
            ties = np.nonzero(ratios <= rmin + 1e-12 * max(1.0, abs(rmin)))[0]
            i = int(min(ties, key=lambda r: basis[r]))
            degenerate = degenerate + 1 if rmin <= 1e-12 else 0
            _pivot(tab, i, j)
            basis[i] = j
            total += 1
        raise SolverError(f"simplex did not terminate within {max_iter} pivots")

    # phase 1 objective: minimise the sum of artificials
    tab[rows, :cols] = -m.sum(axis=0)
    tab[rows, -1] = -rhs.sum()
    run(rows, cols)
    if -tab[rows, -1] > FEAS_TOL * max(1.0, float(np.abs(rhs).max(initial=0.0))):
        return LPStatus.INFEASIBLE, None, None, tab, total

    # drive remaining artificials out; rows where that is impossible are redundant
    keep = list(range(rows))
    for i in range(rows):
        if basis[i] >= cols:
            nz = np.nonzero(np.abs(tab[i, :cols]) > 1e-9)[0]
            if nz.size:
                j = int(nz[0])
                _pivot(tab, i, j)
                basis[i] = j
            else:
                keep.remove(i)
    tab = np.vstack([tab[keep], np.zeros(tab.shape[1])])
    basis = [basis[i] for i in keep]
    rows = len(keep)
    tab = np.delete(tab, np.s_[cols : cols + m.shape[0]], axis=1)

    # phase 2 objective row: reduced costs of the original problem
    tab[rows, :cols] = cost
    tab[rows, -1] = 0.0
    for i, j in enumerate(basis):
        tab[rows] -= cost[j] * tab[i]
    ok, _ = run(rows, cols)
    if not ok:
        return LPStatus.UNBOUNDED, None, None, tab, total
    return LPStatus.OPTIMAL, np.array(basis), keep, tab, total


def solve_lp(problem: LPProblem, max_iter: int = 20000) -> LPResult:
    """Solve ``problem`` through its dual.

    The dual ``min b_eq@y - b_ge@lam`` s.t. ``A_eq^T y - A_ge^T lam = c``,
    ``lam >= 0`` has one row per primal variable, which keeps the tableau
    small when there are thousands of grid constraints. The primal optimiser
    is recovered as the simplex multipliers of the final dual basis.
    """
    c = problem.objective
    a_eq, b_eq, a_ge, b_ge = problem.a_eq, problem.b_eq, problem.a_ge, problem.b_ge
    # y = y_plus - y_minus
    m = np.hstack([a_eq.T, -a_eq.T, -a_ge.T])
    cost = np.concatenate([b_eq, -b_eq, -b_ge])
    status, basis, keep, _, iters = _simplex_standard(cost, m, c.copy(), max_iter)
    if status is LPStatus.INFEASIBLE:
        # dual infeasible: primal is unbounded if feasible at all
        fstatus, *_ = _simplex_standard(cost, m, np.zeros_like(c), max_iter)
        if fstatus is LPStatus.UNBOUNDED:
            return LPResult(LPStatus.INFEASIBLE, iterations=iters)
        return LPResult(LPStatus.UNBOUNDED, iterations=iters)
    if status is LPStatus.UNBOUNDED:
        return LPResult(LPStatus.INFEASIBLE, iterations=iters)
    # multipliers pi solve B^T pi = cost_B on the kept rows
    bmat = m[np.ix_(keep, basis)]
    pi_kept = np.linalg.solve(bmat.T, cost[basis])
    v = np.zeros(len(c))
    v[keep] = pi_kept
    return LPResult(LPStatus.OPTIMAL, float(c @ v), v, iters)


def lp_residual(problem: LPProblem, v: np.ndarray) -> float:
    """Largest violation of the constraints of ``problem`` at ``v``."""
    res = 0.0
    if len(problem.b_eq):
        res = max(res, float(np.max(np.abs(problem.a_eq @ v - problem.b_eq))))
    if len(problem.b_ge):
        res = max(res, float(np.max(problem.b_ge - problem.a_ge @ v)))
    return res


def oracle_grid(grid_size: int, x0: float) -> np.ndarray:
    """Chebyshev extreme points ``cos(pi j / grid_size)`` plus ``x0``, ascending.

    Doubling ``grid_size`` nests the grids, so the relaxations tighten
    monotonically.
    """
    pts = chebyshev_lobatto(grid_size + 1)
    if not np.any(pts == x0):
        pts = np.sort(np.append(pts, x0))
    return pts


def density_problem(n: int, x0: float, grid_size: int, mass: float = 1.0) -> LPProblem:
    """LP over the Chebyshev coefficients of a degree ``n-1`` density."""
    d = n  # coefficient count
    eye = np.eye(d)
    objective = C.chebval(x0, eye)
    integrals = np.array([definite_integral_basis(j) for j in range(d)])
    grid = oracle_grid(grid_size, x0)
    a_ge = C.chebvander(grid, d - 1)
    return LPProblem(objective, integrals[None, :], [mass], a_ge, np.zeros(len(grid)))


def definite_integral_basis(j: int) -> float:
    return 0.0 if j % 2 else 2.0 / (1.0 - j * j)


def grid_upper_bound(n: int, x0: float, grid_size: int, mass: float = 1.0) -> float:
    """LP value of the grid relaxation; an upper bound on ``max D(x0)/int D``."""
    split_degree(n)
    if abs(x0) > 1.0:
        raise ValueError(f"x0 must lie in [-1, 1], got {x0}")
    if grid_size < 4 * n + 16:
        raise ValueError(f"grid_size must be >= 4n + 16 = {4 * n + 16}")
    result = solve_lp(density_problem(n, x0, grid_size, mass))
    if result.status is LPStatus.UNBOUNDED:
        raise GridTooCoarse(f"relaxation unbounded at grid_size={grid_size}")
    if result.status is LPStatus.INFEASIBLE:
        raise SolverError("density LP reported infeasible")
    return result.value


@dataclass(frozen=True)
class SandwichResult:
    n: int
    x0: float
    theory: float
    lower: float
    upper: float
    grid_size: int
    gap: float
    conclusive: bool = field(default=True)


def sandwich(n: int, x0: float, gap_target: float = GAP_TARGET) -> SandwichResult:
    """Bracket ``bound(n, x0) / 2`` between the extremal density and the LP.

    Raises :class:`VerificationFailure` when theory falls outside the bracket
    by more than 1e-9. A grid cap reached with the gap still open is reported
    as inconclusive.
    """
    split_degree(n)
    theory = pointwise_bound(n, x0).bound / 2.0
    _, density = extremal_density(n, x0)
    lower = float(density(x0)) / definite_integral(density)
    grid = max(64, 4 * n + 16)
    while True:
        try:
            upper = grid_upper_bound(n, x0, grid)
        except GridTooCoarse:
            if grid >= GRID_CAP:
                raise
            grid *= 2
            continue
        if upper - lower < gap_target or grid >= GRID_CAP:
            break
        grid *= 2
    if lower > theory + FEAS_TOL or theory > upper + FEAS_TOL:
        raise VerificationFailure(
            f"n={n}, x0={x0}: theory {theory!r} outside [{lower!r}, {upper!r}]"
        )
    gap = upper - lower
    return SandwichResult(int(n), float(x0), theory, lower, upper, grid, gap, gap < gap_target)
