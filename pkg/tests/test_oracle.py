import numpy as np
import pytest
from scipy.optimize import linprog

from monomarkov.bounds import pointwise_bound
from monomarkov.extremal import extremal_density
from monomarkov.oracle import (
    LPProblem,
    LPStatus,
    SandwichResult,
    density_problem,
    grid_upper_bound,
    lp_residual,
    oracle_grid,
    sandwich,
    solve_lp,
)
from monomarkov.polycore import definite_integral


def lp(objective, a_eq=(), b_eq=(), a_ge=(), b_ge=()):
    return LPProblem(np.asarray(objective, float), a_eq, b_eq, a_ge, b_ge)


def scipy_value(problem):
    """Optimum from HiGHS, or the status string on failure."""
    nv = problem.objective.size
    res = linprog(
        -problem.objective,
        A_ub=-problem.a_ge if len(problem.b_ge) else None,
        b_ub=-problem.b_ge if len(problem.b_ge) else None,
        A_eq=problem.a_eq if len(problem.b_eq) else None,
        b_eq=problem.b_eq if len(problem.b_eq) else None,
        bounds=[(None, None)] * nv,
        method="highs",
    )
    if res.status == 2:
        return "infeasible"
    if res.status == 3:
        return "unbounded"
    return -res.fun


def test_solve_lp_examples():
    r = solve_lp(lp([1.0], a_ge=[[-1.0], [1.0]], b_ge=[-3.0, 0.0]))
    assert r.status is LPStatus.OPTIMAL and r.value == pytest.approx(3.0, abs=1e-12)
    r = solve_lp(lp([1.0, 1.0], [[1.0, 1.0]], [1.0], [[1, 0], [0, 1]], [0, 0]))
    assert r.status is LPStatus.OPTIMAL and r.value == pytest.approx(1.0, abs=1e-12)
    assert solve_lp(lp([1.0], a_ge=[[1.0]], b_ge=[0.0])).status is LPStatus.UNBOUNDED
    infeasible = lp([1.0], a_ge=[[1.0], [-1.0]], b_ge=[1.0, 0.0])
    assert solve_lp(infeasible).status is LPStatus.INFEASIBLE


def test_lp_problem_validation():
    with pytest.raises(ValueError):
        lp([1.0], a_ge=[[1.0]], b_ge=[np.inf])
    with pytest.raises(ValueError):
        lp([1.0, 2.0], a_ge=[[1.0, 0.0]], b_ge=[0.0, 1.0])


@pytest.mark.parametrize("seed", range(25))
def test_random_lps_match_highs(seed):
    rng = np.random.default_rng(seed)
    nv = int(rng.integers(2, 7))
    m_ge = int(rng.integers(nv + 1, 4 * nv))
    m_eq = int(rng.integers(0, 3))
    # bounded box plus random cuts through a known feasible point
    x_feas = rng.uniform(-1, 1, nv)
    a_ge = np.vstack([np.eye(nv), -np.eye(nv), rng.standard_normal((m_ge, nv))])
    b_ge = np.concatenate([-5 * np.ones(nv), -5 * np.ones(nv), np.zeros(m_ge)])
    b_ge[2 * nv:] = a_ge[2 * nv:] @ x_feas - rng.uniform(0, 1, m_ge)
    a_eq = rng.standard_normal((m_eq, nv))
    b_eq = a_eq @ x_feas
    problem = lp(rng.standard_normal(nv), a_eq, b_eq, a_ge, b_ge)
    r = solve_lp(problem)
    ref = scipy_value(problem)
    assert r.status is LPStatus.OPTIMAL
    assert r.value == pytest.approx(ref, rel=1e-9, abs=1e-9)
    assert lp_residual(problem, r.v) <= 1e-9


def test_solve_lp_deterministic():
    problem = density_problem(6, 0.3, 64)
    a, b = solve_lp(problem), solve_lp(problem)
    assert a.value == b.value and np.array_equal(a.v, b.v)


def test_density_lp_matches_highs():
    for n, x0 in ((2, 0.0), (5, 0.4), (8, -0.9)):
        problem = density_problem(n, x0, 128)
        r = solve_lp(problem)
        assert r.value == pytest.approx(scipy_value(problem), rel=1e-8)
        assert lp_residual(problem, r.v) <= 1e-9


def test_oracle_grid_contains_anchor_points():
    g = oracle_grid(64, 0.123)
    assert g[0] == -1.0 and g[-1] == 1.0 and 0.123 in g
    assert np.all(np.diff(g) > 0)
    assert len(oracle_grid(64, 0.0)) == 65
    assert set(oracle_grid(64, 0.5)) <= set(oracle_grid(128, 0.5))


def test_grid_upper_bound_examples():
    v = grid_upper_bound(2, 0.0, 64)
    assert 0.5 <= v <= 0.6
    for x0 in (-1.0, -0.3, 0.8):
        assert grid_upper_bound(1, x0, 64) == pytest.approx(0.5, abs=1e-12)
    v = grid_upper_bound(3, 0.0, 256)
    assert 0.75 - 1e-9 <= v <= 0.75 + 5e-3


def test_grid_upper_bound_rejects_coarse_grid():
    with pytest.raises(ValueError):
        grid_upper_bound(5, 0.0, 35)
    with pytest.raises(ValueError):
        grid_upper_bound(2, 1.5, 64)


@pytest.mark.parametrize("n,x0", [(3, 0.2), (6, -0.5), (8, 0.9)])
def test_relaxation_tightens_under_doubling(n, x0):
    grids = [64, 128, 256, 512]
    values = [grid_upper_bound(n, x0, g) for g in grids]
    assert all(b <= a + 1e-12 for a, b in zip(values, values[1:]))
    assert values[-1] >= pointwise_bound(n, x0).bound / 2 - 1e-9


def test_scale_invariance():
    base = grid_upper_bound(5, 0.35, 128)
    assert grid_upper_bound(5, 0.35, 128, mass=7.0) == pytest.approx(7 * base, rel=1e-10)


@pytest.mark.parametrize("n", range(1, 9))
@pytest.mark.parametrize("x0", [-0.9, 0.0, 0.5])
def test_extremal_density_feasible(n, x0):
    _, d = extremal_density(n, x0)
    d = d * (1.0 / definite_integral(d))
    t = np.linspace(-1, 1, 4096)
    assert np.min(d(t)) >= -1e-11
    assert abs(definite_integral(d) - 1.0) <= 1e-12


def test_sandwich_examples():
    s = sandwich(2, 0.0)
    assert isinstance(s, SandwichResult)
    assert s.theory == pytest.approx(0.5) and s.lower == pytest.approx(0.5, abs=1e-14)
    assert s.upper <= 0.505
    s = sandwich(3, 0.0)
    assert s.theory == pytest.approx(0.75) and s.gap < 1e-3 and s.conclusive
    s = sandwich(4, 1.0)
    assert s.theory == pytest.approx(3.0, rel=1e-12)
    assert s.lower <= s.theory + 1e-9 and s.theory <= s.upper + 1e-9


@pytest.mark.parametrize("n", range(1, 9))
@pytest.mark.parametrize("x0", [-0.9, -0.5, 0.0, 0.5, 0.9])
def test_sandwich_closes(n, x0):
    s = sandwich(n, x0)
    assert s.lower <= s.theory + 1e-9
    assert s.theory <= s.upper + 1e-9
    assert s.gap >= -1e-9 and s.gap < 1e-3
