"""Aggregate numerical checks into one JSON-ready report."""

from __future__ import annotations

import math
from typing import Any, Optional

import numpy as np

from .bounds import bernstein_constant, bernstein_qazi, markov_constant
from .extremal import (
    CertificateError,
    build_pointwise_extremal,
    build_remark_family,
    expected_remark_ratio,
    random_monotone_corpus,
    sharpness_ratio,
)
from .kernels import cd_kernel, kernel_poly
from .oracle import VerificationFailure, sandwich
from .orthobasis import (
    WeightId,
    build_basis,
    eval_basis,
    evaluate_weight,
    gauss_legendre,
)
from .polycore import chebyshev_lobatto

DEFAULT_SEED = 0x4D304E30  # ASCII "M0N0"
SECTIONS = (
    "orthonormality",
    "cd_identity",
    "szego",
    "endpoint_laws",
    "markov_constants",
    "sandwiches",
    "sharpness",
    "remark_ratios",
    "growth",
)
SHARP_POINTS = (-0.95, -0.5, 0.0, 0.5, 0.95)
SANDWICH_POINTS = (-0.9, -0.5, 0.0, 0.5, 0.9)
ORACLE_MAX_N = 16


def entry(
    name: str,
    n: Optional[int],
    value: Optional[float],
    expected: Optional[float],
    tol: Optional[float],
    ok: bool,
    **extra: Any,
) -> dict[str, Any]:
    out = {
        "name": name,
        "n": n,
        "value": None if value is None or math.isnan(value) else float(value),
        "expected": None if expected is None else float(expected),
        "tol": tol,
        "pass": bool(ok),
    }
    out.update(extra)
    return out


def orthonormality_residual(weight: WeightId, k: int) -> float:
    rule = gauss_legendre(k + 3)
    vals = eval_basis(build_basis(weight, k), rule.nodes)
    gram = (vals * (rule.weights * evaluate_weight(weight, rule.nodes))) @ vals.T
    return float(np.max(np.abs(gram - np.eye(k + 1))))


def cd_disagreement(weight: WeightId, k: int, rng: np.random.Generator, pairs: int = 100) -> float:
    """Max of ``|quotient - sum| / sqrt(K(x,x) K(y,y))`` over random pairs."""
    basis = build_basis(weight, k + 1)
    x = rng.uniform(-1.0, 1.0, pairs)
    y = rng.uniform(-1.0, 1.0, pairs)
    far = np.abs(x - y) > 1e-3
    x, y = x[far], y[far]
    direct = cd_kernel(basis, k, x, y)
    quot = cd_kernel(basis, k, x, y, method="quotient")
    scale = np.sqrt(cd_kernel(basis, k, x, x) * cd_kernel(basis, k, y, y))
    return float(np.max(np.abs(quot - direct) / scale))


def reproducing_residual(weight: WeightId, k: int, x0: float) -> float:
    """Relative error of ``int w K(., x0)^2 = K(x0, x0)``."""
    basis = build_basis(weight, k)
    rule = gauss_legendre(k + 3)
    kern = kernel_poly(basis, k, x0)
    lhs = rule.integrate(evaluate_weight(weight, rule.nodes) * kern(rule.nodes) ** 2)
    rhs = cd_kernel(basis, k, x0, x0)
    return abs(lhs - rhs) / rhs


def szego_scan(l: int, grid_points: int = 2001) -> tuple[float, int, int]:
    """Max of ``(1+x) p_l(x)^2`` on a Chebyshev grid: value, argmax index, grid size."""
    grid = chebyshev_lobatto(grid_points)
    vals = (1.0 + grid) * eval_basis(build_basis(WeightId.PLUS, l), grid)[l] ** 2
    i = int(np.argmax(vals))
    return float(vals[i]), i, grid_points


def _orthonormality() -> list[dict]:
    out = []
    for w in WeightId:
        r = orthonormality_residual(w, 25)
        out.append(entry(w.name, 25, r, 0.0, 1e-12, r < 1e-12))
    return out


def _cd_identity(seed: int) -> list[dict]:
    rng = np.random.default_rng(seed)
    out = []
    for w in WeightId:
        for k in (0, 1, 5, 10, 20):
            d = cd_disagreement(w, k, rng)
            out.append(entry(f"quotient:{w.name}", k, d, 0.0, 1e-10, d < 1e-10))
            r = reproducing_residual(w, k, 0.3)
            out.append(entry(f"reproducing:{w.name}", k, r, 0.0, 1e-10, r < 1e-10))
    return out


def _szego() -> list[dict]:
    out = []
    for l in range(31):
        v, i, m = szego_scan(l)
        ok = v <= l + 1 + 1e-10 and abs(v - (l + 1)) <= 1e-8 and i == m - 1
        out.append(entry(f"l={l}", l, v, l + 1, 1e-8, ok, argmax_x=1.0 if i == m - 1 else None))
    return out


def _endpoint_laws() -> list[dict]:
    out = []
    plus = eval_basis(build_basis(WeightId.PLUS, 40), 1.0)
    minus = eval_basis(build_basis(WeightId.MINUS, 40), -1.0)
    leg = eval_basis(build_basis(WeightId.LEGENDRE, 40), 1.0)
    for l in range(41):
        e = math.sqrt((l + 1) / 2)
        out.append(entry("PLUS p_l(1)", l, plus[l], e, 1e-12, abs(plus[l] - e) < 1e-12))
        m = abs(minus[l])
        out.append(entry("MINUS |p_l(-1)|", l, m, e, 1e-12, abs(m - e) < 1e-12))
        sq = leg[l] ** 2
        e2 = (2 * l + 1) / 2
        out.append(entry("LEGENDRE p_l(1)^2", l, sq, e2, 1e-12, abs(sq - e2) < 1e-12 * e2))
    return out


def _markov(n_max: int) -> list[dict]:
    out = []
    for n in range(1, n_max + 1):
        v, e = markov_constant(n), bernstein_qazi(n)
        out.append(entry("markov_mono", n, v, e, 1e-9, abs(v - e) <= 1e-9 * e))
    return out


def _sandwiches(n_max: int) -> list[dict]:
    out = []
    for n in range(1, min(n_max, ORACLE_MAX_N) + 1):
        for x0 in SANDWICH_POINTS:
            try:
                s = sandwich(n, x0)
            except VerificationFailure as exc:
                out.append(entry(f"x0={x0}", n, math.nan, 0.0, 1e-3, False, status=str(exc)))
                continue
            status = "closed" if s.conclusive else "inconclusive"
            out.append(
                entry(
                    f"x0={x0}", n, s.gap, 0.0, 1e-3, True,
                    theory=s.theory, lower=s.lower, upper=s.upper,
                    grid_size=s.grid_size, status=status,
                )
            )
    return out


def _sharpness(n_max: int, seed: int) -> list[dict]:
    out = []
    for n in range(1, n_max + 1):
        for x0 in SHARP_POINTS:
            try:
                r = sharpness_ratio(build_pointwise_extremal(n, x0), x0)
            except CertificateError:
                r = math.nan
            out.append(entry(f"x0={x0}", n, r, 1.0, 1e-9, abs(r - 1.0) <= 1e-9))
    rng = np.random.default_rng(seed)
    worst = 0.0
    for poly in random_monotone_corpus(100, seed):
        for x0 in rng.uniform(-1.0, 1.0, 20):
            worst = max(worst, sharpness_ratio(poly, float(x0)))
    out.append(entry("random_corpus_max", 20, worst, 1.0, 1e-9, worst <= 1.0 + 1e-9))
    return out


def _remark_ratios(n_max: int) -> list[dict]:
    out = []
    for n in range(1, n_max + 1):
        k = (n - 2) // 2 if n % 2 == 0 else (n - 1) // 2
        for fam in build_remark_family(n):
            if fam.branch is WeightId.BRIDGE:
                continue  # vanishes at x0 = 1
            label = "s" if n % 2 == 0 else "f"
            r = sharpness_ratio(fam, 1.0)
            e = expected_remark_ratio(k)
            status = "agrees" if abs(r - 1.0) <= 1e-9 else "discrepancy-recorded"
            out.append(
                entry(
                    f"{label}_{k} at x0=1", n, r, e, 1e-9, abs(r - e) <= 1e-9,
                    k=k, expected_per_paper=1.0, status=status,
                )
            )
    return out


def _growth() -> list[dict]:
    out = []
    cache: dict[int, float] = {}

    def b(n: int) -> float:
        if n not in cache:
            cache[n] = bernstein_constant(n)
        return cache[n]

    for n in (2, 4, 8, 16, 20, 25, 32, 40, 50, 64, 80, 100):
        slope = b(n) / n
        out.append(entry("slope", n, slope, None, None, slope < 1.0, note="bernstein_mono/n; below 1 beats the classical constant"))
    for n in (25, 50):
        r = b(2 * n) / b(n)
        out.append(entry("doubling", n, r, 2.0, 0.1, abs(r - 2.0) <= 0.1))
    s = [b(n) / n for n in (20, 40, 80)]
    spread = max(s) - min(s)
    out.append(entry("stabilization 20/40/80", 80, spread, 0.0, 0.05, spread < 0.05))
    return out


def build_report(n_max: int, seed: int = DEFAULT_SEED) -> dict[str, list[dict]]:
    report = {
        "orthonormality": _orthonormality(),
        "cd_identity": _cd_identity(seed),
        "szego": _szego(),
        "endpoint_laws": _endpoint_laws(),
        "markov_constants": _markov(n_max),
        "sandwiches": _sandwiches(n_max),
        "sharpness": _sharpness(n_max, seed),
        "remark_ratios": _remark_ratios(n_max),
        "growth": _growth(),
    }
    assert tuple(report) == SECTIONS
    return report


def failures(report: dict[str, list[dict]]) -> list[dict]:
    return [dict(e, section=s) for s, entries in report.items() for e in entries if not e["pass"]]
