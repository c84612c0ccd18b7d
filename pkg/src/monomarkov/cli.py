"""Command-line entry point.

    monomarkov <command> [--n N | --n-max N] [--x0 X] [--grid G]
               [--format csv|json] [--out PATH] [--seed S]

Exit status: 0 success, 1 verification failure, 2 argument error, 3 I/O error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from dataclasses import dataclass
from typing import Any, Optional, Sequence

import numpy as np

from .bounds import (
    baselines,
    branch_values,
    classify_winner,
    constant_table,
    pointwise_bound,
)
from .extremal import build_pointwise_extremal, build_remark_family
from .polycore import chebyshev_lobatto, sup_norm
from .verify import DEFAULT_SEED, build_report, failures

COMMANDS = ("bound", "table", "profile", "extremal", "verify")
FORMATS = ("csv", "json")

EXIT_OK, EXIT_VERIFY, EXIT_ARGS, EXIT_IO = 0, 1, 2, 3

TABLE_HEADER = [
    "n",
    "markov_mono",
    "bernstein_qazi",
    "bernstein_mono",
    "classical_markov",
    "ratio_bernstein_over_n",
]
PROFILE_HEADER = ["x", "bound", "branch_a", "branch_b", "winner", "weighted_bound"]
BOUND_HEADER = [
    "n", "x0", "k", "parity", "branch_a", "branch_b", "winner", "bound",
    "classical_markov", "bernstein_qazi",
]
EXTREMAL_HEADER = ["branch", "x", "p", "dp"]
VERIFY_HEADER = ["section", "name", "n", "value", "expected", "tol", "pass"]


class ArgumentError(ValueError):
    pass


@dataclass(frozen=True)
class RunConfig:
    command: str
    n: Optional[int] = None
    n_max: Optional[int] = None
    x0: Optional[float] = None
    grid: int = 2001
    format: str = "csv"
    out: Optional[str] = None
    seed: int = DEFAULT_SEED

    def validate(self) -> None:
        if self.command not in COMMANDS:
            raise ArgumentError(f"unknown command {self.command!r}")
        if self.format not in FORMATS:
            raise ArgumentError(f"unknown format {self.format!r}")
        for label, v in (("--n", self.n), ("--n-max", self.n_max)):
            if v is not None and v < 1:
                raise ArgumentError(f"{label} must be >= 1")
        if self.x0 is not None and not abs(self.x0) <= 1.0:
            raise ArgumentError("--x0 must lie in [-1, 1]")
        if self.grid < 64:
            raise ArgumentError("--grid must be >= 64")
        if self.command in ("bound", "profile", "extremal") and self.n is None:
            raise ArgumentError(f"{self.command} needs --n")
        if self.command == "table" and self.n_max is not None and self.n_max > 200:
            raise ArgumentError("--n-max must be <= 200 for table")


def fmt(v: Any) -> str:
    """CSV cell: reals with 12 significant digits, locale independent."""
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, (float, np.floating)):
        return format(float(v), ".12g")
    if v is None:
        return ""
    return str(v)


def render_csv(header: Sequence[str], rows: Sequence[Sequence[Any]]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for r in rows:
        w.writerow([fmt(v) for v in r])
    return buf.getvalue()


def render_json(obj: Any) -> str:
    return json.dumps(obj, indent=2, ensure_ascii=False, allow_nan=False) + "\n"


def records(header: Sequence[str], rows: Sequence[Sequence[Any]]) -> list[dict]:
    return [{h: (float(v) if isinstance(v, np.floating) else v) for h, v in zip(header, r)} for r in rows]


def cmd_bound(cfg: RunConfig) -> tuple[Sequence[str], list[list[Any]]]:
    r = pointwise_bound(cfg.n, 0.0 if cfg.x0 is None else cfg.x0)
    base = baselines(cfg.n)
    row = [r.n, r.x0, r.k, r.parity, r.branch_a, r.branch_b, r.winner, r.bound,
           base["classical_markov"], base["bernstein_qazi"]]
    return BOUND_HEADER, [row]


def cmd_table(n_max: int) -> tuple[Sequence[str], list[list[Any]]]:
    rows = []
    for r in constant_table(n_max):
        rows.append([r.n, r.markov_mono, r.bernstein_qazi, r.bernstein_mono,
                     r.classical_markov, r.ratio_bernstein_over_n])
    return TABLE_HEADER, rows


def cmd_profile(n: int, grid: int) -> tuple[Sequence[str], list[list[Any]]]:
    x = chebyshev_lobatto(grid)
    a, b = branch_values(n, x)
    parity = "even" if n % 2 == 0 else "odd"
    bound = 2.0 * np.maximum(a, b)
    weighted = np.sqrt(np.clip(1.0 - x * x, 0.0, None)) * bound
    rows = [
        [float(x[i]), float(bound[i]), float(a[i]), float(b[i]),
         classify_winner(parity, float(a[i]), float(b[i])), float(weighted[i])]
        for i in range(grid)
    ]
    return PROFILE_HEADER, rows


def cmd_extremal(cfg: RunConfig) -> tuple[Sequence[str], list[list[Any]], list[dict]]:
    if cfg.x0 is None:
        polys = build_remark_family(cfg.n)
    else:
        polys = [build_pointwise_extremal(cfg.n, cfg.x0)]
    x = chebyshev_lobatto(cfg.grid)
    rows, meta = [], []
    for e in polys:
        label = e.branch.name if e.branch is not None else ""
        p, dp = e.poly(x), e.deriv(x)
        rows.extend([label, float(x[i]), float(p[i]), float(dp[i])] for i in range(len(x)))
        meta.append({
            "n": e.n,
            "x0": e.x0,
            "branch": label,
            "coeffs": [float(c) for c in e.poly.coeffs],
            "deriv_coeffs": [float(c) for c in e.deriv.coeffs],
            "sup_norm": sup_norm(e.poly),
        })
    return EXTREMAL_HEADER, rows, meta


def cmd_verify(n_max: int, seed: int) -> dict[str, list[dict]]:
    return build_report(n_max, seed)


def _parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="monomarkov",
        description="Sharp derivative bounds for monotone polynomials on [-1, 1].",
    )
    p.add_argument("command", choices=COMMANDS)
    p.add_argument("--n", type=int)
    p.add_argument("--n-max", dest="n_max", type=int)
    p.add_argument("--x0", type=float)
    p.add_argument("--grid", type=int, default=2001)
    p.add_argument("--format", default=None, help="csv (default) or json")
    p.add_argument("--out", help="output path (default: standard output)")
    p.add_argument("--seed", type=lambda s: int(s, 0), default=DEFAULT_SEED)
    return p


def run(cfg: RunConfig) -> tuple[str, int]:
    """Execute ``cfg``; returns the rendered output and the exit status.

    Failing verification entries are also listed on standard error.
    """
    status = EXIT_OK
    as_json = cfg.format == "json"
    if cfg.command == "bound":
        header, rows = cmd_bound(cfg)
        text = render_json(records(header, rows)[0]) if as_json else render_csv(header, rows)
    elif cfg.command == "table":
        header, rows = cmd_table(cfg.n_max or 20)
        text = render_json(records(header, rows)) if as_json else render_csv(header, rows)
    elif cfg.command == "profile":
        header, rows = cmd_profile(cfg.n, cfg.grid)
        text = render_json(records(header, rows)) if as_json else render_csv(header, rows)
    elif cfg.command == "extremal":
        header, rows, meta = cmd_extremal(cfg)
        if as_json:
            by_branch: dict[str, list] = {}
            for r in records(header, rows):
                by_branch.setdefault(r.pop("branch"), []).append(r)
            for m in meta:
                m["samples"] = by_branch.get(m["branch"], [])
            text = render_json(meta)
        else:
            text = render_csv(header, rows)
    else:
        report = cmd_verify(cfg.n_max or 12, cfg.seed)
        failed = failures(report)
        if failed:
            status = EXIT_VERIFY
            for e in failed:
                print(f"FAIL {e['section']}: {e['name']} n={e['n']} value={e['value']}", file=sys.stderr)
        if as_json:
            text = render_json(report)
        else:
            rows = [
                [s, e["name"], e["n"], e["value"], e["expected"], e["tol"], e["pass"]]
                for s, entries in report.items()
                for e in entries
            ]
            text = render_csv(VERIFY_HEADER, rows)
    return text, status


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = _parser().parse_args(argv)
    fmt_default = "json" if args.command == "verify" else "csv"
    cfg = RunConfig(
        command=args.command,
        n=args.n,
        n_max=args.n_max,
        x0=args.x0,
        grid=args.grid,
        format=args.format or fmt_default,
        out=args.out,
        seed=args.seed,
    )
    try:
        cfg.validate()
        text, status = run(cfg)
    except (ArgumentError, ValueError) as exc:
        print(f"monomarkov: error: {exc}", file=sys.stderr)
        return EXIT_ARGS
    try:
        if cfg.out:
            with open(cfg.out, "w", encoding="utf-8", newline="\n") as fh:
                fh.write(text)
        else:
            sys.stdout.write(text)
    except OSError as exc:
        print(f"monomarkov: cannot write output: {exc}", file=sys.stderr)
        return EXIT_IO
    return status


if __name__ == "__main__":
    sys.exit(main())
