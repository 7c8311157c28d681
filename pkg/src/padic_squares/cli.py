"""Command-line surface: compute, verify, and emit CSV/JSON reports.

Subcommands map one-to-one onto the library modules: ``curve`` writes
the enumerated curve with jets, ``blocks`` the X-histogram with its
Poisson(1) reference column and a JSON summary, ``ranks`` the tuple
counts m_k1/m_k2, ``discrepancy`` the box-family lower bounds,
``expsum`` the sampled exponential-sum maximum, ``scatter`` the
valuation-1 point cloud, and ``verify`` the closed-form-versus-oracle
battery.

Exit codes are a stable contract: 0 success, 2 validation error,
3 oracle or budget bound exceeded, 4 verify failure.  All randomness
flows from ``--seed``.  ``--format json`` wraps each CSV payload as
{config, rows}; error messages name the offending flag or bound.
"""

from __future__ import annotations

import argparse
import csv
import dataclasses
import json
import math
import sys
from dataclasses import dataclass
from typing import Any, Callable, Sequence

from . import blocks as blocks_mod
from . import distribution, equidist
from .curve import CURVE_CSV_HEADER, CurveData, enumerate_curve, smooth_points
from .errors import (BudgetExceeded, OracleBoundExceeded, RangeTooLarge)
from .poly import ParseError, Polynomial, PrimeModulus, parse_polynomial
from . import _kernels

__all__ = ["RunConfig", "VerifyCheck", "VerifyReport", "run", "main"]

SCATTER_RANGE_LIMIT = 10_000
BLOCKS_STREAM_WARN_P = 8000

EXIT_OK = 0
EXIT_VALIDATION = 2
EXIT_BUDGET = 3
EXIT_VERIFY = 4


@dataclass(frozen=True)
class RunConfig:
    command: str
    poly_text: str
    prime: int
    k: int = 2
    range: int | None = None
    sample_count: int = 2000
    seed: int = 0
    format: str = "csv"
    out_path: str | None = None
    oracle_bound: int = blocks_mod.DEFAULT_ORACLE_BOUND
    threads: int = 0
    side: int | None = None
    set_semantics: bool = False
    algorithm: str = "aggregated"


@dataclass(frozen=True)
class VerifyCheck:
    name: str
    passed: bool
    detail: str


@dataclass(frozen=True)
class VerifyReport:
    checks: tuple[VerifyCheck, ...]

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)


def _fmt_sig12(v: float) -> str:
    return f"{v:.12g}"


def _fmt_dec11(v: float) -> str:
    return f"{v:.11f}"


# ---------------------------------------------------------------------------
# Command handlers: each returns headers, rows (native values), per-column
# CSV formatters, a one-line summary, and an optional JSON sidecar payload.
# ---------------------------------------------------------------------------

def _cmd_curve(cfg: RunConfig, f: Polynomial, pm: PrimeModulus) -> dict:
    cd = enumerate_curve(f, pm, threads=cfg.threads)
    rows = [
        {"x": int(x), "y": int(y), "fx": int(a), "fy": int(b),
         "alpha": int(al)}
        for x, y, a, b, al in zip(cd.xs, cd.ys, cd.fx, cd.fy, cd.alpha)
    ]
    smooth = len(smooth_points(cd))
    return {
        "headers": CURVE_CSV_HEADER, "rows": rows, "fmt": {},
        "summary": f"curve: p={pm.p} m={cd.m} smooth={smooth}",
        "sidecar": None,
    }


def _cmd_blocks(cfg: RunConfig, f: Polynomial, pm: PrimeModulus) -> dict:
    if pm.p > BLOCKS_STREAM_WARN_P:
        print(f"note: p={pm.p} > {BLOCKS_STREAM_WARN_P}; grid is processed "
              "in row bands to bound memory", file=sys.stderr)
    cd = enumerate_curve(f, pm, threads=cfg.threads)
    hist = distribution.block_histogram_sweep(cd)
    comp = distribution.poisson_compare(hist, max_moment=4)
    p2 = pm.p_squared
    dense = hist.dense()
    rows = [
        {"x_value": j, "block_count": c,
         "poisson_expected": p2 * math.exp(-1) / math.factorial(j)}
        for j, c in enumerate(dense)
    ]
    summary_payload = {
        "p": pm.p, "m": cd.m,
        "tv_distance": comp.tv_distance, "chi_square": comp.chi_square,
        "moments": comp.empirical_moments, "bell": comp.bell_targets,
    }
    return {
        "headers": ["x_value", "block_count", "poisson_expected"],
        "rows": rows, "fmt": {},
        "summary": (f"blocks: p={pm.p} m={cd.m} bins={len(dense)} "
                    f"tv={comp.tv_distance:.6f} chi2={comp.chi_square:.3f}"),
        "sidecar": summary_payload,
    }


def _cmd_ranks(cfg: RunConfig, f: Polynomial, pm: PrimeModulus) -> dict:
    if cfg.k < 1 or (cfg.algorithm == "aggregated" and cfg.k > 3):
        raise ValueError("--k: aggregated counting supports k in {1, 2, 3}")
    cd = enumerate_curve(f, pm, threads=cfg.threads)
    counts = blocks_mod.count_rank_tuples(cd, cfg.k, algorithm=cfg.algorithm)
    ratio = counts.m_k2 / pm.p_squared
    rows = [{
        "p": pm.p, "k": cfg.k, "m": cd.m,
        "m_k1": counts.m_k1, "m_k2": counts.m_k2, "m_k2_over_p2": ratio,
    }]
    return {
        "headers": ["p", "k", "m", "m_k1", "m_k2", "m_k2_over_p2"],
        "rows": rows, "fmt": {"m_k2_over_p2": _fmt_sig12},
        "summary": (f"ranks: p={pm.p} k={cfg.k} m={cd.m} "
                    f"m_k1={counts.m_k1} m_k2={counts.m_k2} "
                    f"ratio={ratio:.6f}"),
        "sidecar": None,
    }


def _cmd_discrepancy(cfg: RunConfig, f: Polynomial, pm: PrimeModulus) -> dict:
    cd = enumerate_curve(f, pm, threads=cfg.threads)
    family = equidist.BoxFamily.regular_grid(pm.p, cfg.side)
    rep = equidist.discrepancy_lower_bounds(cd, family,
                                            set_semantics=cfg.set_semantics)
    rows = [{
        "p": rep.p, "side": rep.side,
        "delta_lower": rep.delta_lower, "d_lower": rep.d_lower,
        "inv_sqrt_p": rep.inv_sqrt_p,
    }]
    return {
        "headers": ["p", "side", "delta_lower", "d_lower", "inv_sqrt_p"],
        "rows": rows,
        "fmt": {"delta_lower": _fmt_dec11, "d_lower": _fmt_dec11,
                "inv_sqrt_p": _fmt_dec11},
        "summary": (f"discrepancy: p={pm.p} m={rep.m} "
                    f"delta_lower={rep.delta_lower:.11f} "
                    f"d_lower={rep.d_lower:.11f} "
                    f"whole_space=({float(rep.whole_space_delta)}, "
                    f"{float(rep.whole_space_d)}) family=[{rep.family_label}]"),
        "sidecar": {
            "family": rep.family_label,
            "witness_delta": list(rep.witness_delta),
            "witness_d": list(rep.witness_d),
            "whole_space_delta": float(rep.whole_space_delta),
            "whole_space_d": float(rep.whole_space_d),
        },
    }


def _cmd_expsum(cfg: RunConfig, f: Polynomial, pm: PrimeModulus) -> dict:
    if cfg.sample_count < 1:
        raise ValueError("--samples: must be >= 1")
    cd = enumerate_curve(f, pm, threads=cfg.threads)
    rep = equidist.exp_sum_scan(f, pm, cd, cfg.sample_count, cfg.seed)
    rows = [{
        "p": rep.p, "samples": rep.samples,
        "max_modulus": rep.max_modulus, "normalized": rep.normalized,
        "argmax_k": rep.argmax_kl[0], "argmax_l": rep.argmax_kl[1],
    }]
    return {
        "headers": ["p", "samples", "max_modulus", "normalized",
                    "argmax_k", "argmax_l"],
        "rows": rows, "fmt": {},
        "summary": (f"expsum: p={pm.p} m={cd.m} samples={rep.samples} "
                    f"max|S|={rep.max_modulus:.6f} "
                    f"|S|/sqrt(p)={rep.normalized:.6f} "
                    f"argmax=({rep.argmax_kl[0]},{rep.argmax_kl[1]})"),
        "sidecar": None,
    }


def _cmd_scatter(cfg: RunConfig, f: Polynomial, pm: PrimeModulus) -> dict:
    rng = pm.p_squared if cfg.range is None else cfg.range
    if rng < 0:
        raise ValueError("--range: must be >= 0")
    if rng > SCATTER_RANGE_LIMIT:
        raise RangeTooLarge(
            f"--range: {rng} exceeds limit {SCATTER_RANGE_LIMIT}")
    ie, je, ce = f.term_arrays(pm.p_squared)
    xs, ys = _kernels.scatter_scan(ie, je, ce, pm.p, rng)
    rows = [{"x": int(x), "y": int(y)} for x, y in zip(xs, ys)]
    return {
        "headers": ["x", "y"], "rows": rows, "fmt": {},
        "summary": f"scatter: p={pm.p} range={rng} points={len(rows)}",
        "sidecar": None,
    }


# ---------------------------------------------------------------------------
# Verify battery
# ---------------------------------------------------------------------------

def _verify_battery(cfg: RunConfig, f: Polynomial, pm: PrimeModulus
                    ) -> VerifyReport:
    p = pm.p
    cd = enumerate_curve(f, pm, threads=cfg.threads)
    checks: list[VerifyCheck] = []

    def add(name: str, passed: bool, detail: str) -> None:
        checks.append(VerifyCheck(name, passed, detail))

    def skip(name: str, why: str) -> None:
        checks.append(VerifyCheck(name, True, f"skipped: {why}"))

    # single-point block splits, every point, closed form vs direct count
    if p <= cfg.oracle_bound:
        bad = sum(
            1 for i in range(cd.m)
            if blocks_mod.block_count_closed_form(cd.jets[i], pm)
            != blocks_mod.block_count_oracle(f, pm, cd.points[i],
                                             cfg.oracle_bound)
        )
        add("block_split_closed_vs_oracle", bad == 0,
            f"{cd.m} points, {bad} mismatches")
    else:
        skip("block_split_closed_vs_oracle", f"p > {cfg.oracle_bound}")

    # total valuation-1 count over [0,p^2)^2
    if p <= min(13, cfg.oracle_bound):
        total = blocks_mod.total_val1_in_p2_square(cd)
        direct = blocks_mod.val1_square_oracle(f, pm)
        add("val1_total_vs_square_scan", total == direct,
            f"closed={total} direct={direct}")
    else:
        skip("val1_total_vs_square_scan", "p^4 scan too large")

    # pair joint splits over all ordered smooth pairs
    sm = smooth_points(cd)
    if (p <= min(31, cfg.oracle_bound)
            and len(sm) ** 2 * p * p <= 4_000_000):
        bad = 0
        seen: set[blocks_mod.RankClass] = set()
        for i in sm:
            for j in sm:
                cls = blocks_mod.rank_class([cd.jets[i], cd.jets[j]], pm)
                seen.add(cls)
                cf = blocks_mod.pair_joint_closed_form(cd.jets[i],
                                                       cd.jets[j], pm)
                orc = blocks_mod.pair_joint_oracle(f, pm, cd.points[i],
                                                   cd.points[j],
                                                   cfg.oracle_bound)
                if cf != orc:
                    bad += 1
        add("pair_split_closed_vs_oracle", bad == 0,
            f"{len(sm) ** 2} pairs, {bad} mismatches, "
            f"classes={sorted(c.name for c in seen)}")
    else:
        skip("pair_split_closed_vs_oracle", "pair oracle too large")

    # tuple identity, exact rationals
    if p <= 31 and cd.m ** 2 <= 4000:
        lhs, rhs = blocks_mod.prop5_identity_check(cd, 2)
        add("tuple_identity_k2", lhs == rhs, f"lhs={lhs} rhs={rhs}")
    else:
        skip("tuple_identity_k2", "p > 31")
    if p <= 13 and cd.m ** 3 <= 40_000:
        lhs, rhs = blocks_mod.prop5_identity_check(cd, 3)
        add("tuple_identity_k3", lhs == rhs, f"lhs={lhs} rhs={rhs}")
    else:
        skip("tuple_identity_k3", "p > 13")

    # naive vs aggregated tuple counters
    for k in (2, 3):
        if cd.m ** k <= blocks_mod.DEFAULT_TUPLE_BUDGET and cd.m ** k <= 3e5:
            naive = blocks_mod.count_rank_tuples(cd, k, algorithm="naive")
            agg = blocks_mod.count_rank_tuples(cd, k, algorithm="aggregated")
            add(f"tuple_counts_naive_vs_aggregated_k{k}",
                naive == agg,
                f"naive=({naive.m_k1},{naive.m_k2}) "
                f"agg=({agg.m_k1},{agg.m_k2})")
        else:
            skip(f"tuple_counts_naive_vs_aggregated_k{k}", "m^k too large")

    # histogram sweep vs naive rescan
    if p <= min(31, cfg.oracle_bound):
        swept = distribution.block_histogram_sweep(cd)
        naive_h = distribution.block_histogram_naive(f, pm)
        add("histogram_sweep_vs_naive", swept.counts == naive_h.counts,
            f"bins sweep={len(swept.counts)} naive={len(naive_h.counts)}")
    else:
        skip("histogram_sweep_vs_naive", "p > 31 or oracle bound")

    return VerifyReport(tuple(checks))


def _cmd_verify(cfg: RunConfig, f: Polynomial, pm: PrimeModulus) -> dict:
    report = _verify_battery(cfg, f, pm)
    rows = [
        {"check": c.name, "passed": c.passed, "detail": c.detail}
        for c in report.checks
    ]
    n_pass = sum(c.passed for c in report.checks)
    return {
        "headers": ["check", "passed", "detail"], "rows": rows, "fmt": {},
        "summary": (f"verify: p={pm.p} poly={f} "
                    f"checks={len(report.checks)} passed={n_pass} "
                    f"-> {'PASS' if report.passed else 'FAIL'}"),
        "sidecar": None,
        "failed": not report.passed,
    }


_HANDLERS: dict[str, Callable[[RunConfig, Polynomial, PrimeModulus], dict]] = {
    "curve": _cmd_curve,
    "blocks": _cmd_blocks,
    "ranks": _cmd_ranks,
    "discrepancy": _cmd_discrepancy,
    "expsum": _cmd_expsum,
    "scatter": _cmd_scatter,
    "verify": _cmd_verify,
}


# ---------------------------------------------------------------------------
# Emission and dispatch
# ---------------------------------------------------------------------------

def _format_cell(value: Any, col: str, fmt: dict[str, Callable]) -> str:
    if col in fmt:
        return fmt[col](value)
    return str(value)


def _emit(cfg: RunConfig, result: dict) -> None:
    headers: list[str] = result["headers"]
    rows: list[dict] = result["rows"]
    fmt = result["fmt"]
    to_stdout = cfg.out_path is None
    if cfg.format == "json":
        payload: dict[str, Any] = {"config": dataclasses.asdict(cfg),
                                   "rows": rows}
        if result["sidecar"] is not None:
            payload["summary"] = result["sidecar"]
        text = json.dumps(payload, indent=2)
        if to_stdout:
            print(text)
        else:
            with open(cfg.out_path, "w", encoding="utf-8") as fh:
                fh.write(text + "\n")
    else:
        target = sys.stdout if to_stdout else open(cfg.out_path, "w",
                                                   encoding="utf-8",
                                                   newline="")
        try:
            writer = csv.writer(target)
            writer.writerow(headers)
            for row in rows:
                writer.writerow([_format_cell(row[h], h, fmt)
                                 for h in headers])
        finally:
            if not to_stdout:
                target.close()
        if not to_stdout and result["sidecar"] is not None:
            side_path = cfg.out_path + ".summary.json"
            with open(side_path, "w", encoding="utf-8") as fh:
                json.dump({"config": dataclasses.asdict(cfg),
                           **result["sidecar"]}, fh, indent=2)
                fh.write("\n")
    stream = sys.stderr if to_stdout else sys.stdout
    print(result["summary"], file=stream)
    if not to_stdout:
        print(f"wrote {cfg.out_path}", file=stream)


def run(config: RunConfig) -> int:
    """Execute one configured command; returns the process exit code."""
    try:
        try:
            f = parse_polynomial(config.poly_text)
        except ParseError as exc:
            raise ValueError(f"--poly: {exc}") from exc
        try:
            pm = PrimeModulus(config.prime)
        except ValueError as exc:
            raise ValueError(f"--prime: {exc}") from exc
        handler = _HANDLERS.get(config.command)
        if handler is None:
            raise ValueError(f"unknown command {config.command!r}")
        result = handler(config, f, pm)
        _emit(config, result)
        if result.get("failed"):
            return EXIT_VERIFY
        return EXIT_OK
    except (OracleBoundExceeded, BudgetExceeded) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except (ParseError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="padic-squares",
        description=("Valuation statistics of bivariate integer polynomials "
                     "over p-adic squares"))
    sub = parser.add_subparsers(dest="command", required=True)
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--poly", required=True, dest="poly_text",
                        help="polynomial in x and y, e.g. 'x^3+y^2+x*y+1'")
    common.add_argument("--prime", required=True, type=int,
                        help="odd prime modulus p")
    common.add_argument("--out", dest="out_path", default=None,
                        help="output file (stdout when omitted)")
    common.add_argument("--format", choices=("csv", "json"), default="csv")
    common.add_argument("--threads", type=int, default=0,
                        help="worker threads for curve enumeration (0=auto)")
    common.add_argument("--oracle-bound", dest="oracle_bound", type=int,
                        default=blocks_mod.DEFAULT_ORACLE_BOUND,
                        help="largest p the brute-force oracles accept")
    common.add_argument("--seed", type=int, default=0,
                        help="seed for all sampled randomness")

    sub.add_parser("curve", parents=[common],
                   help="enumerate the curve and its jet vectors")
    sub.add_parser("blocks", parents=[common],
                   help="X-histogram over all p^2 blocks vs Poisson(1)")
    ranks = sub.add_parser("ranks", parents=[common],
                           help="rank-classified tuple counts m_k1, m_k2")
    ranks.add_argument("--k", type=int, default=2, help="tuple length")
    ranks.add_argument("--algorithm", choices=("aggregated", "naive"),
                       default="aggregated")
    disc = sub.add_parser("discrepancy", parents=[common],
                          help="box-family discrepancy lower bounds")
    disc.add_argument("--side", type=int, default=None,
                      help="cube side (default floor(p/3))")
    disc.add_argument("--set-semantics", action="store_true",
                      dest="set_semantics",
                      help="count distinct jets instead of the multiset")
    expsum = sub.add_parser("expsum", parents=[common],
                            help="max sampled exponential sum over blocks")
    expsum.add_argument("--samples", dest="sample_count", type=int,
                        default=2000)
    scatter = sub.add_parser("scatter", parents=[common],
                             help="points with valuation exactly 1")
    scatter.add_argument("--range", type=int, default=None,
                         help=f"scan [0,range)^2, default p^2, "
                              f"limit {SCATTER_RANGE_LIMIT}")
    sub.add_parser("verify", parents=[common],
                   help="closed forms vs brute-force oracles")
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    args = _build_parser().parse_args(argv)
    fields = {f.name for f in dataclasses.fields(RunConfig)}
    cfg = RunConfig(**{k: v for k, v in vars(args).items() if k in fields})
    return run(cfg)


if __name__ == "__main__":
    sys.exit(main())
