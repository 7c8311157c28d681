"""Equidistribution evidence for the jet multiset in [0,p)^3.

Three instruments: box-restricted lower bounds on the two discrepancy
normalizations (best deviation over a family of axis-aligned cubes), the
Erdos-Turan-Koksma exponential-sum functional that upper-bounds the same
discrepancy up to an absolute constant, and the mod-p^2 exponential sums
over the curve whose square-root cancellation is the conjectured driver.

Box counts use the jets as a multiset by default (one jet per curve
point); set semantics are available behind a flag.  Every floating-point
reduction uses a fixed pairwise order, so reports are bit-identical
across runs and thread counts.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator

import numpy as np

from . import _kernels
from .curve import CurveData
from .errors import EmptyCurve
from .poly import Polynomial, PrimeModulus

__all__ = [
    "BoxFamily", "DiscrepancyReport", "ExpSumReport",
    "discrepancy_lower_bounds", "etk_functional",
    "exp_sum", "exp_sum_scan",
]

ETK_MAX_L = 32


@dataclass(frozen=True)
class BoxFamily:
    """Axis-aligned cubes of one side length anchored on a coarse grid.

    The default family for prime p has side floor(p/3) and anchors on
    {0, side, 2*side}^3; anchors whose cube would leave [0,p)^3 are
    dropped.
    """

    p: int
    side: int
    anchors: tuple[tuple[int, int, int], ...]

    @classmethod
    def regular_grid(cls, p: int, side: int | None = None) -> "BoxFamily":
        s = p // 3 if side is None else side
        if not 1 <= s <= p:
            raise ValueError(f"side must be in [1, {p}], got {s}")
        offsets = [v for v in (0, s, 2 * s) if v + s <= p]
        anchors = tuple((a, b, c) for a in offsets for b in offsets
                        for c in offsets)
        return cls(p, s, anchors)

    @property
    def label(self) -> str:
        return (f"{len(self.anchors)} cubes of side {self.side} anchored on "
                f"{{0, {self.side}, {2 * self.side}}}^3 in [0,{self.p})^3")


@dataclass(frozen=True)
class DiscrepancyReport:
    p: int
    side: int
    m: int
    delta_lower: float
    d_lower: float
    witness_delta: tuple[int, int, int]
    witness_d: tuple[int, int, int]
    delta_lower_exact: Fraction
    d_lower_exact: Fraction
    whole_space_delta: Fraction
    whole_space_d: Fraction
    family_label: str
    box_counts: dict[tuple[int, int, int], int]

    @property
    def inv_sqrt_p(self) -> float:
        return 1.0 / math.sqrt(self.p)


@dataclass(frozen=True)
class ExpSumReport:
    p: int
    samples: int
    max_modulus: float
    argmax_kl: tuple[int, int]
    normalized: float


def _jet_array(cd: CurveData, set_semantics: bool) -> np.ndarray:
    jets = np.stack([cd.fx, cd.fy, cd.alpha], axis=1)
    if set_semantics:
        jets = np.unique(jets, axis=0)
    return jets


def discrepancy_lower_bounds(cd: CurveData, family: BoxFamily | None = None,
                             set_semantics: bool = False
                             ) -> DiscrepancyReport:
    """Best deviation from uniformity over the box family.

    For each cube E the candidates are |count/m - |E|/p^3| (absolute
    normalization) and |count * p^3 / (|E| * m) - 1| (relative).  The
    maxima are taken in exact rationals; the whole cube [0,p)^3 is
    evaluated separately as a self-test and must give 0 for both.
    """
    if cd.m == 0:
        raise EmptyCurve("discrepancy needs at least one curve point")
    p = cd.pm.p
    if family is None:
        family = BoxFamily.regular_grid(p)
    jets = _jet_array(cd, set_semantics)
    n = len(jets)
    vol = Fraction(family.side ** 3, p ** 3)

    counts: dict[tuple[int, int, int], int] = {}
    best_delta = best_d = Fraction(-1)
    wit_delta = wit_d = family.anchors[0]
    for anchor in family.anchors:
        lo = np.array(anchor, dtype=np.int64)
        inside = np.all((jets >= lo) & (jets < lo + family.side), axis=1)
        c = int(np.count_nonzero(inside))
        counts[anchor] = c
        delta_cand = abs(Fraction(c, n) - vol)
        d_cand = abs(Fraction(c, n) / vol - 1)
        if delta_cand > best_delta:
            best_delta, wit_delta = delta_cand, anchor
        if d_cand > best_d:
            best_d, wit_d = d_cand, anchor
    # whole-space self-test: a genuine recount over [0,p)^3, expected 0
    inside_all = np.all((jets >= 0) & (jets < p), axis=1)
    c_all = int(np.count_nonzero(inside_all))
    whole_delta = abs(Fraction(c_all, n) - 1)
    whole_d = abs(Fraction(c_all, n) - 1)
    return DiscrepancyReport(
        p=p, side=family.side, m=cd.m,
        delta_lower=float(best_delta), d_lower=float(best_d),
        witness_delta=wit_delta, witness_d=wit_d,
        delta_lower_exact=best_delta, d_lower_exact=best_d,
        whole_space_delta=whole_delta, whole_space_d=whole_d,
        family_label=family.label, box_counts=counts,
    )


def etk_functional(cd: CurveData, L: int) -> float:
    """Erdos-Turan-Koksma style bound functional at truncation L.

    Returns 1/L + (1/n) * sum over integer vectors 0 < |a|_inf <= L of
    |sum over jets v of e_p(a . v)| / r(a), with r(a) the product of
    max(|a_i|, 1).  The absolute constant in front is not known and is
    reported as 1.
    """
    if not 1 <= L <= ETK_MAX_L:
        raise ValueError(f"L must be in [1, {ETK_MAX_L}]")
    if cd.m == 0:
        raise EmptyCurve("functional needs at least one curve point")
    p = cd.pm.p
    jets = _jet_array(cd, set_semantics=False)
    n = len(jets)
    coeffs = np.arange(-L, L + 1)
    # per-axis phase tables: T[axis][a_idx, point] = e_p(a * v_axis)
    tables = [
        np.exp((2j * math.pi / p) * np.outer(coeffs, jets[:, axis]))
        for axis in range(3)
    ]
    weights = np.maximum(np.abs(coeffs), 1).astype(np.float64)
    acc = 0.0
    zero = L  # index of a = 0 in coeffs
    for i1, a1 in enumerate(coeffs):
        row1 = tables[0][i1]
        for i2 in range(2 * L + 1):
            prod = row1 * tables[1][i2]
            sums = np.add.reduce(prod[None, :] * tables[2], axis=1)
            mods = np.abs(sums) / (weights[i1] * weights[i2] * weights)
            if i1 == zero and i2 == zero:
                mods[zero] = 0.0  # exclude a = (0,0,0)
            acc += float(np.add.reduce(mods))
    return 1.0 / L + acc / n


def _exp_sum_terms(f: Polynomial, pm: PrimeModulus, cd: CurveData
                   ) -> tuple[np.ndarray, np.ndarray, np.ndarray, int]:
    p2 = pm.p_squared
    ie, je, ce = f.term_arrays(p2)
    return ie, je, ce, p2


def _exp_sum_at(ie: np.ndarray, je: np.ndarray, ce: np.ndarray, p2: int,
                xs: np.ndarray, ys: np.ndarray, p: int, k: int, l: int
                ) -> float:
    vals = _kernels.eval_points_mod(ie, je, ce, p2,
                                    (xs + k * p) % p2, (ys + l * p) % p2)
    phases = np.exp((2j * math.pi / p2) * vals)
    return float(abs(np.add.reduce(phases)))


def exp_sum(f: Polynomial, pm: PrimeModulus, cd: CurveData,
            k: int, l: int) -> float:
    """|sum over curve points of e_{p^2}(f(x + kp, y + lp))|.

    Residues mod p^2 are exact integers; the only floating-point steps
    are one phase per point and a pairwise-ordered accumulation, so the
    absolute error stays below m * 2^-45.
    """
    if not (0 <= k < pm.p and 0 <= l < pm.p):
        raise ValueError("k and l must lie in [0, p)")
    if cd.m == 0:
        return 0.0
    ie, je, ce, p2 = _exp_sum_terms(f, pm, cd)
    return _exp_sum_at(ie, je, ce, p2, cd.xs, cd.ys, pm.p, k, l)


def exp_sum_scan(f: Polynomial, pm: PrimeModulus, cd: CurveData,
                 sample_count: int, seed: int) -> ExpSumReport:
    """Max exponential-sum modulus over sampled blocks (k, l).

    Draws sample_count pairs from a seeded generator; when the request
    reaches p^2 the scan switches to full enumeration.  Ties keep the
    first (k, l) encountered.
    """
    if sample_count < 1:
        raise ValueError("sample_count must be >= 1")
    p = pm.p
    ie, je, ce, p2 = _exp_sum_terms(f, pm, cd)
    pairs: Iterator[tuple[int, int]]
    if sample_count >= p * p:
        pairs = ((k, l) for k in range(p) for l in range(p))
        n_samples = p * p
    else:
        rng = np.random.default_rng(seed)
        drawn = rng.integers(0, p, size=(sample_count, 2))
        pairs = ((int(a), int(b)) for a, b in drawn)
        n_samples = sample_count
    best = -1.0
    best_kl = (0, 0)
    for k, l in pairs:
        mod = _exp_sum_at(ie, je, ce, p2, cd.xs, cd.ys, p, k, l)
        if mod > best:
            best, best_kl = mod, (k, l)
    return ExpSumReport(p=p, samples=n_samples, max_modulus=best,
                        argmax_kl=best_kl,
                        normalized=best / math.sqrt(p))
