"""Distribution of the per-block count X and its Poisson(1) comparison.

X(k, l) is the number of curve points whose translate into block (k, l)
has valuation greater than 1.  By the Taylor identity each smooth curve
point contributes along a mod-p line in the (k, l) plane, a degenerate
point with alpha = 0 contributes to every block, and a degenerate point
with alpha != 0 contributes nowhere.  The sweep accumulates those lines
on a p x p counter grid (processed in row bands); the naive oracle
recounts every block by direct evaluation mod p^2.

``poisson_compare`` summarizes a histogram against Poisson(1): total
variation distance with the tail folded into one overflow bin, a
chi-square statistic over bins pooled to expected count >= 5, and exact
empirical moments next to their Bell-number targets.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

import numpy as np

from . import _kernels
from .curve import CurveData
from .errors import EmptyHistogram, OracleBoundExceeded
from .poly import Polynomial, PrimeModulus, Valuation, valuation

__all__ = [
    "BlockHistogram", "PoissonComparison",
    "block_histogram_sweep", "block_histogram_naive",
    "stirling2", "bell", "poisson_compare",
]

STIRLING_MAX = 30


@dataclass(frozen=True)
class BlockHistogram:
    """Histogram of X over all p^2 blocks; zero-count bins are omitted."""

    counts: dict[int, int]
    pm: PrimeModulus
    m: int

    @property
    def total_blocks(self) -> int:
        return sum(self.counts.values())

    @property
    def total_mass(self) -> int:
        """Sum of value * count; the curve's total valuation>1 cell count."""
        return sum(v * c for v, c in self.counts.items())

    @property
    def max_value(self) -> int:
        return max(self.counts) if self.counts else 0

    def dense(self) -> list[int]:
        """Counts for every value 0..max_value, zero-filled."""
        out = [0] * (self.max_value + 1)
        for v, c in self.counts.items():
            out[v] = c
        return out


def block_histogram_sweep(cd: CurveData, band_rows: int = 2048
                          ) -> BlockHistogram:
    """Histogram of X by sweeping each smooth jet's line over the grid.

    Degenerate jets never touch the grid: an alpha = 0 jet raises X in
    every block, which shifts the whole histogram right by one, and an
    alpha != 0 jet contributes nothing.
    """
    p = cd.pm.p
    sm = cd.smooth_mask
    shift = int(np.count_nonzero(~sm & (cd.alpha % p == 0)))
    hist = _kernels.block_sweep_hist(
        np.ascontiguousarray(cd.fx[sm]), np.ascontiguousarray(cd.fy[sm]),
        np.ascontiguousarray(cd.alpha[sm]), p, band_rows)
    counts = {j + shift: int(c) for j, c in enumerate(hist.tolist()) if c}
    return BlockHistogram(counts, cd.pm, cd.m)


def block_histogram_naive(f: Polynomial, pm: PrimeModulus,
                          oracle_bound: int = 31) -> BlockHistogram:
    """Recount X(k, l) for every block by direct valuation at each point."""
    p = pm.p
    if p > oracle_bound:
        raise OracleBoundExceeded(f"p={p} exceeds oracle bound {oracle_bound}")
    points = [(x, y) for x in range(p) for y in range(p)
              if f.eval_mod(x, y, p) == 0]
    one = Valuation(1)
    counts: dict[int, int] = {}
    for k in range(p):
        for l in range(p):
            x_val = sum(
                1 for (x, y) in points
                if valuation(f, x + k * p, y + l * p, pm, cap=2) > one
            )
            counts[x_val] = counts.get(x_val, 0) + 1
    return BlockHistogram(counts, pm, len(points))


# ---------------------------------------------------------------------------
# Poisson comparison
# ---------------------------------------------------------------------------

@lru_cache(maxsize=None)
def _stirling2_rec(k: int, i: int) -> int:
    if i < 0 or i > k:
        return 0
    if k == 0:
        return 1
    return i * _stirling2_rec(k - 1, i) + _stirling2_rec(k - 1, i - 1)


def stirling2(k: int, i: int) -> int:
    """Stirling number of the second kind S(k, i)."""
    if not 0 <= i <= k <= STIRLING_MAX:
        raise ValueError(f"need 0 <= i <= k <= {STIRLING_MAX}, "
                         f"got ({k}, {i})")
    return _stirling2_rec(k, i)


def bell(k: int) -> int:
    """Bell number B_k, the k-th moment of Poisson(1)."""
    if k == 0:
        return 1
    return sum(stirling2(k, i) for i in range(1, k + 1))


@dataclass(frozen=True)
class PoissonComparison:
    tv_distance: float
    chi_square: float
    empirical_moments: list[float]
    bell_targets: list[int]
    first_moment_exact: Fraction
    chi_square_bins: int = field(default=0)


def poisson_compare(h: BlockHistogram, max_moment: int = 4
                    ) -> PoissonComparison:
    """Compare a block histogram against Poisson(1).

    The total variation sum runs over observed values 0..J plus one
    overflow bin at J+1 holding the remaining Poisson tail mass.  The
    chi-square statistic pools bins from the top until every expected
    count is at least 5.  Moments are computed in exact rationals before
    the one final float conversion.
    """
    if not 1 <= max_moment <= 8:
        raise ValueError("max_moment must be in 1..8")
    total = h.total_blocks
    if total == 0:
        raise EmptyHistogram("histogram has no blocks")
    dense = h.dense()
    j_max = len(dense) - 1

    pmf = [math.exp(-1) / math.factorial(j) for j in range(j_max + 1)]
    tail = 1.0 - math.fsum(pmf)
    tv = 0.5 * (math.fsum(abs(c / total - q) for c, q in zip(dense, pmf))
                + abs(tail))

    observed = [float(c) for c in dense] + [0.0]
    expected = [q * total for q in pmf] + [tail * total]
    while len(expected) > 1 and expected[-1] < 5.0:
        expected[-2] += expected[-1]
        observed[-2] += observed[-1]
        del expected[-1], observed[-1]
    chi = math.fsum((o - e) ** 2 / e for o, e in zip(observed, expected) if e > 0)

    moments_exact = [
        Fraction(sum(j ** k * c for j, c in enumerate(dense)), total)
        for k in range(1, max_moment + 1)
    ]
    return PoissonComparison(
        tv_distance=tv,
        chi_square=chi,
        empirical_moments=[float(mo) for mo in moments_exact],
        bell_targets=[bell(k) for k in range(1, max_moment + 1)],
        first_moment_exact=moments_exact[0],
        chi_square_bins=len(expected),
    )
