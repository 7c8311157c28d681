"""Valuation patterns of lifted blocks and rank-classified tuple counts.

For a curve point (x, y) the translates (x + kp, y + lp) over (k, l) in
[0,p)^2 all keep valuation >= 1; the Taylor identity

    f(x + kp, y + lp)  =  f(x, y) + kp f_x + lp f_y   (mod p^2)

turns "valuation > 1" into the mod-p line  alpha + k a + l b = 0  in the
jet coordinates.  This gives closed forms for how many translates have
valuation exactly 1 / greater than 1, for one point and jointly for pairs,
classified by the rank of the stacked-jet matrix.  Every closed form here
is paired with a brute-force oracle that recounts the block by direct
valuation, sharing no code with the closed form.

Tuple counts: for ordered k-tuples of pairwise-distinct curve points, the
k x 3 matrix of their jets is classified by rank, with rank-2 tuples split
by whether the two gradient columns are independent.  ``count_rank_tuples``
counts the rank-1 tuples (m_k1) and the independent rank-2 tuples (m_k2)
either naively or by aggregating jets into projective lines and planes.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np

from .curve import CurveData, CurvePoint, JetVector
from .errors import BudgetExceeded, DegenerateJet, OracleBoundExceeded
from .poly import Polynomial, PrimeModulus, Valuation, valuation

__all__ = [
    "PairJointCounts", "RankClass", "RankTupleCounts",
    "block_count_closed_form", "block_count_oracle",
    "total_val1_in_p2_square", "val1_square_oracle",
    "pair_joint_closed_form", "pair_joint_oracle", "pair_joint_pmf",
    "rank_class", "count_rank_tuples", "prop5_identity_check",
    "DEFAULT_ORACLE_BOUND",
]

DEFAULT_ORACLE_BOUND = 101
DEFAULT_TUPLE_BUDGET = 2_000_000


@dataclass(frozen=True)
class PairJointCounts:
    """Counts of (k, l) in [0,p)^2 by the pair of valuations at two points.

    n_11: both valuations exactly 1;  n_g1 / n_1g: first/second greater
    than 1 while the other is 1;  n_gg: both greater than 1.
    """

    n_11: int
    n_g1: int
    n_1g: int
    n_gg: int

    @property
    def total(self) -> int:
        return self.n_11 + self.n_g1 + self.n_1g + self.n_gg

    def as_tuple(self) -> tuple[int, int, int, int]:
        return (self.n_11, self.n_g1, self.n_1g, self.n_gg)


class RankClass(Enum):
    RANK0 = 0  # all-zero matrix (only zero jets); not in the closed forms
    RANK1 = 1
    RANK2_FIRST_TWO_INDEP = 2
    RANK2_FIRST_TWO_DEP = 3
    RANK3 = 4


@dataclass(frozen=True)
class RankTupleCounts:
    """m_k1 / m_k2 over ordered pairwise-distinct k-tuples of curve points."""

    k: int
    m_k1: int
    m_k2: int


# ---------------------------------------------------------------------------
# Single-point block counts
# ---------------------------------------------------------------------------

def block_count_closed_form(jet: JetVector, pm: PrimeModulus
                            ) -> tuple[int, int]:
    """(#translates with valuation 1, #translates with valuation > 1).

    Smooth jet: the line alpha + k a + l b = 0 has p solutions, so p
    translates stay divisible by p^2 and the other p(p-1) have valuation
    exactly 1.  Zero gradient: the block is constant mod p^2, so the split
    is all-or-nothing by alpha.
    """
    p = pm.p
    if not jet.degenerate:
        return p * (p - 1), p
    if jet.alpha % p != 0:
        return p * p, 0
    return 0, p * p


def block_count_oracle(f: Polynomial, pm: PrimeModulus, pt: CurvePoint,
                       oracle_bound: int = DEFAULT_ORACLE_BOUND
                       ) -> tuple[int, int]:
    """Exhaustive recount of the block by direct valuation at every cell."""
    p = pm.p
    if p > oracle_bound:
        raise OracleBoundExceeded(f"p={p} exceeds oracle bound {oracle_bound}")
    one = Valuation(1)
    n1 = ngt = 0
    for k in range(p):
        for l in range(p):
            v = valuation(f, pt.x + k * p, pt.y + l * p, pm, cap=2)
            if v == one:
                n1 += 1
            elif v > one:
                ngt += 1
    return n1, ngt


def total_val1_in_p2_square(cd: CurveData) -> int:
    """Number of (x, y) in [0,p^2)^2 with valuation exactly 1.

    Sums the per-point closed forms; equals m * p * (p-1) when every point
    is smooth, and applies the degenerate corrections otherwise.
    """
    return sum(block_count_closed_form(jet, cd.pm)[0] for jet in cd.jets)


def val1_square_oracle(f: Polynomial, pm: PrimeModulus,
                       oracle_bound: int = 31) -> int:
    """Direct scan of all p^4 cells of [0,p^2)^2 counting valuation 1."""
    p = pm.p
    if p > oracle_bound:
        raise OracleBoundExceeded(f"p={p} exceeds oracle bound {oracle_bound}")
    one = Valuation(1)
    count = 0
    for x in range(p * p):
        for y in range(p * p):
            if valuation(f, x, y, pm, cap=2) == one:
                count += 1
    return count


# ---------------------------------------------------------------------------
# Pair joint counts
# ---------------------------------------------------------------------------

def pair_joint_closed_form(j1: JetVector, j2: JetVector, pm: PrimeModulus
                           ) -> PairJointCounts:
    """Joint valuation split of a block for two smooth curve points.

    Classified by the 2 x 3 stacked-jet matrix: independent gradient
    columns give ((p-1)^2, p-1, p-1, 1); proportional rows give
    (p(p-1), 0, 0, p); rank 2 with dependent gradient columns gives
    (p(p-2), p, p, 0).
    """
    if j1.degenerate or j2.degenerate:
        raise DegenerateJet("pair closed form needs smooth jets; "
                            "use pair_joint_oracle")
    p = pm.p
    cls = rank_class([j1, j2], pm)
    if cls is RankClass.RANK2_FIRST_TWO_INDEP:
        return PairJointCounts((p - 1) ** 2, p - 1, p - 1, 1)
    if cls is RankClass.RANK1:
        return PairJointCounts(p * (p - 1), 0, 0, p)
    if cls is RankClass.RANK2_FIRST_TWO_DEP:
        return PairJointCounts(p * (p - 2), p, p, 0)
    raise AssertionError(f"impossible 2-row class {cls}")


def pair_joint_oracle(f: Polynomial, pm: PrimeModulus, pt1: CurvePoint,
                      pt2: CurvePoint,
                      oracle_bound: int = DEFAULT_ORACLE_BOUND
                      ) -> PairJointCounts:
    """Exhaustive joint classification of all (k, l) translates."""
    p = pm.p
    if p > oracle_bound:
        raise OracleBoundExceeded(f"p={p} exceeds oracle bound {oracle_bound}")
    one = Valuation(1)
    n11 = ng1 = n1g = ngg = 0
    for k in range(p):
        for l in range(p):
            v1 = valuation(f, pt1.x + k * p, pt1.y + l * p, pm, cap=2)
            v2 = valuation(f, pt2.x + k * p, pt2.y + l * p, pm, cap=2)
            if v1 == one and v2 == one:
                n11 += 1
            elif v1 > one and v2 == one:
                ng1 += 1
            elif v1 == one and v2 > one:
                n1g += 1
            elif v1 > one and v2 > one:
                ngg += 1
    return PairJointCounts(n11, ng1, n1g, ngg)


def pair_joint_pmf(counts: PairJointCounts, pm: PrimeModulus
                   ) -> dict[tuple[int, int], Fraction]:
    """Joint PMF of the two valuation>1 indicators, from the block split."""
    p2 = pm.p_squared
    return {
        (1, 1): Fraction(counts.n_gg, p2),
        (1, 0): Fraction(counts.n_g1, p2),
        (0, 1): Fraction(counts.n_1g, p2),
        (0, 0): Fraction(counts.n_11, p2),
    }


# ---------------------------------------------------------------------------
# Rank classification
# ---------------------------------------------------------------------------

def _matrix_rank_mod(rows: list[list[int]], p: int, ncols: int) -> int:
    """Row rank by Gaussian elimination over F_p.

    Pivots are chosen deterministically: columns left to right, and within
    a column the first remaining row with a nonzero entry.
    """
    mat = [[v % p for v in row[:ncols]] for row in rows]
    rank = 0
    nrows = len(mat)
    for col in range(ncols):
        piv = next((r for r in range(rank, nrows) if mat[r][col]), None)
        if piv is None:
            continue
        mat[rank], mat[piv] = mat[piv], mat[rank]
        inv = pow(mat[rank][col], -1, p)
        mat[rank] = [(v * inv) % p for v in mat[rank]]
        for r in range(rank + 1, nrows):
            fac = mat[r][col]
            if fac:
                mat[r] = [(a - fac * b) % p
                          for a, b in zip(mat[r], mat[rank])]
        rank += 1
        if rank == nrows:
            break
    return rank


def rank_class(rows: Sequence[JetVector | tuple[int, int, int]],
               pm: PrimeModulus) -> RankClass:
    """Class of the k x 3 stacked-jet matrix over F_p."""
    if not rows:
        raise ValueError("need at least one row")
    p = pm.p
    mat = [list(r) for r in rows]
    r = _matrix_rank_mod(mat, p, 3)
    if r == 0:
        return RankClass.RANK0
    if r == 1:
        return RankClass.RANK1
    if r == 3:
        return RankClass.RANK3
    left = _matrix_rank_mod(mat, p, 2)
    return (RankClass.RANK2_FIRST_TWO_INDEP if left == 2
            else RankClass.RANK2_FIRST_TWO_DEP)


# ---------------------------------------------------------------------------
# Tuple counting
# ---------------------------------------------------------------------------

def count_rank_tuples(cd: CurveData, k: int, algorithm: str = "aggregated",
                      budget: int = DEFAULT_TUPLE_BUDGET) -> RankTupleCounts:
    """Count ordered pairwise-distinct k-tuples by rank class.

    ``naive`` classifies every tuple by Gaussian elimination (m^k must stay
    within the budget).  ``aggregated`` groups jets by the projective line
    through the origin (rank 1) and by the plane a pair spans (rank 2) and
    works with multiplicities; it supports k in {1, 2, 3}.  Both agree.
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    if algorithm == "naive":
        return _count_naive(cd, k, budget)
    if algorithm == "aggregated":
        return _count_aggregated(cd, k)
    raise ValueError(f"unknown algorithm {algorithm!r}")


def _count_naive(cd: CurveData, k: int, budget: int) -> RankTupleCounts:
    if cd.m ** k > budget:
        raise BudgetExceeded(f"m^k = {cd.m}^{k} exceeds budget {budget}")
    jets = cd.jets
    m1 = m2 = 0
    for combo in itertools.permutations(range(cd.m), k):
        cls = rank_class([jets[i] for i in combo], cd.pm)
        if cls is RankClass.RANK1:
            m1 += 1
        elif cls is RankClass.RANK2_FIRST_TWO_INDEP:
            m2 += 1
    return RankTupleCounts(k, m1, m2)


def _falling(n: int, k: int) -> int:
    out = 1
    for i in range(k):
        out *= n - i
    return max(out, 0) if n < k else out


def _line_classes(cd: CurveData) -> tuple[np.ndarray, np.ndarray, int]:
    """Projective-line representatives of the nonzero jets.

    Returns (reps, counts, zero_count): reps is a (u, 3) int64 array of
    line representatives scaled so their first nonzero coordinate is 1,
    counts the number of curve points on each line, and zero_count the
    number of all-zero jets.
    """
    p = cd.pm.p
    reps: dict[tuple[int, int, int], int] = {}
    zeros = 0
    for a, b, al in zip(cd.fx, cd.fy, cd.alpha):
        v = (int(a), int(b), int(al))
        if v == (0, 0, 0):
            zeros += 1
            continue
        lead = next(c for c in v if c)
        inv = pow(lead, -1, p)
        key = tuple((c * inv) % p for c in v)
        reps[key] = reps.get(key, 0) + 1
    if not reps:
        return (np.empty((0, 3), dtype=np.int64),
                np.empty(0, dtype=np.int64), zeros)
    arr = np.array(sorted(reps), dtype=np.int64)
    cnt = np.array([reps[tuple(row)] for row in arr.tolist()], dtype=np.int64)
    return arr, cnt, zeros


def _count_aggregated(cd: CurveData, k: int) -> RankTupleCounts:
    if k not in (1, 2, 3):
        raise ValueError("aggregated counting supports k in {1, 2, 3}")
    p = cd.pm.p
    reps, cnt, zeros = _line_classes(cd)
    u = len(reps)

    # rank 1: all jets on one projective line (zero jets may ride along),
    # minus the all-zero tuples
    m1 = sum(_falling(int(t) + zeros, k) - _falling(zeros, k) for t in cnt)
    if k == 1:
        return RankTupleCounts(1, m1, 0)
    if u < 2:
        return RankTupleCounts(k, m1, 0)

    # cross products of all line pairs; the third cross coordinate is the
    # determinant of the two gradient projections, so a plane has
    # independent gradient columns iff its normal has a nonzero last entry
    r0, r1, r2 = reps[:, 0], reps[:, 1], reps[:, 2]
    n0 = (np.outer(r1, r2) - np.outer(r2, r1)) % p
    n1 = (np.outer(r2, r0) - np.outer(r0, r2)) % p
    n2 = (np.outer(r0, r1) - np.outer(r1, r0)) % p

    if k == 2:
        pairs = np.outer(cnt, cnt)
        m2 = int(pairs[n2 != 0].sum())
        return RankTupleCounts(2, m1, m2)

    # k == 3: enumerate the distinct planes spanned by line pairs
    iu, ju = np.triu_indices(u, 1)
    normals = np.stack([n0[iu, ju], n1[iu, ju], n2[iu, ju]], axis=1)
    normals = _canonicalize_rows(normals, p)
    key = (normals[:, 0] * p + normals[:, 1]) * p + normals[:, 2]
    _, first = np.unique(key, return_index=True)
    normals = normals[np.sort(first)]

    z3 = _falling(zeros, 3)
    g = np.array([_falling(int(t) + zeros, 3) - z3 for t in cnt],
                 dtype=np.int64)
    m2 = 0
    chunk = 20_000
    for s in range(0, len(normals), chunk):
        nb = normals[s:s + chunk]
        member = (reps @ nb.T) % p == 0              # u x chunk line-in-plane
        n_h = zeros + cnt @ member                   # points per plane
        a_h = g @ member + z3                        # rank<=1 triples in plane
        full = (n_h * (n_h - 1) * (n_h - 2)) - a_h   # rank-2 triples
        m2 += int(full[nb[:, 2] != 0].sum())
    return RankTupleCounts(3, m1, int(m2))


def _canonicalize_rows(vectors: np.ndarray, p: int) -> np.ndarray:
    """Scale each nonzero row so its first nonzero coordinate is 1 (mod p)."""
    inv = np.array([0] + [pow(i, -1, p) for i in range(1, p)], dtype=np.int64)
    out = vectors % p
    lead = np.where(out[:, 0] != 0, out[:, 0],
                    np.where(out[:, 1] != 0, out[:, 1], out[:, 2]))
    scale = inv[lead]
    return (out * scale[:, None]) % p


# ---------------------------------------------------------------------------
# The tuple-count identity
# ---------------------------------------------------------------------------

def prop5_identity_check(cd: CurveData, k: int,
                         oracle_bound_k2: int = 31,
                         oracle_bound_k3: int = 13
                         ) -> tuple[Fraction, Fraction]:
    """Exact-rational check of the k-fold product-expectation identity.

    The left side sums, over ordered pairwise-distinct k-tuples, the count
    of (i, j) cells solving every jet line simultaneously, divided by p^2
    (a brute-force cell scan, independent of the rank machinery).  The
    right side is m_k2 / p^2 + m_k1 / p from the aggregated counter.
    """
    p = cd.pm.p
    if k >= 3 and p > oracle_bound_k3:
        raise OracleBoundExceeded(f"p={p} exceeds k>=3 bound {oracle_bound_k3}")
    if k == 2 and p > oracle_bound_k2:
        raise OracleBoundExceeded(f"p={p} exceeds k=2 bound {oracle_bound_k2}")
    jets = cd.jets
    lhs = Fraction(0)
    for combo in itertools.permutations(range(cd.m), k):
        rows = [jets[i] for i in combo]
        n = sum(
            1
            for i in range(p) for j in range(p)
            if all((row.alpha + i * row.a + j * row.b) % p == 0
                   for row in rows)
        )
        lhs += Fraction(n, p * p)
    counts = count_rank_tuples(cd, k, algorithm="aggregated")
    rhs = Fraction(counts.m_k2, p * p) + Fraction(counts.m_k1, p)
    return lhs, rhs
