"""Valuation statistics of bivariate integer polynomials on p-adic squares.

Given f in Z[x, y] and an odd prime p, this package enumerates the mod-p
curve f = 0 with its jet vectors, computes exact closed-form valuation
splits for the p x p blocks above each curve point (with brute-force
oracles for every closed form), classifies jet tuples by matrix rank,
builds the distribution of the per-block count X against Poisson(1), and
measures equidistribution of the jet multiset through box discrepancy
bounds and exponential sums.
"""

from ._kernels import BACKEND as KERNEL_BACKEND
from .blocks import (PairJointCounts, RankClass, RankTupleCounts,
                     block_count_closed_form, block_count_oracle,
                     count_rank_tuples, pair_joint_closed_form,
                     pair_joint_oracle, pair_joint_pmf,
                     prop5_identity_check, rank_class,
                     total_val1_in_p2_square, val1_square_oracle)
from .curve import (CurveData, CurvePoint, JetVector, enumerate_curve,
                    smooth_points, write_curve_csv)
from .distribution import (BlockHistogram, PoissonComparison, bell,
                           block_histogram_naive, block_histogram_sweep,
                           poisson_compare, stirling2)
from .equidist import (BoxFamily, DiscrepancyReport, ExpSumReport,
                       discrepancy_lower_bounds, etk_functional, exp_sum,
                       exp_sum_scan)
from .errors import (BudgetExceeded, DegenerateJet, EmptyCurve,
                     EmptyHistogram, OracleBoundExceeded, RangeTooLarge)
from .poly import (NegativeExponentError, ParseError, Polynomial,
                   PrimeModulus, UnsupportedVariableError, Valuation,
                   parse_polynomial, valuation)

__version__ = "0.1.0"

__all__ = [
    "KERNEL_BACKEND", "__version__",
    "Polynomial", "PrimeModulus", "Valuation", "parse_polynomial",
    "valuation", "ParseError", "UnsupportedVariableError",
    "NegativeExponentError",
    "CurveData", "CurvePoint", "JetVector", "enumerate_curve",
    "smooth_points", "write_curve_csv",
    "PairJointCounts", "RankClass", "RankTupleCounts",
    "block_count_closed_form", "block_count_oracle", "count_rank_tuples",
    "pair_joint_closed_form", "pair_joint_oracle", "pair_joint_pmf",
    "prop5_identity_check", "rank_class", "total_val1_in_p2_square",
    "val1_square_oracle",
    "BlockHistogram", "PoissonComparison", "bell", "block_histogram_naive",
    "block_histogram_sweep", "poisson_compare", "stirling2",
    "BoxFamily", "DiscrepancyReport", "ExpSumReport",
    "discrepancy_lower_bounds", "etk_functional", "exp_sum", "exp_sum_scan",
    "BudgetExceeded", "DegenerateJet", "EmptyCurve", "EmptyHistogram",
    "OracleBoundExceeded", "RangeTooLarge",
]
