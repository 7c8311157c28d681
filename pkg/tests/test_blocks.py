"""Block-count closed forms vs oracles; rank classes; tuple counts."""

import warnings
from fractions import Fraction

import pytest

from padic_squares import (BudgetExceeded, DegenerateJet, JetVector,
                           OracleBoundExceeded, RankClass, count_rank_tuples,
                           enumerate_curve, pair_joint_closed_form,
                           pair_joint_oracle, pair_joint_pmf,
                           parse_polynomial, prop5_identity_check, rank_class,
                           smooth_points, total_val1_in_p2_square,
                           val1_square_oracle)
from padic_squares.blocks import block_count_closed_form, block_count_oracle
from padic_squares.poly import PrimeModulus

from conftest import SUITE_TEXTS


def _curve(text, p):
    f = parse_polynomial(text)
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        return f, enumerate_curve(f, PrimeModulus(p))


# -- single-point splits ----------------------------------------------------

@pytest.mark.parametrize("text", SUITE_TEXTS)
@pytest.mark.parametrize("p", [5, 7])
def test_block_split_closed_equals_oracle(text, p):
    f, cd = _curve(text, p)
    pm = cd.pm
    for pt, jet in zip(cd.points, cd.jets):
        assert block_count_closed_form(jet, pm) == block_count_oracle(f, pm, pt)


def test_block_split_smooth_values():
    pm = PrimeModulus(7)
    assert block_count_closed_form(JetVector(3, 1, 4), pm) == (42, 7)
    assert block_count_closed_form(JetVector(0, 2, 0), pm) == (42, 7)


def test_block_split_degenerate_values():
    pm = PrimeModulus(7)
    assert block_count_closed_form(JetVector(0, 0, 3), pm) == (49, 0)
    assert block_count_closed_form(JetVector(0, 0, 0), pm) == (0, 49)


def test_block_split_degenerate_matches_oracle():
    # (x+y)^2 + 5 and (x+y)^2 + 25 make every point degenerate at p = 5,
    # with alpha = 1 and alpha = 0 respectively
    for text in ("x^2+2*x*y+y^2+5", "x^2+2*x*y+y^2+25"):
        f, cd = _curve(text, 5)
        for pt, jet in zip(cd.points, cd.jets):
            assert jet.degenerate
            assert (block_count_closed_form(jet, cd.pm)
                    == block_count_oracle(f, cd.pm, pt))


def test_block_oracle_bound():
    f, cd = _curve("x+y+1", 5)
    with pytest.raises(OracleBoundExceeded):
        block_count_oracle(f, cd.pm, cd.points[0], oracle_bound=3)


# -- square totals ----------------------------------------------------------

@pytest.mark.parametrize("text", ["x+y+1", "x^3+y^2+x*y+1"])
def test_val1_total_matches_square_scan(text):
    f, cd = _curve(text, 5)
    assert total_val1_in_p2_square(cd) == val1_square_oracle(f, cd.pm)


def test_val1_total_smooth_closed_form():
    _, cd = _curve("x^3+y^2+x*y+1", 7)
    assert cd.all_smooth
    assert total_val1_in_p2_square(cd) == cd.m * 7 * 6


def test_val1_square_oracle_bound():
    f, cd = _curve("x+y+1", 5)
    with pytest.raises(OracleBoundExceeded):
        val1_square_oracle(f, cd.pm, oracle_bound=3)


# -- pair splits ------------------------------------------------------------

@pytest.mark.parametrize("p", [5, 7])
def test_pair_split_closed_equals_oracle(p):
    f, cd = _curve("x^3+y^2+x*y+1", p)
    pm = cd.pm
    for i in smooth_points(cd):
        for j in smooth_points(cd):
            assert (pair_joint_closed_form(cd.jets[i], cd.jets[j], pm)
                    == pair_joint_oracle(f, pm, cd.points[i], cd.points[j]))


def test_pair_split_components_sum_to_p2():
    _, cd = _curve("x^3+y^2+x*y+1", 11)
    pm = cd.pm
    for i in smooth_points(cd)[:5]:
        for j in smooth_points(cd)[:5]:
            counts = pair_joint_closed_form(cd.jets[i], cd.jets[j], pm)
            assert counts.total == 121


def test_pair_split_rejects_degenerate():
    pm = PrimeModulus(5)
    with pytest.raises(DegenerateJet):
        pair_joint_closed_form(JetVector(0, 0, 1), JetVector(1, 2, 3), pm)


def test_pair_pmf_sums_to_one():
    _, cd = _curve("x^3+y^2+x*y+1", 7)
    pm = cd.pm
    counts = pair_joint_closed_form(cd.jets[0], cd.jets[1], pm)
    pmf = pair_joint_pmf(counts, pm)
    assert sum(pmf.values()) == 1
    assert pmf[(1, 1)] == Fraction(counts.n_gg, 49)


# -- rank classification ----------------------------------------------------

def test_rank_class_cases():
    pm = PrimeModulus(5)
    assert rank_class([(0, 0, 0)], pm) is RankClass.RANK0
    assert rank_class([(1, 2, 3)], pm) is RankClass.RANK1
    assert rank_class([(1, 2, 3), (2, 4, 1)], pm) is RankClass.RANK1
    assert rank_class([(1, 0, 0), (0, 1, 0)], pm) \
        is RankClass.RANK2_FIRST_TWO_INDEP
    assert rank_class([(1, 2, 0), (2, 4, 1)], pm) \
        is RankClass.RANK2_FIRST_TWO_DEP
    assert rank_class([(1, 0, 0), (0, 1, 0), (0, 0, 1)], pm) \
        is RankClass.RANK3
    with pytest.raises(ValueError):
        rank_class([], pm)


def test_rank_class_scaling_invariance():
    pm = PrimeModulus(7)
    base = [(1, 2, 3), (4, 5, 6)]
    want = rank_class(base, pm)
    for s in range(1, 7):
        scaled = [(s * a % 7, s * b % 7, s * c % 7) for a, b, c in base]
        assert rank_class(scaled, pm) is want


# -- tuple counting ---------------------------------------------------------

@pytest.mark.parametrize("text", SUITE_TEXTS)
@pytest.mark.parametrize("p", [5, 7, 11])
@pytest.mark.parametrize("k", [1, 2, 3])
def test_tuple_counts_naive_equals_aggregated(text, p, k):
    _, cd = _curve(text, p)
    naive = count_rank_tuples(cd, k, algorithm="naive")
    agg = count_rank_tuples(cd, k, algorithm="aggregated")
    assert (naive.m_k1, naive.m_k2) == (agg.m_k1, agg.m_k2)


def test_tuple_counts_k1():
    _, cd = _curve("x^3+y^2+x*y+1", 7)
    counts = count_rank_tuples(cd, 1)
    assert counts.m_k1 == cd.m - cd.zero_jet_count
    assert counts.m_k2 == 0


def test_tuple_counts_zero_jets_excluded():
    # all five points carry the all-zero jet; no tuple has positive rank
    _, cd = _curve("x^2+2*x*y+y^2+25", 5)
    assert cd.zero_jet_count == 5
    for k in (1, 2, 3):
        counts = count_rank_tuples(cd, k)
        assert (counts.m_k1, counts.m_k2) == (0, 0)


def test_tuple_counts_shared_line():
    # all five jets equal (0, 0, 1): every pair and triple has rank 1
    _, cd = _curve("x^2+2*x*y+y^2+5", 5)
    assert count_rank_tuples(cd, 2).m_k1 == 5 * 4
    assert count_rank_tuples(cd, 3).m_k1 == 5 * 4 * 3


def test_tuple_budget():
    _, cd = _curve("x^3+y^2+x*y+1", 11)
    with pytest.raises(BudgetExceeded):
        count_rank_tuples(cd, 3, algorithm="naive", budget=100)


def test_tuple_count_validation():
    _, cd = _curve("x+y+1", 5)
    with pytest.raises(ValueError):
        count_rank_tuples(cd, 0)
    with pytest.raises(ValueError):
        count_rank_tuples(cd, 4, algorithm="aggregated")
    with pytest.raises(ValueError):
        count_rank_tuples(cd, 2, algorithm="guess")


# -- the product-expectation identity ---------------------------------------

@pytest.mark.parametrize("text", SUITE_TEXTS)
@pytest.mark.parametrize("p,k", [(5, 2), (5, 3), (7, 2)])
def test_identity_exact(text, p, k):
    _, cd = _curve(text, p)
    lhs, rhs = prop5_identity_check(cd, k)
    assert isinstance(lhs, Fraction) and isinstance(rhs, Fraction)
    assert lhs == rhs


def test_identity_bounds():
    _, cd = _curve("x+y+1", 37)
    with pytest.raises(OracleBoundExceeded):
        prop5_identity_check(cd, 2)
    _, cd = _curve("x+y+1", 17)
    with pytest.raises(OracleBoundExceeded):
        prop5_identity_check(cd, 3)
