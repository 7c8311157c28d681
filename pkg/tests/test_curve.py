"""Curve enumeration against direct scans; jets, ordering, concurrency."""

import csv

import numpy as np
import pytest

from padic_squares import (CurvePoint, JetVector, enumerate_curve,
                           parse_polynomial, smooth_points, write_curve_csv)
from padic_squares.curve import CURVE_CSV_HEADER
from padic_squares.poly import Polynomial, PrimeModulus

from conftest import SUITE_TEXTS


@pytest.mark.parametrize("text", SUITE_TEXTS)
@pytest.mark.parametrize("p", [5, 7, 13])
def test_points_match_direct_scan(text, p):
    f = parse_polynomial(text)
    cd = enumerate_curve(f, PrimeModulus(p))
    expected = [(x, y) for x in range(p) for y in range(p)
                if f.eval_mod(x, y, p) == 0]
    assert cd.points == [CurvePoint(x, y) for x, y in expected]
    assert cd.m == len(expected)


@pytest.mark.parametrize("text", SUITE_TEXTS)
@pytest.mark.parametrize("p", [5, 11])
def test_jets_match_direct_evaluation(text, p):
    f = parse_polynomial(text)
    fx, fy = f.derivative("x"), f.derivative("y")
    cd = enumerate_curve(f, PrimeModulus(p))
    for pt, jet in zip(cd.points, cd.jets):
        value = f.eval_exact(pt.x, pt.y)
        assert value % p == 0
        assert jet == JetVector(fx.eval_mod(pt.x, pt.y, p),
                                fy.eval_mod(pt.x, pt.y, p),
                                (value // p) % p)


def test_thread_count_does_not_change_result():
    f = parse_polynomial("x^3+y^2+x*y+1")
    pm = PrimeModulus(101)
    serial = enumerate_curve(f, pm, threads=1)
    for workers in (2, 3, 7):
        threaded = enumerate_curve(f, pm, threads=workers)
        for a, b in zip((serial.xs, serial.ys, serial.fx, serial.fy,
                         serial.alpha),
                        (threaded.xs, threaded.ys, threaded.fx, threaded.fy,
                         threaded.alpha)):
            assert np.array_equal(a, b)


def test_smooth_points_and_degenerate_jet():
    # this curve has exactly one gradient-vanishing point at p = 5
    f = parse_polynomial("x^3+y^3+x^2*y+y+1")
    cd = enumerate_curve(f, PrimeModulus(5))
    sm = smooth_points(cd)
    assert len(sm) == cd.m - 1
    (deg,) = [i for i in range(cd.m) if i not in sm]
    assert cd.jets[deg] == JetVector(0, 0, 1)
    assert cd.points[deg] == CurvePoint(1, 1)
    assert not cd.all_smooth
    assert cd.zero_jet_count == 0


def test_zero_polynomial_covers_square():
    pm = PrimeModulus(5)
    with pytest.warns(UserWarning):
        cd = enumerate_curve(Polynomial.zero(), pm)
    assert cd.m == 25
    assert cd.zero_jet_count == 25
    assert not cd.all_smooth
    assert set(cd.jets) == {JetVector(0, 0, 0)}


def test_constant_term_divisible_warning():
    pm = PrimeModulus(5)
    with pytest.warns(UserWarning, match="constant term"):
        enumerate_curve(parse_polynomial("x+y+5"), pm)


def test_no_warning_for_generic_poly():
    import warnings
    pm = PrimeModulus(5)
    with warnings.catch_warnings():
        warnings.simplefilter("error")
        enumerate_curve(parse_polynomial("x+y+1"), pm)


def test_point_count_near_p_for_suite_cubics():
    # irreducible curves keep m within a few sqrt(p) of p
    f = parse_polynomial("x^3+y^2+x*y+1")
    for p in (101, 211):
        cd = enumerate_curve(f, PrimeModulus(p))
        assert abs(cd.m - p) <= 4 * p ** 0.5


def test_arrays_are_read_only():
    cd = enumerate_curve(parse_polynomial("x+y+1"), PrimeModulus(5))
    with pytest.raises(ValueError):
        cd.xs[0] = 99


def test_modulus_regime_guard():
    f = parse_polynomial("x+y+1")
    big = PrimeModulus(2 ** 31 - 1)  # Mersenne prime; square overflows int64
    with pytest.raises(ValueError):
        enumerate_curve(f, big)


def test_curve_csv_round_trip(tmp_path):
    f = parse_polynomial("x^3+y^2+x*y+1")
    cd = enumerate_curve(f, PrimeModulus(7))
    path = tmp_path / "curve.csv"
    write_curve_csv(cd, path)
    with open(path, newline="") as fh:
        rows = list(csv.reader(fh))
    assert rows[0] == CURVE_CSV_HEADER
    parsed = [tuple(int(v) for v in row) for row in rows[1:]]
    assert parsed == [(x, y, a, b, al)
                      for (x, y), (a, b, al) in zip(cd.points, cd.jets)]
