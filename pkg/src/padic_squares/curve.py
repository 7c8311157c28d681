"""Enumeration of the mod-p zero set of f and its jet vectors.

The curve is the set of (x, y) in [0,p)^2 with f(x, y) = 0 (mod p).  Each
point carries a jet vector

    (f_x mod p,  f_y mod p,  (f(x, y) / p) mod p)

whose last entry is well defined because p divides f(x, y) on the curve; it
is read off the mod-p^2 residue.  A point is smooth when its gradient part
is nonzero.  Points are kept sorted by (x, y) ascending and this order is
the fixed point numbering used everywhere downstream.
"""

from __future__ import annotations

import csv
import warnings
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from functools import cached_property
from typing import NamedTuple

import numpy as np

from . import _kernels
from .poly import KERNEL_MAX_MODULUS, Polynomial, PrimeModulus

__all__ = ["CurvePoint", "JetVector", "CurveData", "enumerate_curve",
           "smooth_points", "write_curve_csv", "CURVE_CSV_HEADER"]

CURVE_CSV_HEADER = ["x", "y", "fx", "fy", "alpha"]


class CurvePoint(NamedTuple):
    x: int
    y: int


class JetVector(NamedTuple):
    a: int      # f_x mod p
    b: int      # f_y mod p
    alpha: int  # (f / p) mod p

    @property
    def degenerate(self) -> bool:
        return self.a == 0 and self.b == 0


@dataclass(eq=False)
class CurveData:
    """Curve points plus parallel jet data, in fixed sorted order."""

    pm: PrimeModulus
    f: Polynomial
    xs: np.ndarray
    ys: np.ndarray
    fx: np.ndarray
    fy: np.ndarray
    alpha: np.ndarray

    def __post_init__(self):
        for arr in (self.xs, self.ys, self.fx, self.fy, self.alpha):
            arr.setflags(write=False)

    @property
    def m(self) -> int:
        return len(self.xs)

    def __len__(self) -> int:
        return self.m

    @cached_property
    def points(self) -> list[CurvePoint]:
        return [CurvePoint(int(x), int(y)) for x, y in zip(self.xs, self.ys)]

    @cached_property
    def jets(self) -> list[JetVector]:
        return [JetVector(int(a), int(b), int(al))
                for a, b, al in zip(self.fx, self.fy, self.alpha)]

    @cached_property
    def smooth_mask(self) -> np.ndarray:
        return (self.fx != 0) | (self.fy != 0)

    @property
    def all_smooth(self) -> bool:
        return bool(self.smooth_mask.all())

    @property
    def zero_jet_count(self) -> int:
        """Points whose whole jet vector vanishes (rank-0 rows)."""
        return int(((self.fx == 0) & (self.fy == 0) & (self.alpha == 0)).sum())


def enumerate_curve(f: Polynomial, pm: PrimeModulus,
                    threads: int = 0) -> CurveData:
    """Scan [0,p)^2 for the curve and compute every jet vector.

    The scan partitions rows of x into bands; with ``threads`` > 1 the bands
    run on a thread pool and are merged in band order, so the result is
    identical for any worker count.  A constant term divisible by p is
    legal but flagged, since the closed-form block counts assume otherwise.
    """
    p = pm.p
    if pm.p_squared > KERNEL_MAX_MODULUS:
        raise ValueError(f"p={p} is beyond the O(p^2) enumeration regime")
    if f.constant_term % p == 0:
        warnings.warn(
            f"constant term of f is divisible by p={p}; the block-count "
            "closed forms assume a nonzero constant term", stacklevel=2)
    ie, je, ce = f.term_arrays(pm.p_squared)
    if len(ie) == 0:
        # zero polynomial: vanishes everywhere; alpha = 0 on every point
        xs, ys = np.meshgrid(np.arange(p, dtype=np.int64),
                             np.arange(p, dtype=np.int64), indexing="ij")
        xs, ys = xs.ravel(), ys.ravel()
        zeros = np.zeros(len(xs), dtype=np.int64)
        return CurveData(pm, f, xs, ys, zeros, zeros.copy(), zeros.copy())

    nworkers = threads if threads > 0 else 1
    if nworkers == 1:
        xs, ys, alpha = _kernels.curve_scan(ie, je, ce, p, 0, p)
    else:
        band = -(-p // nworkers)
        spans = [(k, min(k + band, p)) for k in range(0, p, band)]
        with ThreadPoolExecutor(max_workers=nworkers) as pool:
            parts = list(pool.map(
                lambda s: _kernels.curve_scan(ie, je, ce, p, s[0], s[1]),
                spans))
        xs = np.concatenate([part[0] for part in parts])
        ys = np.concatenate([part[1] for part in parts])
        alpha = np.concatenate([part[2] for part in parts])

    dfx, dfy = f.derivative("x"), f.derivative("y")
    fx = _eval_at_points(dfx, p, xs, ys)
    fy = _eval_at_points(dfy, p, xs, ys)
    return CurveData(pm, f, xs, ys, fx, fy, alpha)


def _eval_at_points(g: Polynomial, modulus: int, xs: np.ndarray,
                    ys: np.ndarray) -> np.ndarray:
    if not g:
        return np.zeros(len(xs), dtype=np.int64)
    ie, je, ce = g.term_arrays(modulus)
    return _kernels.eval_points_mod(ie, je, ce, modulus, xs, ys)


def smooth_points(cd: CurveData) -> list[int]:
    """Indices of the points with nonvanishing gradient."""
    return [int(i) for i in np.nonzero(cd.smooth_mask)[0]]


def write_curve_csv(cd: CurveData, path) -> None:
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(CURVE_CSV_HEADER)
        for x, y, a, b, al in zip(cd.xs, cd.ys, cd.fx, cd.fy, cd.alpha):
            w.writerow([int(x), int(y), int(a), int(b), int(al)])
