"""NumPy fallback for the hot kernels.

Same contracts as the compiled module `_speedups`: every function takes the
polynomial as flat int64 term arrays (exponents ie/je and coefficients
already reduced modulo the working modulus) and returns int64 arrays.  All
arithmetic stays below 2**63 as long as modulus <= KERNEL_MAX_MODULUS, which
the callers in the library enforce.
"""

from __future__ import annotations

import numpy as np

BACKEND = "python"


def _row_coeffs(ie, je, ce, x: int, modulus: int, degy: int):
    """Coefficients of the univariate specialization f(x, .) mod modulus."""
    cy = np.zeros(degy + 1, dtype=np.int64)
    maxi = int(ie.max()) if len(ie) else 0
    tab = np.empty(maxi + 1, dtype=np.int64)
    tab[0] = 1 % modulus
    for k in range(1, maxi + 1):
        tab[k] = (int(tab[k - 1]) * x) % modulus
    for t in range(len(ie)):
        cy[je[t]] = (cy[je[t]] + ce[t] * tab[ie[t]]) % modulus
    return cy


def _eval_univariate(cy, ys, modulus: int):
    """Horner evaluation of sum cy[d] * y^d over a vector of y values."""
    acc = np.full_like(ys, int(cy[-1]) % modulus)
    for d in range(len(cy) - 2, -1, -1):
        acc = (acc * ys + int(cy[d])) % modulus
    return acc


def curve_scan(ie, je, ce, p: int, x0: int, x1: int):
    """Points of f = 0 (mod p) with x in [x0, x1), plus alpha = (f/p) mod p.

    Coefficients must be reduced mod p*p.  Returns (xs, ys, alphas) sorted
    by (x, y) ascending.
    """
    p2 = p * p
    degy = int(je.max()) if len(je) else 0
    ys_range = np.arange(p, dtype=np.int64)
    out_x, out_y, out_a = [], [], []
    for x in range(x0, x1):
        cy = _row_coeffs(ie, je, ce, x, p2, degy)
        vals = _eval_univariate(cy, ys_range, p2)
        hit = np.nonzero(vals % p == 0)[0]
        if len(hit):
            out_x.append(np.full(len(hit), x, dtype=np.int64))
            out_y.append(hit.astype(np.int64))
            out_a.append(vals[hit] // p)
    if not out_x:
        empty = np.empty(0, dtype=np.int64)
        return empty, empty.copy(), empty.copy()
    return (np.concatenate(out_x), np.concatenate(out_y),
            np.concatenate(out_a))


def scatter_scan(ie, je, ce, p: int, size: int):
    """(x, y) in [0, size)^2 with nu_p(f(x, y)) exactly 1.

    Coefficients must be reduced mod p*p; valuation 1 amounts to
    f = 0 mod p and f != 0 mod p^2, read off the mod-p^2 residue.
    """
    p2 = p * p
    degy = int(je.max()) if len(je) else 0
    ys = np.arange(size, dtype=np.int64) % p2
    out_x, out_y = [], []
    for x in range(size):
        cy = _row_coeffs(ie, je, ce, x % p2, p2, degy)
        vals = _eval_univariate(cy, ys, p2)
        hit = np.nonzero((vals % p == 0) & (vals != 0))[0]
        if len(hit):
            out_x.append(np.full(len(hit), x, dtype=np.int64))
            out_y.append(hit.astype(np.int64))
    if not out_x:
        empty = np.empty(0, dtype=np.int64)
        return empty, empty.copy()
    return np.concatenate(out_x), np.concatenate(out_y)


def eval_points_mod(ie, je, ce, modulus: int, xs, ys):
    """Evaluate the polynomial mod `modulus` at parallel point arrays."""
    xs = np.asarray(xs, dtype=np.int64) % modulus
    ys = np.asarray(ys, dtype=np.int64) % modulus
    maxi = int(ie.max()) if len(ie) else 0
    maxj = int(je.max()) if len(je) else 0
    xpow = [np.ones_like(xs)]
    for _ in range(maxi):
        xpow.append((xpow[-1] * xs) % modulus)
    ypow = [np.ones_like(ys)]
    for _ in range(maxj):
        ypow.append((ypow[-1] * ys) % modulus)
    acc = np.zeros_like(xs)
    for t in range(len(ie)):
        acc = (acc + ce[t] * xpow[ie[t]] % modulus * ypow[je[t]]) % modulus
    return acc


def block_sweep_hist(a, b, alpha, p: int, band_rows: int = 2048):
    """Histogram of the per-cell line-incidence counts over the p x p grid.

    Each jet (a, b, alpha) with (a, b) != (0, 0) increments the p cells of
    the line alpha + k*a + l*b = 0 (mod p).  Degenerate jets are handled by
    the caller.  Returns hist where hist[v] = number of cells hit v times;
    the grid is processed in bands of `band_rows` rows of k.
    """
    a = np.asarray(a, dtype=np.int64)
    b = np.asarray(b, dtype=np.int64)
    alpha = np.asarray(alpha, dtype=np.int64)
    m = len(a)
    hist = np.zeros(m + 1, dtype=np.int64)
    if m == 0:
        hist0 = np.zeros(1, dtype=np.int64)
        hist0[0] = p * p
        return hist0
    binv = np.array([pow(int(v), -1, p) if v else 0 for v in b],
                    dtype=np.int64)
    sloped = np.nonzero(b != 0)[0]
    vertical = np.nonzero(b == 0)[0]  # a != 0 here: full row k = -alpha/a
    vrows = ((-alpha[vertical] % p) * np.array(
        [pow(int(v), -1, p) for v in a[vertical]], dtype=np.int64)) % p
    for k0 in range(0, p, band_rows):
        k1 = min(k0 + band_rows, p)
        ks = np.arange(k0, k1, dtype=np.int64)
        band = np.zeros((k1 - k0, p), dtype=np.int64)
        for i in sloped:
            ls = (-(alpha[i] + a[i] * ks) % p) * binv[i] % p
            band[ks - k0, ls] += 1
        for k in vrows:
            if k0 <= k < k1:
                band[k - k0, :] += 1
        hist += np.bincount(band.ravel(), minlength=m + 1)
    return hist
