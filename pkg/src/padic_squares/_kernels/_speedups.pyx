# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernels: same contracts as the NumPy fallback `_pykernels`.

All inputs are int64 with coefficients reduced modulo the working modulus;
callers guarantee modulus <= KERNEL_MAX_MODULUS so products fit in int64.
"""

import numpy as np

cimport numpy as cnp

cnp.import_array()

BACKEND = "cython"

ctypedef cnp.int64_t i64


cdef inline i64 mod_pow(i64 base, i64 exp, i64 m) nogil:
    cdef i64 r = 1 % m
    base %= m
    while exp > 0:
        if exp & 1:
            r = (r * base) % m
        base = (base * base) % m
        exp >>= 1
    return r


cdef inline i64 mod_inv(i64 a, i64 p) nogil:
    return mod_pow(a % p, p - 2, p)


cdef void _fill_row_coeffs(i64[::1] ie, i64[::1] je, i64[::1] ce,
                           i64 x, i64 modulus, i64[::1] cy,
                           i64[::1] xtab) nogil:
    cdef Py_ssize_t t, k
    cdef Py_ssize_t maxi = xtab.shape[0] - 1
    for k in range(cy.shape[0]):
        cy[k] = 0
    xtab[0] = 1 % modulus
    for k in range(1, maxi + 1):
        xtab[k] = (xtab[k - 1] * x) % modulus
    for t in range(ie.shape[0]):
        cy[je[t]] = (cy[je[t]] + ce[t] * xtab[ie[t]]) % modulus


def curve_scan(i64[::1] ie, i64[::1] je, i64[::1] ce, long p,
               long x0, long x1):
    """Points of f = 0 (mod p) with x in [x0, x1); see _pykernels.curve_scan."""
    cdef i64 p2 = <i64>p * p
    cdef Py_ssize_t nterms = ie.shape[0]
    cdef i64 degy = 0, maxi = 0
    cdef Py_ssize_t t
    for t in range(nterms):
        if je[t] > degy:
            degy = je[t]
        if ie[t] > maxi:
            maxi = ie[t]
    cdef i64[::1] cy = np.zeros(degy + 1, dtype=np.int64)
    cdef i64[::1] xtab = np.zeros(maxi + 1, dtype=np.int64)
    cdef i64 x, y, acc, d
    cdef Py_ssize_t cap = 256
    cdef cnp.ndarray[i64, ndim=1] rx, ry, ra
    rx = np.empty(cap, dtype=np.int64)
    ry = np.empty(cap, dtype=np.int64)
    ra = np.empty(cap, dtype=np.int64)
    cdef Py_ssize_t n = 0
    for x in range(x0, x1):
        _fill_row_coeffs(ie, je, ce, x, p2, cy, xtab)
        for y in range(p):
            acc = cy[degy]
            for d in range(degy - 1, -1, -1):
                acc = (acc * y + cy[d]) % p2
            if acc % p == 0:
                if n == cap:
                    cap *= 2
                    rx = np.concatenate([rx, np.empty(cap - n, dtype=np.int64)])
                    ry = np.concatenate([ry, np.empty(cap - n, dtype=np.int64)])
                    ra = np.concatenate([ra, np.empty(cap - n, dtype=np.int64)])
                rx[n] = x
                ry[n] = y
                ra[n] = acc // p
                n += 1
    return rx[:n].copy(), ry[:n].copy(), ra[:n].copy()


def scatter_scan(i64[::1] ie, i64[::1] je, i64[::1] ce, long p, long size):
    """(x, y) in [0, size)^2 with nu_p exactly 1; see _pykernels.scatter_scan."""
    cdef i64 p2 = <i64>p * p
    cdef Py_ssize_t nterms = ie.shape[0]
    cdef i64 degy = 0, maxi = 0
    cdef Py_ssize_t t
    for t in range(nterms):
        if je[t] > degy:
            degy = je[t]
        if ie[t] > maxi:
            maxi = ie[t]
    cdef i64[::1] cy = np.zeros(degy + 1, dtype=np.int64)
    cdef i64[::1] xtab = np.zeros(maxi + 1, dtype=np.int64)
    cdef Py_ssize_t cap = 1024
    cdef cnp.ndarray[i64, ndim=1] rx = np.empty(cap, dtype=np.int64)
    cdef cnp.ndarray[i64, ndim=1] ry = np.empty(cap, dtype=np.int64)
    cdef Py_ssize_t n = 0
    cdef i64 x, y, yr, acc, d
    for x in range(size):
        _fill_row_coeffs(ie, je, ce, x % p2, p2, cy, xtab)
        for y in range(size):
            yr = y % p2
            acc = cy[degy]
            for d in range(degy - 1, -1, -1):
                acc = (acc * yr + cy[d]) % p2
            if acc % p == 0 and acc != 0:
                if n == cap:
                    cap *= 2
                    rx = np.concatenate([rx, np.empty(cap - n, dtype=np.int64)])
                    ry = np.concatenate([ry, np.empty(cap - n, dtype=np.int64)])
                rx[n] = x
                ry[n] = y
                n += 1
    return rx[:n].copy(), ry[:n].copy()


def eval_points_mod(i64[::1] ie, i64[::1] je, i64[::1] ce, object modulus,
                    object xs_in, object ys_in):
    """Evaluate at parallel point arrays; see _pykernels.eval_points_mod."""
    cdef i64 m = modulus
    cdef cnp.ndarray[i64, ndim=1] xs = \
        np.ascontiguousarray(np.asarray(xs_in, dtype=np.int64) % m)
    cdef cnp.ndarray[i64, ndim=1] ys = \
        np.ascontiguousarray(np.asarray(ys_in, dtype=np.int64) % m)
    cdef Py_ssize_t npts = xs.shape[0]
    cdef cnp.ndarray[i64, ndim=1] out = np.zeros(npts, dtype=np.int64)
    cdef Py_ssize_t nterms = ie.shape[0]
    cdef i64 maxi = 0, maxj = 0
    cdef Py_ssize_t t, k
    for t in range(nterms):
        if ie[t] > maxi:
            maxi = ie[t]
        if je[t] > maxj:
            maxj = je[t]
    cdef i64[::1] xtab = np.zeros(maxi + 1, dtype=np.int64)
    cdef i64[::1] ytab = np.zeros(maxj + 1, dtype=np.int64)
    cdef i64 acc, x, y
    cdef Py_ssize_t i
    for i in range(npts):
        x = xs[i]
        y = ys[i]
        xtab[0] = 1 % m
        for k in range(1, maxi + 1):
            xtab[k] = (xtab[k - 1] * x) % m
        ytab[0] = 1 % m
        for k in range(1, maxj + 1):
            ytab[k] = (ytab[k - 1] * y) % m
        acc = 0
        for t in range(nterms):
            acc = (acc + ce[t] * xtab[ie[t]] % m * ytab[je[t]]) % m
        out[i] = acc
    return out


def block_sweep_hist(object a_in, object b_in, object alpha_in, long p,
                     long band_rows=2048):
    """Line-incidence histogram over the p x p grid; see _pykernels."""
    cdef cnp.ndarray[i64, ndim=1] a = \
        np.ascontiguousarray(np.asarray(a_in, dtype=np.int64))
    cdef cnp.ndarray[i64, ndim=1] b = \
        np.ascontiguousarray(np.asarray(b_in, dtype=np.int64))
    cdef cnp.ndarray[i64, ndim=1] alpha = \
        np.ascontiguousarray(np.asarray(alpha_in, dtype=np.int64))
    cdef Py_ssize_t m = a.shape[0]
    cdef cnp.ndarray[i64, ndim=1] hist
    if m == 0:
        hist = np.zeros(1, dtype=np.int64)
        hist[0] = <i64>p * p
        return hist
    hist = np.zeros(m + 1, dtype=np.int64)
    cdef cnp.ndarray[i64, ndim=1] binv = np.zeros(m, dtype=np.int64)
    cdef cnp.ndarray[i64, ndim=1] vrow = np.zeros(m, dtype=np.int64)
    cdef Py_ssize_t i
    for i in range(m):
        if b[i] != 0:
            binv[i] = mod_inv(b[i], p)
            vrow[i] = -1
        else:
            vrow[i] = ((p - alpha[i] % p) % p) * mod_inv(a[i], p) % p
    cdef long k0, k1, k, l
    cdef i64 val
    cdef cnp.ndarray[cnp.uint32_t, ndim=2] band
    cdef long rows
    for k0 in range(0, p, band_rows):
        k1 = min(k0 + band_rows, p)
        rows = k1 - k0
        band = np.zeros((rows, p), dtype=np.uint32)
        with nogil:
            for i in range(m):
                if vrow[i] < 0:
                    for k in range(k0, k1):
                        l = ((p - (alpha[i] + a[i] * k) % p) % p) * binv[i] % p
                        band[k - k0, l] += 1
                elif k0 <= vrow[i] < k1:
                    for l in range(p):
                        band[vrow[i] - k0, l] += 1
        hist += np.bincount(band.ravel(), minlength=m + 1).astype(np.int64)
    return hist
