"""Timing comparison of the compiled and pure-Python kernel backends.

Runs the two hot kernels (curve enumeration scan, block-line sweep) on a
few problem sizes with each available backend and prints a small table.

Usage: python3 benchmarks/bench_kernels.py [--repeat N]
"""

from __future__ import annotations

import argparse
import time

import numpy as np

from padic_squares import enumerate_curve, parse_polynomial
from padic_squares.poly import PrimeModulus
from padic_squares._kernels import backends

POLY = "x^3+y^2+x*y+1"
PRIMES = (503, 1009, 3001)


def _time(fn, repeat: int) -> float:
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--repeat", type=int, default=3)
    args = parser.parse_args()

    f = parse_polynomial(POLY)
    impls = backends()
    print(f"backends: {', '.join(sorted(impls))}")
    print(f"polynomial: {POLY}\n")
    header = f"{'kernel':18s} {'p':>6s} " + "".join(
        f"{name + ' (ms)':>14s}" for name in sorted(impls))
    print(header)
    print("-" * len(header))

    for p in PRIMES:
        pm = PrimeModulus(p)
        ie, je, ce = f.term_arrays(pm.p_squared)
        times = {
            name: _time(lambda m=mod: m.curve_scan(ie, je, ce, p, 0, p),
                        args.repeat)
            for name, mod in impls.items()
        }
        row = f"{'curve_scan':18s} {p:>6d} " + "".join(
            f"{times[name] * 1e3:>14.2f}" for name in sorted(impls))
        print(row)

        cd = enumerate_curve(f, pm)
        sm = cd.smooth_mask
        a = np.ascontiguousarray(cd.fx[sm])
        b = np.ascontiguousarray(cd.fy[sm])
        al = np.ascontiguousarray(cd.alpha[sm])
        times = {
            name: _time(lambda m=mod: m.block_sweep_hist(a, b, al, p, 2048),
                        args.repeat)
            for name, mod in impls.items()
        }
        row = f"{'block_sweep_hist':18s} {p:>6d} " + "".join(
            f"{times[name] * 1e3:>14.2f}" for name in sorted(impls))
        print(row)


if __name__ == "__main__":
    main()
