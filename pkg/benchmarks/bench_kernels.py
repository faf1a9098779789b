"""Compiled vs numpy kernels.

Run with ``python3 benchmarks/bench_kernels.py [--repeat N]``.  Prints the
best-of-N wall time for each kernel on both backends and the speedup.
"""
import argparse
import math
import timeit

import numpy as np

from vortex_wigner import _kernels, _pykernels
from vortex_wigner.specfun import quad_nodes


def cases():
    rng = np.random.default_rng(0)
    m = 200_000
    x = rng.uniform(0, 30, m)
    pts = (rng.uniform(0, 400, m), rng.uniform(-200, 200, m), rng.uniform(0, 0.04, m),
           0.7 + rng.uniform(-0.03, 0.03, m), rng.uniform(-2e4, 2e4, m))
    ebar = math.sqrt(1 + 0.7**2)
    lognorm = math.lgamma(3) - math.lgamma(6)
    rule = quad_nodes("hermite", 40)
    p = np.array([0.008, -0.004, 0.706])
    r = np.array([60.0, 25.0, -30.0])
    return {
        "laguerre n=6 (2e5 pts)": lambda k: k.laguerre(6, 3, x),
        "wigner_closed (2e5 pts)": lambda k: k.wigner_closed(0, 2, 3, lognorm, 0.01, 1.0, ebar,
                                                             0.7, *pts, 0, False),
        "oracle_sum scalar N=40": lambda k: k.oracle_sum(0, 1.0, 1, 2, 0.01, 1.0, ebar, 0.7, p, r,
                                                         300.0, rule.nodes, rule.weights,
                                                         rule.nodes, rule.weights),
        "oracle_sum dirac N=40": lambda k: k.oracle_sum(1, 1.0, 1, 2, 0.01, 1.0, ebar, 0.7, p, r,
                                                        300.0, rule.nodes, rule.weights,
                                                        rule.nodes, rule.weights),
    }


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()
    if _kernels.compiled is None:
        print("compiled extension not available; build with "
              "'pip install -e . --no-build-isolation'")
    print(f"{'kernel':28s} {'numpy [ms]':>11s} {'compiled [ms]':>14s} {'speedup':>8s}")
    for name, fn in cases().items():
        py = min(timeit.repeat(lambda: fn(_pykernels), number=1, repeat=args.repeat)) * 1e3
        if _kernels.compiled is None:
            print(f"{name:28s} {py:11.2f} {'-':>14s} {'-':>8s}")
            continue
        c = min(timeit.repeat(lambda: fn(_kernels.compiled), number=1, repeat=args.repeat)) * 1e3
        print(f"{name:28s} {py:11.2f} {c:14.2f} {py / c:7.1f}x")


if __name__ == "__main__":
    main()
