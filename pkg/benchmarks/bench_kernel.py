#!/usr/bin/env python3
"""Benchmark the pure-Python term kernel against the compiled one.

Runs the same randomized workloads through both implementations and prints
a small table.  Coefficient arithmetic (exact rationals and polynomials in
alpha) is shared Python-object work, so the compiled kernel only
accelerates the monomial/sign bookkeeping around it; expect modest rather
than dramatic ratios on bracket-heavy loads.

End-to-end comparison of a full computation:

    SUPERPDS_KERNEL=py superpds verify jacobi
    SUPERPDS_KERNEL=c  superpds verify jacobi
"""

import random
import time
from fractions import Fraction

from superpds.scalars import ALPHA, Scalar

import superpds._terms_py as py_kernel

try:
    import superpds._terms_cy as cy_kernel
except ImportError:
    cy_kernel = None


def random_terms(rng, n=6, tau_nonneg=False, with_alpha=True):
    out = {}
    while len(out) < n:
        key = (
            rng.randrange(-4, 5),
            rng.randrange(0 if tau_nonneg else -4, 5),
            rng.randrange(16),
            0,
            rng.randrange(2),
        )
        c = Scalar.from_fraction(Fraction(rng.randrange(-5, 6) or 1, rng.randrange(1, 4)))
        if with_alpha and rng.random() < 0.5:
            c = c * ALPHA
        out[key] = c
    return out


def build_workloads(seed=11, count=300):
    rng = random.Random(seed)
    pairs = [(random_terms(rng), random_terms(rng)) for _ in range(count)]
    star_pairs = [
        (random_terms(rng, tau_nonneg=True), random_terms(rng, tau_nonneg=True))
        for _ in range(count)
    ]
    return pairs, star_pairs


def run(kernel, pairs, star_pairs):
    timings = {}
    t0 = time.perf_counter()
    for a, b in pairs:
        kernel.mul_terms(a, b)
    timings["product"] = time.perf_counter() - t0
    t0 = time.perf_counter()
    for a, b in pairs:
        kernel.poisson_terms(a, b)
    timings["poisson"] = time.perf_counter() - t0
    t0 = time.perf_counter()
    for a, b in star_pairs:
        kernel.moyal_terms(a, b)
    timings["star"] = time.perf_counter() - t0
    return timings


def main():
    pairs, star_pairs = build_workloads()
    results = {"python": run(py_kernel, pairs, star_pairs)}
    if cy_kernel is not None:
        results["cython"] = run(cy_kernel, pairs, star_pairs)
    else:
        print("compiled kernel not installed; benchmarking the fallback only")
    ops = ["product", "poisson", "star"]
    print("%-10s" % "kernel" + "".join("%12s" % op for op in ops))
    for name, timing in results.items():
        print("%-10s" % name + "".join("%11.3fs" % timing[op] for op in ops))
    if "cython" in results:
        print(
            "%-10s" % "speedup"
            + "".join(
                "%11.2fx" % (results["python"][op] / results["cython"][op])
                for op in ops
            )
        )


if __name__ == "__main__":
    main()
