"""Benchmark the Gröbner kernel on seeded random systems and cross-check against sympy."""
import argparse
import random
import statistics
import sys
import time
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "tests"))

from gbtools import monic_sympy, random_system, sympy_reduced_basis  # noqa: E402

from ddelim.groebner import MonomialOrder, buchberger, default_ranking  # noqa: E402


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--systems", type=int, default=200)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--vars", type=int, default=4)
    ap.add_argument("--degree", type=int, default=3)
    ap.add_argument("--order", choices=["degrevlex", "lex"], default="degrevlex")
    ap.add_argument("--check-sympy", action="store_true")
    args = ap.parse_args()

    rng = random.Random(args.seed)
    times, mismatches = [], 0
    for _ in range(args.systems):
        F = random_system(rng, nvars=args.vars, max_deg=args.degree)
        variables = set().union(*(f.variables() for f in F))
        order = MonomialOrder(default_ranking(variables), args.order)
        t0 = time.perf_counter()
        G = buchberger(F, order)
        times.append(time.perf_counter() - t0)
        if args.check_sympy and variables:
            expected, symbols = sympy_reduced_basis(F, order)
            mismatches += monic_sympy(G.basis, symbols) != expected
    print(f"systems={args.systems} total={sum(times):.3f}s median={statistics.median(times) * 1e3:.2f}ms "
          f"max={max(times) * 1e3:.1f}ms")
    if args.check_sympy:
        print(f"sympy mismatches: {mismatches}")


if __name__ == "__main__":
    main()
