"""Time and step counts of truncated consistency and elimination as the level grows.

Each row prolongs the system to (L, L) and records the Gröbner work; runs
stop at the first level that exhausts the budget.
"""
import argparse
import csv
import sys
import time

from ddelim.errors import ResourceBudgetExceeded
from ddelim.elim import iterative_deepening_eliminate, truncated_consistency
from ddelim.parser import parse


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("problem", help="problem file")
    ap.add_argument("--mode", choices=["consistency", "eliminate"], default="consistency")
    ap.add_argument("--max-level", type=int, default=4)
    ap.add_argument("--budget-seconds", type=float, default=30.0)
    args = ap.parse_args()

    pf = parse(open(args.problem).read())
    w = csv.writer(sys.stdout)
    w.writerow(["level", "verdict", "steps", "seconds"])
    for L in range(args.max_level + 1):
        t0 = time.perf_counter()
        try:
            if args.mode == "consistency":
                rep = truncated_consistency(pf.equations, L, certificate=False,
                                            max_seconds=args.budget_seconds)
            else:
                rep = iterative_deepening_eliminate(pf.equations, L, schedule=[(L, L)],
                                                    max_seconds=args.budget_seconds)
        except ResourceBudgetExceeded as exc:
            w.writerow([L, "budget-exceeded", exc.steps, f"{time.perf_counter() - t0:.3f}"])
            break
        w.writerow([L, rep.verdict, rep.steps, f"{time.perf_counter() - t0:.3f}"])


if __name__ == "__main__":
    main()
