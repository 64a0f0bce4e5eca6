"""Tabulate the bound tower over a small parameter grid.

Exact values are shown by digit count; values past the digit budget are
shown as upper-bound magnitudes.
"""
import argparse
from itertools import product

from ddelim.bounds import C_bound, F_bound, G_bound, L_bound, train_bound


def show(v):
    if v.is_exact:
        s = str(v.exact)
        return s if len(s) <= 24 else f"[{len(s)} digits]"
    return f"<= {v.magnitude}"


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--max-n", type=int, default=2)
    ap.add_argument("--max-r", type=int, default=1)
    ap.add_argument("--max-D", type=int, default=3)
    ap.add_argument("--digit-budget", type=int, default=100_000)
    args = ap.parse_args()
    kw = {"digit_budget": args.digit_budget}

    print(f"{'n':>2} {'r':>2} {'D':>2}  {'G':<26} {'F(m=1)':<26} {'C(m=1)':<26} {'L(d=D)':<26}")
    for n, r, D in product(range(1, args.max_n + 1), range(args.max_r + 1), range(args.max_D + 1)):
        row = [G_bound(n, r, D, **kw), F_bound(n, r, 1, D, **kw), C_bound(n, r, 1, D, **kw),
               L_bound(n, r, D, **kw)]
        print(f"{n:>2} {r:>2} {D:>2}  " + " ".join(f"{show(v):<26}" for v in row))
    print()
    for n, s, h, d in [(1, 1, 0, 0), (1, 1, 1, 0), (1, 1, 0, 1), (1, 1, 1, 1)]:
        tb = train_bound(n, s, h, d, **kw)
        print(f"train(n={n}, s={s}, h={h}, d={d}) = {show(tb.value)}"
              + (f"  [{tb.note}]" if tb.note else ""))


if __name__ == "__main__":
    main()
