"""Freeze golden values for the bound tower using sympy as an independent evaluator.

The closed forms are typed in again here as sympy expressions and
substituted directly; nothing is imported from ddelim.  Run from the repo
root; writes tests/goldens.json.
"""
import json
import sys
from pathlib import Path

import sympy as sp

if hasattr(sys, "set_int_max_str_digits"):
    sys.set_int_max_str_digits(0)

n, r, m, D = sp.symbols("n r m D", integer=True, nonnegative=True)
N = n * (r + 1)
G_expr = 2 * N * (2 * N**2 + 2) ** N * D ** (2 * N + 1) + 2 * N * D
B_expr = D ** (N * 2 ** (m + 1))
F_expr = D ** (N * B_expr)


def G(nv, rv, Dv):
    return int(G_expr.subs({n: nv, r: rv, D: Dv}))


def F(nv, rv, mv, Dv):
    if Dv == 0:
        return 0
    return int(F_expr.subs({n: nv, r: rv, m: mv, D: Dv}))


def C_partitions(nv, rv, mv, Dv):
    """C by brute force over all integer partitions (only for tiny inputs)."""
    if Dv == 0:
        return 0
    if mv == 0:
        return Dv
    irr = lambda d: 1 + C_partitions(nv, rv, mv - 1, F(nv, rv, mv - 1, G(nv, rv, d)))
    best = irr(Dv)
    for part in sp.utilities.iterables.partitions(Dv):
        parts = [k for k, mult in part.items() for _ in range(mult)]
        if len(parts) >= 2:
            best = max(best, sum(irr(p) for p in parts))
    return best


def main():
    out = {
        "G": {"1,0,1": G(1, 0, 1), "1,0,2": G(1, 0, 2), "2,1,1": G(2, 1, 1), "1,1,3": G(1, 1, 3)},
        "F": {"1,0,0,1": F(1, 0, 0, 1), "1,0,0,2": F(1, 0, 0, 2), "1,0,1,2": F(1, 0, 1, 2),
              "2,0,0,2": F(2, 0, 0, 2)},
        "C": {"1,0,1,1": str(C_partitions(1, 0, 1, 1)), "1,0,1,2": str(C_partitions(1, 0, 1, 2))},
        "L": {"1,0,1": str(C_partitions(1, 0, 1, F(1, 0, 1, 1))), "1,0,0": 0},
    }
    path = Path(__file__).resolve().parent.parent / "tests" / "goldens.json"
    path.write_text(json.dumps(out, indent=1) + "\n")
    print(f"wrote {path}")
    for k, v in out.items():
        for a, b in v.items():
            s = str(b)
            print(f"{k}({a}) = {s if len(s) < 40 else s[:15] + '...' + f'({len(s)} digits)'}")


if __name__ == "__main__":
    main()
