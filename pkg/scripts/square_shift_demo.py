"""Walk through the system y^2 = S(y) = S^2(y) end to end.

The system is consistent (the sequence -1, 1, 1, ... solves it) and
S(y^2 - y) lies in the ideal of F and S(F), while y^2 - y itself does not
vanish on that solution.
"""
import argparse
import json

from ddelim.ddpoly import S, y
from ddelim.elim import sigma_power_membership, truncated_consistency, witness_refute
from ddelim.seq import SequencePoint


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--max-level", type=int, default=3)
    ap.add_argument("--json", action="store_true")
    args = ap.parse_args()

    Y = y()
    F = [Y**2 - S(Y), Y**2 - S(S(Y))]
    f = Y**2 - Y
    out = {"membership": sigma_power_membership(f, F, 2).to_dict()}
    out["witness_refutes_f"] = witness_refute(f, F, SequencePoint.single([-1, 1, 1, 1]))
    out["consistency"] = [truncated_consistency(F, L, certificate=False).to_dict(timings=True)
                          for L in range(args.max_level + 1)]
    if args.json:
        print(json.dumps(out, indent=2))
        return
    m = out["membership"]
    print(f"S^m(f^m) membership: {m['verdict']} with m={m['m']}, target {m['consequence']}")
    for c in m["certificate"]:
        print(f"  ({c['cofactor']}) * ({c['generator']})")
    print(f"witness (-1, 1, 1, 1) refutes f: {out['witness_refutes_f']}")
    for rep in out["consistency"]:
        print(f"level {rep['levels'][0]}: {rep['verdict']:<24} steps={rep['steps']:<6} {rep['seconds']:.3f}s")


if __name__ == "__main__":
    main()
