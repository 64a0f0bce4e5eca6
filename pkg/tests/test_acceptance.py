"""Acceptance criteria, one test per criterion.

Each test records a PASS/FAIL line; the lines are printed in the pytest
terminal summary and when this file is run directly.
"""
import random
import time
from fractions import Fraction
from itertools import product

import pytest

from ddelim.bounds import C_bound, F_bound, G_bound, L_bound, tau0, train_bound
from ddelim.ddpoly import D, DSPolynomial, S, VarRef, delta_derive, prolong, sigma_shift, x, y
from ddelim.elim import (CONSISTENT_UP_TO, FOUND, MEMBER, iterative_deepening_eliminate,
                         sigma_power_membership, truncated_consistency, witness_refute)
from ddelim.field import QQ, QQ_t, RatFunc
from ddelim.groebner import (Budget, buchberger, ideal_contains, intersect_ideals,
                             macaulay_membership_oracle, radical_membership,
                             satisfies_buchberger_criterion)
from ddelim.seq import (SequencePoint, evaluate, is_partial_solution, reindex_from_triple,
                        reindex_to_triple, unroll_recurrence)

from gbtools import random_system

RESULTS = {}


def record(name, ok, detail=""):
    RESULTS[name] = (ok, detail)
    line = f"[{'PASS' if ok else 'FAIL'}] {name}" + (f" ({detail})" if detail else "")
    print(line)
    return line


Y, X = y(), x()


def test_criterion_1_square_shift_example():
    t0 = time.perf_counter()
    F = [Y**2 - S(Y), Y**2 - S(S(Y))]
    f = Y**2 - Y
    rep = sigma_power_membership(f, F, m_max=1)
    member_ok = rep.verdict == MEMBER and rep.m == 1 and rep.replay() == S(f)
    refuted = witness_refute(f, F, SequencePoint.single([-1, 1, 1, 1]))
    levels_ok = all(truncated_consistency(F, L).verdict == CONSISTENT_UP_TO for L in range(4))
    elapsed = time.perf_counter() - t0
    ok = member_ok and refuted and levels_ok and elapsed < 5
    record("1 square-shift example: S(f) member m=1, witness refutes f, levels 0..3 consistent, <5s", ok,
           f"{elapsed:.2f}s")
    assert member_ok and refuted and levels_ok
    assert elapsed < 5


def test_criterion_2_elimination_smoke():
    t0 = time.perf_counter()
    rep = iterative_deepening_eliminate([Y - X, Y**2 - S(X)], 1)
    elapsed = time.perf_counter() - t0
    g = rep.consequence
    expected = S(X) - X**2
    same_up_to_scalar = g is not None and any(g == expected.scale(c) for c in (Fraction(1), Fraction(-1)))
    ok = (rep.verdict == FOUND and rep.levels == [(0, 0)] and same_up_to_scalar
          and rep.replay() == g and elapsed < 1)
    record("2 elimination smoke: S(x) - x^2 at level 0, certificate replays, <1s", ok,
           f"{g}; {elapsed:.3f}s")
    assert ok


def test_criterion_3_delay_ode():
    t = RatFunc.t()
    T = DSPolynomial.const(t, QQ_t)
    yt = y(1, QQ_t)
    F = [T * D(yt) + S(yt)]
    w = unroll_recurrence(F, SequencePoint.single([t * t], QQ_t), 2)
    entries_ok = w.window(("y", 1)) == (t * t, -2 * t * t, 4 * t * (t + 1))
    # the three entries form a partial solution of length 2; one more step gives length 3
    w3 = unroll_recurrence(F, SequencePoint.single([t * t], QQ_t), 3)
    partial_ok = is_partial_solution(F, w, 2) and is_partial_solution(F, w3, 3)
    prefix_ok = w3.window(("y", 1))[:3] == w.window(("y", 1))
    ok = entries_ok and partial_ok and prefix_ok
    record("3 delay ODE over QQ_t: (t^2, -2t^2, 4t(t+1)) and partial solution", ok)
    assert ok


def test_criterion_4_bound_goldens(goldens):
    checks = {}
    checks["tau0 grid"] = all(tau0(n, s, h) == n * s * (h + 1)
                              for n, s, h in product(range(1, 4), range(3), range(3)))
    checks["C base"] = all(C_bound(n, r, 0, D_) == D_ for n, r, D_ in product(range(1, 4), range(3), range(11)))
    checks["G goldens"] = G_bound(1, 0, 1) == 10 and G_bound(1, 0, 2) == 68
    checks["frozen goldens"] = (F_bound(1, 0, 0, 2) == goldens["F"]["1,0,0,2"]
                                and C_bound(1, 0, 1, 1).exact == int(goldens["C"]["1,0,1,1"]))
    tb = train_bound(1, 1, 1, 0)
    checks["d=0"] = (all(L_bound(n, r, 0) == 0 for n, r in product(range(1, 4), range(3)))
                     and tb.value == 1 and all(a == 1 for a in tb.A))
    bounded = True
    for n, r, m, D_ in product((1, 2), (0, 1), (0, 1, 2), (0, 1, 2, 3)):
        for fn, args in ((G_bound, (n, r, D_)), (F_bound, (n, r, m, D_)), (C_bound, (n, r, m, D_))):
            ex, mg = fn(*args), fn(*args, magnitude=True)
            if ex.is_exact and not mg.magnitude.bounds_int(ex.exact):
                bounded = False
    checks["magnitude >= exact"] = bounded
    ok = all(checks.values())
    record("4 bound tower goldens", ok, ", ".join(k for k, v in checks.items() if not v) or "all sub-checks")
    assert ok


def test_criterion_5_groebner_properties():
    rng = random.Random(20240601)
    t0 = time.perf_counter()
    crit_fail = perm_fail = oracle_fail = members = 0
    for _ in range(200):
        F = random_system(rng, nvars=4, max_deg=3)
        G = buchberger(F, budget=Budget(max_steps=200_000, max_seconds=20))
        if not satisfies_buchberger_criterion(G):
            crit_fail += 1
        perm = F[:]
        rng.shuffle(perm)
        if buchberger(perm, G.order).basis != G.basis:
            perm_fail += 1
        # one combination of the generators and one unrelated polynomial
        combo = DSPolynomial.zero()
        for g in F:
            combo = combo + g.scale(Fraction(rng.randint(-2, 2)))
        probes = [combo, random_system(rng, nvars=4, max_deg=2, ngens=(1, 1))[0]]
        cap = max(g.total_degree() for g in F + probes) + 1
        for f in probes:
            res = macaulay_membership_oracle(f, F, cap)
            if res.member:
                members += 1
                if not ideal_contains(F, f):
                    oracle_fail += 1
    elapsed = time.perf_counter() - t0
    ok = crit_fail == perm_fail == oracle_fail == 0 and elapsed < 60
    record("5 Groebner engine on 200 random systems", ok,
           f"criterion fails {crit_fail}, permutation fails {perm_fail}, oracle disagreements "
           f"{oracle_fail}/{members} members, {elapsed:.1f}s")
    assert ok


def _rand_coeff(rng, field):
    if field is QQ:
        return Fraction(rng.randint(-5, 5), rng.randint(1, 3))
    num = [rng.randint(-3, 3) for _ in range(rng.randint(0, 3))]
    den = [rng.randint(-2, 2) for _ in range(2)] if rng.random() < 0.3 else [1]
    if not any(den):
        den = [1]
    return RatFunc(num, den)


LAW_VARS = [VarRef(f, 1, i, j) for f in ("x", "y") for i in range(2) for j in range(2)]
WIN_VARS = [VarRef("y", 1, i, j) for i in range(2) for j in range(2)]


def _rand_poly(rng, field, variables=LAW_VARS, terms=3, deg=2):
    out = {}
    for _ in range(rng.randint(0, terms)):
        m = {}
        for _ in range(rng.randint(0, deg)):
            v = rng.choice(variables)
            m[v] = m.get(v, 0) + 1
        out[tuple(sorted(m.items()))] = _rand_coeff(rng, field)
    return DSPolynomial(out, field)


def test_criterion_6_algebra_laws():
    rng = random.Random(6)
    failures = {"delta sigma commute": 0, "Leibniz": 0, "sigma homomorphism": 0,
                "evaluation homomorphism": 0, "reindex roundtrip": 0}
    for i in range(500):
        field = QQ if i % 2 else QQ_t
        p, q = _rand_poly(rng, field), _rand_poly(rng, field)
        if sigma_shift(delta_derive(p)) != delta_derive(sigma_shift(p)):
            failures["delta sigma commute"] += 1
        if delta_derive(p * q) != delta_derive(p) * q + p * delta_derive(q):
            failures["Leibniz"] += 1
        if sigma_shift(p * q) != sigma_shift(p) * sigma_shift(q) or \
                sigma_shift(p + q) != sigma_shift(p) + sigma_shift(q):
            failures["sigma homomorphism"] += 1
        a, b = _rand_poly(rng, field, WIN_VARS), _rand_poly(rng, field, WIN_VARS)
        w = SequencePoint.single([_rand_coeff(rng, field) for _ in range(3)], field)
        ev_ok = (evaluate(a * b, w) == evaluate(a, w) * evaluate(b, w)
                 and evaluate(a + b, w) == evaluate(a, w) + evaluate(b, w)
                 and evaluate(sigma_shift(a), w) == evaluate(a, w, index=1)
                 and evaluate(delta_derive(a), w) == field.delta(evaluate(a, w)))
        if not ev_ok:
            failures["evaluation homomorphism"] += 1
        width = rng.randint(1, 7)
        h = rng.randint(0, width - 1)
        u = SequencePoint.make({("y", 1): [_rand_coeff(rng, field) for _ in range(width)],
                                ("y", 2): [_rand_coeff(rng, field) for _ in range(width)]}, field)
        back = reindex_from_triple(reindex_to_triple(u, h, width - h), field, [("y", 1), ("y", 2)])
        if back != u:
            failures["reindex roundtrip"] += 1
    ok = not any(failures.values())
    record("6 algebra laws, 500 checks each", ok, ", ".join(f"{k}: {v}" for k, v in failures.items()))
    assert ok


PRIME_PAIRS = [
    ([Y], [Y - 1]),
    ([X], [Y]),
    ([Y**2 - X], [X]),
]


def test_criterion_7_intersection_containment():
    checked = failed = 0
    for P1, P2 in PRIME_PAIRS:
        both = intersect_ideals(P1, P2)
        for s in (0, 1):
            # the hand-built ideals are prime, so each prolongation is its own radical
            lhs = intersect_ideals(prolong(P1, s, 0), prolong(P2, s, 0))
            target = prolong(both, 2 * s, 0)
            for g in lhs:
                checked += 1
                if not radical_membership(g, target):
                    failed += 1
    ok = failed == 0 and checked > 0
    record("7 intersection of radicals lies in the radical of the doubled-level intersection", ok,
           f"{checked} generators checked, {failed} failed")
    assert ok


if __name__ == "__main__":
    import sys
    sys.exit(pytest.main([__file__, "-q", "-p", "no:cacheprovider"]))
