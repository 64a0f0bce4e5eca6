from itertools import product

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ddelim import bounds
from ddelim.bounds import (BoundEvaluator, C_bound, F_bound, G_bound, L_bound, final_B, make_plug,
                           ritt_order_bound, tau0, train_bound)
from ddelim.magnitude import Magnitude


def test_goldens_G_F(goldens):
    for key, val in goldens["G"].items():
        assert G_bound(*map(int, key.split(","))) == val
    for key, val in goldens["F"].items():
        assert F_bound(*map(int, key.split(","))) == val


def test_goldens_C_L(goldens):
    for key, val in goldens["C"].items():
        assert C_bound(*map(int, key.split(","))).exact == int(val)
    assert L_bound(1, 0, 1).exact == int(goldens["L"]["1,0,1"])
    assert L_bound(1, 0, 0) == 0


def test_C_first_level_unfolds_to_F_of_G():
    assert C_bound(1, 0, 1, 1).exact == 1 + F_bound(1, 0, 0, G_bound(1, 0, 1).exact).exact == 1 + 10**100


@pytest.mark.parametrize("n,r,D", [(1, 0, 0), (3, 2, 0)])
def test_degree_zero_convention(n, r, D):
    assert G_bound(n, r, D) == 0
    assert F_bound(n, r, 2, D) == 0
    assert C_bound(n, r, 3, D) == 0


def test_C_base_case():
    for n, r, D in product(range(1, 4), range(3), range(11)):
        assert C_bound(n, r, 0, D) == D


def test_tau0_and_ritt():
    assert tau0(1, 1, 1) == 2
    assert [ritt_order_bound(*a) for a in [(1, 1), (3, 2), (5, 0)]] == [1, 6, 0]


def test_train_degenerates_at_degree_zero():
    tb = train_bound(1, 1, 1, 0)
    assert tb.value == 1
    assert all(a == 1 for a in tb.A)
    assert tb.tau[0] == 2


def test_train_overflows_honestly():
    tb = train_bound(1, 1, 1, 1)
    assert tb.value.magnitude.tier == "overflow" and tb.note
    assert not tb.A[0].is_exact


def test_final_B_with_zero_plug():
    val, _ = final_B(1, 3, 0, 0, make_plug("zero"))
    assert val == 3
    val, tb = final_B(2, 1, 1, 0, make_plug("affine", a=1, b=1, c=0))
    arg = 2 * 2 * (tb.value.exact + 1 + 1)
    assert val == 2 * arg + 1


def test_unknown_plug():
    with pytest.raises(ValueError):
        make_plug("nope")


def test_magnitude_fallback_beyond_digit_budget():
    v = F_bound(1, 0, 1, 100)
    assert not v.is_exact
    assert v.magnitude.depth >= 1
    assert F_bound(1, 0, 0, 2, digit_budget=2).exact == 16
    tight = F_bound(1, 0, 0, 2, digit_budget=1)
    assert not tight.is_exact and tight.magnitude.bounds_int(16)


def test_large_degree_uses_partition_count_bound():
    v = C_bound(1, 0, 1, 100)
    assert not v.is_exact
    assert v.magnitude >= C_bound(1, 0, 1, 2).magnitude


def test_large_m_uses_tetration():
    v = C_bound(1, 0, 10**9, 3)
    assert v.magnitude.tier == "tetration"


def test_recursion_only_descends():
    ev = BoundEvaluator(record_trace=True)
    ev.C(1, 0, 1, 2)
    ev.C(1, 0, 2, 1)
    assert ev.trace
    for (_, m0, d0), (_, m1, d1) in ev.trace:
        key0 = (m0, Magnitude.lift(d0))
        key1 = (m1, Magnitude.lift(d1))
        assert m1 < m0 or (m1 == m0 and key1[1] < key0[1])


def _partitions(n, largest=None):
    largest = n if largest is None else largest
    if n == 0:
        yield []
        return
    for k in range(min(n, largest), 0, -1):
        for rest in _partitions(n - k, k):
            yield [k] + rest


@settings(max_examples=50)
@given(st.lists(st.integers(1, 1000), min_size=6, max_size=6))
def test_binary_splits_match_all_partitions(irr_values):
    """With an arbitrary irreducible bound, the split recursion equals the partition maximum."""
    ev = BoundEvaluator()
    ev._irr = lambda n, r, m, D: irr_values[D - 1]
    for D in range(1, 7):
        full = max(sum(irr_values[p - 1] for p in part) for part in _partitions(D))
        assert ev.C_raw(1, 0, 1, D) == full


GRID = [(n, r, m, D) for n in (1, 2) for r in (0, 1) for m in (0, 1, 2) for D in (0, 1, 2, 3)]


def test_magnitude_mode_bounds_exact_mode():
    for n, r, m, D in GRID:
        for fn, args in [(G_bound, (n, r, D)), (F_bound, (n, r, m, D)), (C_bound, (n, r, m, D))]:
            ex = fn(*args)
            mg = fn(*args, magnitude=True)
            if ex.is_exact:
                assert mg.magnitude.bounds_int(ex.exact), (fn.__name__, args)
            assert ex.magnitude <= mg.magnitude or mg.magnitude.bounds_int(ex.exact or 0)


def _le(a, b):
    if a.is_exact and b.is_exact:
        return a.exact <= b.exact
    if a.is_exact:
        return b.magnitude.bounds_int(a.exact)
    return a.magnitude <= b.magnitude


def test_monotone_on_small_grid():
    for n, r, m, D in GRID:
        for fn, args, bumps in [(G_bound, (n, r, D), 3), (F_bound, (n, r, m, D), 4)]:
            base = fn(*args)
            for i in range(bumps):
                bumped = list(args)
                bumped[i] += 1
                assert _le(base, fn(*bumped)), (fn.__name__, args, i)
        for d in range(3):
            assert _le(L_bound(n, r, d), L_bound(n, r, d + 1))


def test_final_B_monotone_in_magnitude_mode():
    plug = make_plug("affine")
    grid = list(product(range(1, 3), range(0, 2), range(0, 2), range(0, 2)))
    vals = {g: final_B(*g, plug, magnitude=True)[0] for g in grid}
    for g in grid:
        for i in range(4):
            up = list(g)
            up[i] += 1
            if tuple(up) in vals:
                assert vals[g].magnitude <= vals[tuple(up)].magnitude


def test_bound_value_reporting():
    v = G_bound(1, 0, 2)
    assert v.to_dict()["exact"] == "68" and str(v) == "68"
    assert str(C_bound(1, 0, 1, 2)).endswith("(8474 digits)")


def test_first_train_term_matches_L():
    tb = train_bound(1, 1, 1, 1)
    expected = L_bound(2, 1, 1).magnitude + 1
    assert tb.A[0].magnitude == expected
    assert tau0(1, 1, 1) == tb.tau[0]
