from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from ddelim.ddpoly import D, DSPolynomial, S, VarRef, delta_derive, sigma_shift, y
from ddelim.errors import NonSolvableError, OverlapMismatch, WindowTooSmall
from ddelim.field import QQ, QQ_t, RatFunc
from ddelim.seq import (SequencePoint, evaluate, is_partial_solution, reindex_from_triple,
                        reindex_to_triple, unroll_recurrence)

from conftest import polys, ratfuncs, small_fraction

t = RatFunc.t()
T = DSPolynomial.const(t, QQ_t)
Yt = y(1, QQ_t)
DELAY = T * D(Yt) + S(Yt)
Y = y()


def test_evaluate_square_shift_witness():
    w = SequencePoint.single([-1, 1, 1])
    assert evaluate(Y**2 - S(Y), w) == 0
    assert evaluate(Y**2 - Y, w) == 2


def test_evaluate_delay_equation():
    w = SequencePoint.single([t * t, -2 * t * t], QQ_t)
    assert evaluate(DELAY, w) == 0


def test_window_too_small():
    with pytest.raises(WindowTooSmall):
        evaluate(S(S(Y)), SequencePoint.single([1, 2]))
    with pytest.raises(WindowTooSmall):
        is_partial_solution([Y - S(Y)], SequencePoint.single([1, 1]), 2)


def test_partial_solution_examples():
    w = SequencePoint.single([t * t, -2 * t * t, 4 * t * (t + 1)], QQ_t)
    assert is_partial_solution([DELAY], w, 2)
    assert is_partial_solution([Y**2 - S(Y)], SequencePoint.single([2, 3]), 0)
    assert not is_partial_solution([Y**2 - S(Y)], SequencePoint.single([2, 3]), 1)


def test_unroll_examples():
    seed = SequencePoint.single([t * t], QQ_t)
    w = unroll_recurrence([DELAY], seed, 2)
    assert w.window(("y", 1)) == (t * t, -2 * t * t, 4 * t * (t + 1))
    assert unroll_recurrence([DELAY], seed, 0) == seed
    c = Fraction(7, 2)
    assert unroll_recurrence([S(Y) - Y], SequencePoint.single([c]), 3).window(("y", 1)) == (c,) * 4


def test_unroll_rejects_non_explicit_forms():
    with pytest.raises(NonSolvableError):
        unroll_recurrence([S(Y) ** 2 - Y], SequencePoint.single([1]), 1)
    with pytest.raises(NonSolvableError):
        unroll_recurrence([Y * S(Y) - 1], SequencePoint.single([0]), 1)


def test_unroll_two_unknowns():
    y1, y2 = y(1), y(2)
    F = [S(y1) - y2, S(y2) - y1 - y2]  # Fibonacci as a system
    w = unroll_recurrence(F, SequencePoint.make({("y", 1): [0], ("y", 2): [1]}), 5)
    assert w.window(("y", 1)) == (0, 1, 1, 2, 3, 5)
    assert is_partial_solution(F, w, 5)


def test_reindex_examples():
    w = SequencePoint.single([1, 2, 3])
    pts = reindex_to_triple(w, 1, 2)
    assert pts == [((1, 2),), ((2, 3),)]
    assert reindex_from_triple(pts) == w
    with pytest.raises(OverlapMismatch):
        reindex_from_triple([((0, 1),), ((2, 3),)])


@given(st.lists(small_fraction, min_size=1, max_size=8), st.integers(0, 4))
def test_reindex_round_trip(entries, h):
    if h >= len(entries):
        h = len(entries) - 1
    ell = len(entries) - h
    w = SequencePoint.single(entries)
    assert reindex_from_triple(reindex_to_triple(w, h, ell)) == w


WVARS = (VarRef("y", 1), VarRef("y", 1, 0, 1), VarRef("y", 1, 1, 0), VarRef("y", 1, 1, 1))


@st.composite
def qt_windows(draw, width=4):
    return SequencePoint.single([draw(ratfuncs(allow_den=False)) for _ in range(width)], QQ_t)


@given(polys(QQ_t, WVARS), polys(QQ_t, WVARS), qt_windows())
def test_evaluation_is_a_homomorphism(p, q, w):
    assert evaluate(p * q, w) == evaluate(p, w) * evaluate(q, w)
    assert evaluate(p + q, w) == evaluate(p, w) + evaluate(q, w)


@given(polys(QQ_t, WVARS), qt_windows())
def test_evaluation_commutes_with_operators(p, w):
    assert evaluate(sigma_shift(p), w) == evaluate(p, w, index=1)
    assert evaluate(delta_derive(p), w) == evaluate(p, w).derivative()


@given(ratfuncs(allow_den=False).filter(bool), st.integers(0, 4))
def test_unrolled_windows_are_partial_solutions(a0, steps):
    w = unroll_recurrence([DELAY], SequencePoint.single([a0], QQ_t), steps)
    assert w.width == steps + 1
    assert is_partial_solution([DELAY], w, steps)
