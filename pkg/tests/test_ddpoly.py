import pytest
from hypothesis import given
from hypothesis import strategies as st

from ddelim.ddpoly import (D, DSPolynomial, PolySystem, S, VarRef, delta_derive, measure, prolong,
                           sigma_shift, var, x, y)
from ddelim.field import QQ, QQ_t, RatFunc
from ddelim.parser import parse_polynomial

from conftest import field_polys, polys

t = DSPolynomial.const(RatFunc.t(), QQ_t)
yt = y(1, QQ_t)


def test_shift_of_a_variable():
    assert sigma_shift(y()) == var("y", 1, j=1)


def test_shift_moves_qt_coefficients():
    f = t * D(yt) + S(yt)
    assert sigma_shift(f) == (t + 1) * D(S(yt)) + S(S(yt))


def test_shift_fixes_rational_constants():
    assert sigma_shift(DSPolynomial.const(5)) == DSPolynomial.const(5)


def test_derivative_examples():
    assert delta_derive(y() ** 2) == 2 * y() * D(y())
    assert delta_derive(t * yt) == yt + t * D(yt)
    assert delta_derive(DSPolynomial.const(7)).is_zero()


def test_measure_examples():
    m = measure(t * D(yt) + S(yt))
    assert (m.ord, m.ord_delta, m.ord_sigma, m.deg_y) == (1, 1, 1, 1)
    m = measure(y() ** 2 - S(S(y())))
    assert (m.ord, m.ord_delta, m.ord_sigma, m.deg_y) == (2, 0, 2, 2)
    m = measure(DSPolynomial.const(1))
    assert (m.ord, m.ord_delta, m.ord_sigma, m.deg_y, m.deg_x) == (None, None, None, 0, 0)


def test_measure_counts_families_separately():
    m = measure(x() ** 2 * y() + y())
    assert (m.deg_x, m.deg_y) == (2, 1)


def test_prolong_examples():
    got = set(prolong([y()], 1, 1))
    assert got == {y(), S(y()), D(y()), D(S(y()))}
    f = y() ** 2 - S(y())
    assert prolong([f], 0, 1) == [f, S(f)]
    assert prolong([], 3, 3) == []


def test_prolong_rejects_negative_levels():
    with pytest.raises(ValueError):
        prolong([y()], -1, 0)


def test_zero_has_no_terms():
    p = y() - y()
    assert p.is_zero() and p.terms == {}


def test_varref_text_nests_shift_inside_derivative():
    assert VarRef("y", 1, 2, 1).to_text() == "D(D(S(y1)))"


def test_field_mismatch_rejected():
    with pytest.raises(ValueError):
        y() + yt


def test_polysystem_infers_counts():
    ps = PolySystem.of([x(2) + y(1), S(y(3))])
    assert (ps.q, ps.r, ps.sigma_order()) == (2, 3, 1)


@given(field_polys())
def test_shift_and_derivative_commute(p):
    assert sigma_shift(delta_derive(p)) == delta_derive(sigma_shift(p))


@given(st.data())
def test_shift_is_a_ring_homomorphism(data):
    p = data.draw(field_polys())
    q = data.draw(polys(p.field))
    assert sigma_shift(p * q) == sigma_shift(p) * sigma_shift(q)
    assert sigma_shift(p + q) == sigma_shift(p) + sigma_shift(q)


@given(st.data())
def test_derivative_is_additive_and_leibniz(data):
    p = data.draw(field_polys())
    q = data.draw(polys(p.field))
    assert delta_derive(p + q) == delta_derive(p) + delta_derive(q)
    assert delta_derive(p * q) == delta_derive(p) * q + p * delta_derive(q)


@given(field_polys())
def test_shift_raises_order_by_one(p):
    m = measure(p)
    if m.ord is None:
        return
    ms = measure(sigma_shift(p))
    assert ms.ord == m.ord + 1 and ms.ord_delta == m.ord_delta


@given(st.lists(polys(QQ), max_size=3), st.integers(0, 2), st.integers(0, 2))
def test_prolong_cardinality(F, a, b):
    out = prolong(F, a, b)
    assert len(out) <= len(F) * (a + 1) * (b + 1)
    assert len(set(out)) == len(out)


@given(field_polys(max_terms=4))
def test_printer_round_trips(p):
    assert parse_polynomial(p.to_text(), p.field) == p
