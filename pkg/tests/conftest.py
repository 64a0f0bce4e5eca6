import json
import sys
from fractions import Fraction
from pathlib import Path

import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from ddelim.ddpoly import DSPolynomial, VarRef
from ddelim.field import QQ, QQ_t, RatFunc

if hasattr(sys, "set_int_max_str_digits"):
    sys.set_int_max_str_digits(0)

settings.register_profile("default", deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")

GOLDENS = json.loads((Path(__file__).parent / "goldens.json").read_text())


@pytest.fixture
def goldens():
    return GOLDENS


VARS = [VarRef(f, 1, i, j) for f in ("x", "y") for i in range(2) for j in range(2)] + [VarRef("y", 2)]

small_fraction = st.builds(Fraction, st.integers(-5, 5), st.integers(1, 3))
nonzero_fraction = small_fraction.filter(lambda c: c != 0)


@st.composite
def ratfuncs(draw, max_deg=2, allow_den=True):
    num = draw(st.lists(st.integers(-4, 4), max_size=max_deg + 1))
    if allow_den and draw(st.booleans()):
        den = draw(st.lists(st.integers(-3, 3), min_size=1, max_size=2).filter(lambda c: any(c)))
    else:
        den = [1]
    return RatFunc(num, den)


def coefficients(field):
    return small_fraction if field is QQ else ratfuncs()


@st.composite
def monomials(draw, variables=tuple(VARS), max_deg=2):
    vs = draw(st.lists(st.sampled_from(variables), max_size=max_deg))
    m = {}
    for v in vs:
        m[v] = m.get(v, 0) + 1
    return tuple(sorted(m.items()))


@st.composite
def polys(draw, field=QQ, variables=tuple(VARS), max_terms=4, max_deg=2):
    terms = {}
    for _ in range(draw(st.integers(0, max_terms))):
        terms[draw(monomials(variables, max_deg))] = draw(coefficients(field))
    return DSPolynomial(terms, field)


fields = st.sampled_from([QQ, QQ_t])


@st.composite
def field_polys(draw, max_terms=3, max_deg=2):
    F = draw(fields)
    return draw(polys(F, max_terms=max_terms, max_deg=max_deg))


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    results = getattr(mod, "RESULTS", None)
    if not results:
        return
    terminalreporter.section("acceptance criteria")
    for name, (ok, detail) in sorted(results.items()):
        terminalreporter.write_line(f"[{'PASS' if ok else 'FAIL'}] {name}" + (f" ({detail})" if detail else ""))
