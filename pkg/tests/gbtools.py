"""Helpers shared by the Gröbner tests and the acceptance suite."""
import random
from fractions import Fraction

import sympy as sp

from ddelim.ddpoly import DSPolynomial, VarRef
from ddelim.groebner import MonomialOrder

POOL = (VarRef("y", 1), VarRef("y", 1, 0, 1), VarRef("y", 1, 1, 0), VarRef("x", 1))


def random_system(rng: random.Random, nvars=4, max_deg=3, ngens=(2, 3), nterms=(1, 3)):
    """A small random system over QQ in at most ``nvars`` variables of degree at most ``max_deg``."""
    vars_ = POOL[:nvars]
    gens = []
    for _ in range(rng.randint(*ngens)):
        terms = {}
        for _ in range(rng.randint(*nterms)):
            deg = rng.randint(0, max_deg)
            m = {}
            for _ in range(deg):
                v = rng.choice(vars_)
                m[v] = m.get(v, 0) + 1
            terms[tuple(sorted(m.items()))] = Fraction(rng.choice([-3, -2, -1, 1, 2, 3]))
        p = DSPolynomial(terms)
        if not p.is_zero():
            gens.append(p)
    return gens or [DSPolynomial.var(vars_[0])]


def to_sympy(p: DSPolynomial, symbols):
    expr = 0
    for m, c in p.terms.items():
        term = sp.Rational(c.numerator, c.denominator)
        for v, e in m:
            term *= symbols[v] ** e
        expr += term
    return expr


def sympy_reduced_basis(F, order: MonomialOrder):
    """Reduced basis from sympy for ``order`` (degrevlex or lex only)."""
    symbols = {v: sp.Symbol(f"v{i}") for i, v in enumerate(order.ranking)}
    gens = [symbols[v] for v in order.ranking]
    kind = {"degrevlex": "grevlex", "lex": "lex"}[order.kind]
    G = sp.groebner([to_sympy(f, symbols) for f in F], *gens, order=kind, domain=sp.QQ)
    return {sp.Poly(g, *gens).monic().as_expr() for g in G.exprs}, symbols


def monic_sympy(basis, symbols):
    gens = list(symbols.values())
    return {sp.Poly(to_sympy(g, symbols), *gens).monic().as_expr() for g in basis}
