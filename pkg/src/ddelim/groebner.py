"""Gröbner bases over Q and Q(t), with cofactor tracking.

Polynomials coming from :mod:`ddelim.ddpoly` are treated as ordinary
polynomials in their finitely many active variables.  Internally a polynomial
is a dict ``{exponent tuple: coefficient}`` over the variable ranking of a
:class:`MonomialOrder`.

Besides Buchberger's algorithm (normal pair selection, Gebauer–Möller
criteria) the module provides normal forms, elimination ideals, radical
membership via the Rabinowitsch trick, saturation, ideal intersection and a
brute-force linear-algebra membership oracle that shares no code with the
Buchberger path.
"""
from __future__ import annotations

import time
from dataclasses import dataclass, field
from itertools import combinations_with_replacement
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from .ddpoly import DSPolynomial, VarRef
from .errors import ResourceBudgetExceeded, UnknownVariableError
from .field import QQ, GroundField

Exp = Tuple[int, ...]
IPoly = Dict[Exp, object]


@dataclass
class Budget:
    """Step and wall-clock limits for one computation.

    ``steps`` counts single reduction steps (one monomial multiple of a basis
    element subtracted).  Exceeding either limit raises
    :class:`ResourceBudgetExceeded`.
    """

    max_steps: Optional[int] = 10**6
    max_seconds: Optional[float] = 60.0
    steps: int = 0
    _t0: float = field(default_factory=time.monotonic, repr=False)

    def restart(self):
        self.steps = 0
        self._t0 = time.monotonic()

    @property
    def elapsed(self) -> float:
        return time.monotonic() - self._t0

    def tick(self, n: int = 1):
        self.steps += n
        if self.max_steps is not None and self.steps > self.max_steps:
            raise ResourceBudgetExceeded(f"step budget of {self.max_steps} exceeded", steps=self.steps,
                                         seconds=self.elapsed)
        if self.max_seconds is not None and (self.steps & 255) == 0 and self.elapsed > self.max_seconds:
            raise ResourceBudgetExceeded(f"time budget of {self.max_seconds}s exceeded", steps=self.steps,
                                         seconds=self.elapsed)


def default_ranking(variables: Iterable[VarRef]) -> Tuple[VarRef, ...]:
    """Deterministic ranking, highest first: auxiliary ``z`` first, then by order."""
    return tuple(sorted(set(variables), key=lambda v: (v.family != "z", -(v.i + v.j), -v.j, -v.i, v.family, v.k)))


class MonomialOrder:
    """degrevlex, lex, or a two-block elimination order.

    ``ranking`` lists the variables from highest to lowest.  For ``block``,
    the ``eliminate`` variables form the first block; each block is compared
    by degrevlex and the first block dominates.
    """

    KINDS = ("degrevlex", "lex", "block")

    def __init__(self, ranking: Sequence[VarRef], kind: str = "degrevlex", eliminate: Iterable[VarRef] = ()):
        if kind not in self.KINDS:
            raise ValueError(f"unknown monomial order {kind!r}")
        ranking = tuple(ranking)
        if len(set(ranking)) != len(ranking):
            raise ValueError("duplicate variable in ranking")
        elim = set(eliminate)
        if kind == "block":
            if not elim <= set(ranking):
                raise ValueError("eliminate-block must be a subset of the ranking")
            ranking = tuple(v for v in ranking if v in elim) + tuple(v for v in ranking if v not in elim)
        self.kind = kind
        self.ranking = ranking
        self.nvars = len(ranking)
        self.split = len(elim) if kind == "block" else 0
        self.index = {v: i for i, v in enumerate(ranking)}
        self._keys: Dict[Exp, tuple] = {}
        if kind == "lex":
            self._keyfn = lambda e: e
        elif kind == "degrevlex":
            self._keyfn = lambda e: (sum(e), tuple(-a for a in reversed(e)))
        else:
            s = self.split
            self._keyfn = lambda e: (sum(e[:s]), tuple(-a for a in reversed(e[:s])),
                                     sum(e[s:]), tuple(-a for a in reversed(e[s:])))

    @classmethod
    def block(cls, eliminate: Iterable[VarRef], keep: Iterable[VarRef]) -> "MonomialOrder":
        eliminate = default_ranking(eliminate)
        keep = default_ranking(v for v in keep if v not in set(eliminate))
        return cls(eliminate + keep, "block", eliminate)

    def key(self, e: Exp):
        k = self._keys.get(e)
        if k is None:
            k = self._keyfn(e)
            self._keys[e] = k
        return k

    @property
    def eliminated(self) -> Tuple[VarRef, ...]:
        return self.ranking[: self.split]

    @property
    def kept(self) -> Tuple[VarRef, ...]:
        return self.ranking[self.split:]

    def extended(self, extra: Iterable[VarRef]) -> "MonomialOrder":
        """Same kind with further variables appended to the lowest block."""
        extra = [v for v in default_ranking(extra) if v not in self.index]
        if not extra:
            return self
        return MonomialOrder(self.ranking + tuple(extra), self.kind, self.eliminated)

    # -- conversion
    def to_internal(self, p: DSPolynomial) -> IPoly:
        out: IPoly = {}
        n = self.nvars
        for m, c in p.terms.items():
            e = [0] * n
            for v, k in m:
                try:
                    e[self.index[v]] = k
                except KeyError:
                    raise UnknownVariableError(f"variable {v} is not in the monomial order") from None
            out[tuple(e)] = c
        return out

    def to_poly(self, f: IPoly, ground: GroundField) -> DSPolynomial:
        terms = {}
        for e, c in f.items():
            terms[tuple(sorted((self.ranking[i], k) for i, k in enumerate(e) if k))] = c
        return DSPolynomial._raw(terms, ground)

    def __repr__(self):
        if self.kind == "block":
            return f"MonomialOrder(block, eliminate={[str(v) for v in self.eliminated]}, keep={[str(v) for v in self.kept]})"
        return f"MonomialOrder({self.kind}, {[str(v) for v in self.ranking]})"


# -- internal polynomial helpers

def _divides(a: Exp, b: Exp) -> bool:
    return all(x <= y for x, y in zip(a, b))


def _emul(a: Exp, b: Exp) -> Exp:
    return tuple(x + y for x, y in zip(a, b))


def _ediv(a: Exp, b: Exp) -> Exp:
    return tuple(x - y for x, y in zip(a, b))


def _elcm(a: Exp, b: Exp) -> Exp:
    return tuple(x if x > y else y for x, y in zip(a, b))


def _disjoint(a: Exp, b: Exp) -> bool:
    return all(x == 0 or y == 0 for x, y in zip(a, b))


def _axpy(f: IPoly, c, shift: Exp, g: IPoly):
    """In place: ``f += c * x^shift * g``."""
    for e, v in g.items():
        ne = _emul(e, shift)
        s = f.get(ne, 0) + c * v
        if s != 0:
            f[ne] = s
        else:
            f.pop(ne, None)


def _scaled(f: IPoly, c) -> IPoly:
    return {e: v * c for e, v in f.items()}


class _Elem:
    """Monic basis element; ``recipe`` records how it was derived when tracking.

    A recipe is a list of ``(c, shift, src)`` meaning ``terms = sum c * x^shift * src``
    where ``src`` is a generator index or an earlier ``_Elem``.
    """

    __slots__ = ("terms", "lm", "recipe", "serial")
    _counter = 0

    def __init__(self, terms, lm, recipe=None):
        self.terms = terms
        self.lm = lm
        self.recipe = recipe
        _Elem._counter += 1
        self.serial = _Elem._counter


def _monic(terms: IPoly, order: MonomialOrder, recipe=None):
    lm = max(terms, key=order.key)
    lc = terms[lm]
    if lc != 1:
        inv = 1 / lc
        terms = _scaled(terms, inv)
        if recipe is not None:
            recipe = [(c * inv, q, src) for c, q, src in recipe]
    return _Elem(terms, lm, recipe)


def _reduce(f: IPoly, basis: Sequence[_Elem], order: MonomialOrder, budget: Optional[Budget],
            steps: Optional[list] = None, full: bool = True) -> IPoly:
    """Normal form of ``f`` modulo ``basis`` (monic elements).

    With ``steps`` every reduction ``f += c * x^q * g`` is appended as ``(c, q, g)``.
    """
    f = dict(f)
    rem: IPoly = {}
    key = order.key
    while f:
        m = max(f, key=key)
        c = f[m]
        for g in basis:
            if _divides(g.lm, m):
                q = _ediv(m, g.lm)
                _axpy(f, -c, q, g.terms)
                if steps is not None:
                    steps.append((-c, q, g))
                if budget is not None:
                    budget.tick()
                break
        else:
            if not full:
                rem.update(f)
                break
            rem[m] = c
            del f[m]
    return rem


def _expand(elems: Sequence[_Elem], ngen: int, zero_exp: Exp, one) -> Dict[int, Dict[int, IPoly]]:
    """Cofactors (generator index -> polynomial) for ``elems`` and everything they derive from."""
    needed: Dict[int, _Elem] = {}
    stack = list(elems)
    while stack:
        e = stack.pop()
        if e.serial in needed:
            continue
        needed[e.serial] = e
        stack.extend(src for _, _, src in e.recipe if isinstance(src, _Elem))
    out: Dict[int, Dict[int, IPoly]] = {}
    for serial in sorted(needed):
        acc: Dict[int, IPoly] = {}
        for c, q, src in needed[serial].recipe:
            if isinstance(src, _Elem):
                for j, poly in out[src.serial].items():
                    _axpy(acc.setdefault(j, {}), c, q, poly)
            else:
                _axpy(acc.setdefault(src, {}), c, q, {zero_exp: one})
        out[serial] = {j: poly for j, poly in acc.items() if poly}
    return out


@dataclass
class GroebnerBasis:
    """A reduced Gröbner basis together with its order.

    When computed with tracking, ``cofactors_of(i)[j]`` is the coefficient of
    ``generators[j]`` in the expression of ``basis[i]``; cofactors are
    expanded on first request.
    """

    basis: List[DSPolynomial]
    order: MonomialOrder
    ground: GroundField
    generators: List[DSPolynomial]
    tracked: bool = False
    reduced: bool = True
    steps: int = 0
    _elems: List[_Elem] = field(default_factory=list, repr=False)
    _cof_cache: Dict[int, List[DSPolynomial]] = field(default_factory=dict, repr=False)

    def __iter__(self):
        return iter(self.basis)

    def __len__(self):
        return len(self.basis)

    def is_unit(self) -> bool:
        return len(self.basis) == 1 and self.basis[0].is_constant() and not self.basis[0].is_zero()

    def leading_monomials(self) -> List[Exp]:
        return [e.lm for e in self._elems]

    def _require_tracking(self):
        if not self.tracked:
            raise ValueError("basis was computed without cofactor tracking")

    def _to_cofactors(self, sparse: Dict[int, IPoly]) -> List[DSPolynomial]:
        return [self.order.to_poly(sparse[j], self.ground) if j in sparse else DSPolynomial.zero(self.ground)
                for j in range(len(self.generators))]

    def cofactors_of(self, i: int) -> List[DSPolynomial]:
        self._require_tracking()
        if i not in self._cof_cache:
            e = self._elems[i]
            table = _expand([e], len(self.generators), (0,) * self.order.nvars, self.ground.one)
            self._cof_cache[i] = self._to_cofactors(table[e.serial])
        return self._cof_cache[i]

    @property
    def cofactors(self) -> Optional[List[List[DSPolynomial]]]:
        if not self.tracked:
            return None
        return [self.cofactors_of(i) for i in range(len(self.basis))]

    def normal_form(self, f: DSPolynomial, budget: Optional[Budget] = None) -> DSPolynomial:
        return normal_form(f, self, budget)

    def contains(self, f: DSPolynomial) -> bool:
        return normal_form(f, self).is_zero()

    def represent(self, f: DSPolynomial, budget: Optional[Budget] = None) -> Optional[List[DSPolynomial]]:
        """Cofactors ``c`` with ``f == sum(c[j] * generators[j])``, or None if f is not in the ideal."""
        self._require_tracking()
        steps: list = []
        rem = _reduce(self.order.to_internal(f), self._elems, self.order, budget, steps=steps)
        if rem:
            return None
        # 0 = f + sum(steps), so f = -sum(steps)
        probe = _Elem({}, None, [(-c, q, g) for c, q, g in steps])
        table = _expand([probe], len(self.generators), (0,) * self.order.nvars, self.ground.one)
        return self._to_cofactors(table[probe.serial])


def _as_list(F) -> List[DSPolynomial]:
    return [p for p in F]


def _ground_of(F: Sequence[DSPolynomial], ground: Optional[GroundField]) -> GroundField:
    if ground is not None:
        return ground
    for p in F:
        return p.field
    return QQ


def buchberger(F: Iterable[DSPolynomial], order: Optional[MonomialOrder] = None, *, track: bool = False,
               budget: Optional[Budget] = None, ground: Optional[GroundField] = None) -> GroebnerBasis:
    """Reduced Gröbner basis of the ideal generated by ``F``.

    Zero generators are ignored.  With ``track=True`` every basis element
    carries cofactors expressing it in terms of the nonzero inputs.
    """
    gens = [p for p in _as_list(F) if not p.is_zero()]
    ground = _ground_of(gens, ground)
    if order is None:
        order = MonomialOrder(default_ranking(v for p in gens for v in p.variables()))
    n = order.nvars
    zero_exp = (0,) * n
    ngen = len(gens)
    polys: List[_Elem] = []
    for idx, p in enumerate(gens):
        recipe = [(ground.one, zero_exp, idx)] if track else None
        polys.append(_monic(order.to_internal(p), order, recipe))

    G: List[int] = []
    pairs: List[Tuple[tuple, int, int, Exp]] = []
    key = order.key

    def update(h: int):
        nonlocal G, pairs
        lmh = polys[h].lm
        cands = [(g, _elcm(polys[g].lm, lmh)) for g in G]
        keep_new = []
        # chain criterion among new pairs: drop (g,h) if another new pair's lcm properly divides it
        for idx, (g, L) in enumerate(cands):
            if _disjoint(polys[g].lm, lmh):
                keep_new.append((g, L, True))
                continue
            dominated = False
            for jdx, (g2, L2) in enumerate(cands):
                if jdx == idx:
                    continue
                if _divides(L2, L) and (L2 != L or jdx < idx):
                    dominated = True
                    break
            if not dominated:
                keep_new.append((g, L, False))
        # product criterion (coprime leading monomials) removes the pair itself
        new_pairs = [(key(L), g, h, L) for g, L, coprime in keep_new if not coprime]
        old = []
        for kp, a, b, L in pairs:
            if _divides(lmh, L) and _elcm(polys[a].lm, lmh) != L and _elcm(polys[b].lm, lmh) != L:
                continue
            old.append((kp, a, b, L))
        pairs = old + new_pairs
        G = [g for g in G if not _divides(lmh, polys[g].lm)] + [h]

    unit = None
    for idx, e in enumerate(polys):
        if all(v == 0 for v in e.lm):
            unit = idx
            break
        update(idx)

    while pairs and unit is None:
        best = min(range(len(pairs)), key=lambda t: (pairs[t][0], pairs[t][1], pairs[t][2]))
        _, a, b, L = pairs.pop(best)
        fa, fb = polys[a], polys[b]
        qa, qb = _ediv(L, fa.lm), _ediv(L, fb.lm)
        s: IPoly = {}
        _axpy(s, 1, qa, fa.terms)
        _axpy(s, -1, qb, fb.terms)
        recipe = [(ground.one, qa, fa), (-ground.one, qb, fb)] if track else None
        if budget is not None:
            budget.tick()
        if not s:
            continue
        h = _reduce(s, [polys[g] for g in G], order, budget, steps=recipe)
        if not h:
            continue
        elem = _monic(h, order, recipe)
        polys.append(elem)
        if all(v == 0 for v in elem.lm):
            unit = len(polys) - 1
            break
        update(len(polys) - 1)

    if unit is not None:
        final = [polys[unit]]
    else:
        # inputs enter unreduced, so minimalize before interreducing tails
        base = []
        for e in sorted((polys[g] for g in G), key=lambda e: key(e.lm)):
            if not any(_divides(b.lm, e.lm) for b in base):
                base.append(e)
        final = []
        for i, e in enumerate(base):
            others = base[:i] + base[i + 1:]
            recipe = [(ground.one, zero_exp, e)] if track else None
            terms = _reduce(e.terms, others, order, budget, steps=recipe)
            final.append(_Elem(terms, e.lm, recipe))
        final.sort(key=lambda e: key(e.lm), reverse=True)

    basis = [order.to_poly(e.terms, ground) for e in final]
    return GroebnerBasis(basis, order, ground, gens, track, True,
                         budget.steps if budget is not None else 0, final)


def normal_form(f: DSPolynomial, G: GroebnerBasis, budget: Optional[Budget] = None) -> DSPolynomial:
    """Remainder of ``f`` modulo ``G``; zero exactly when ``f`` is in the ideal."""
    if f.is_zero():
        return f
    rem = _reduce(G.order.to_internal(f), G._elems, G.order, budget)
    return G.order.to_poly(rem, f.field)


def s_polynomial(f: DSPolynomial, g: DSPolynomial, order: MonomialOrder) -> DSPolynomial:
    fi, gi = order.to_internal(f), order.to_internal(g)
    lf, lg = max(fi, key=order.key), max(gi, key=order.key)
    L = _elcm(lf, lg)
    s: IPoly = {}
    _axpy(s, 1 / fi[lf], _ediv(L, lf), fi)
    _axpy(s, -1 / gi[lg], _ediv(L, lg), gi)
    return order.to_poly(s, f.field)


def leading_monomial(f: DSPolynomial, order: MonomialOrder) -> Exp:
    return max(order.to_internal(f), key=order.key)


def satisfies_buchberger_criterion(G: GroebnerBasis) -> bool:
    """Every S-polynomial of basis pairs reduces to zero."""
    b = G.basis
    for i in range(len(b)):
        for j in range(i + 1, len(b)):
            if not normal_form(s_polynomial(b[i], b[j], G.order), G).is_zero():
                return False
    return True


# -- ideal operations

def _active(F: Iterable[DSPolynomial]) -> set:
    out = set()
    for p in F:
        out |= p.variables()
    return out


def _fresh_aux(F: Iterable[DSPolynomial], extra: Iterable[VarRef] = ()) -> VarRef:
    used = [v.k for v in _active(F) | set(extra) if v.family == "z"]
    return VarRef("z", max(used, default=0) + 1)


def is_trivial_ideal(F: Iterable[DSPolynomial], budget: Optional[Budget] = None) -> bool:
    """True iff the ideal generated by ``F`` is the whole ring (contains 1)."""
    F = [p for p in F if not p.is_zero()]
    if not F:
        return False
    if any(p.is_constant() for p in F):
        return True
    return buchberger(F, budget=budget).is_unit()


def elimination_intersection(F: Iterable[DSPolynomial], keep: Iterable[VarRef], *, track: bool = False,
                             budget: Optional[Budget] = None, return_basis: bool = False):
    """Generators of ``<F> ∩ k[keep]`` from a block-order basis.

    Returns the list of basis elements supported on ``keep`` (empty iff the
    intersection is zero); with ``return_basis`` also the full basis.
    """
    F = [p for p in F if not p.is_zero()]
    keep = set(keep)
    active = _active(F)
    order = MonomialOrder.block(active - keep, keep | active)
    G = buchberger(F, order, track=track, budget=budget, ground=_ground_of(F, None))
    gens = [p for p in G.basis if p.variables() <= keep]
    if return_basis:
        return gens, G
    return gens


def radical_membership(f: DSPolynomial, F: Iterable[DSPolynomial], budget: Optional[Budget] = None) -> bool:
    """Decide ``f ∈ √<F>`` by testing ``1 ∈ <F, 1 - z f>`` with a fresh variable ``z``."""
    F = list(F)
    if f.is_zero():
        return True
    z = _fresh_aux(F + [f])
    zp = DSPolynomial.var(z, f.field)
    return is_trivial_ideal(F + [1 - zp * f], budget)


def saturate(F: Iterable[DSPolynomial], f: DSPolynomial, budget: Optional[Budget] = None) -> List[DSPolynomial]:
    """Generators (a reduced basis) of ``<F> : f^∞``."""
    if f.is_zero():
        raise ValueError("saturation by the zero polynomial")
    F = [p for p in F if not p.is_zero()]
    z = _fresh_aux(F + [f])
    zp = DSPolynomial.var(z, f.field)
    keep = _active(F) | f.variables()
    return elimination_intersection(F + [1 - zp * f], keep, budget=budget)


def intersect_ideals(I: Iterable[DSPolynomial], J: Iterable[DSPolynomial],
                     budget: Optional[Budget] = None) -> List[DSPolynomial]:
    """Generators of ``<I> ∩ <J>`` via ``(z I + (1 - z) J) ∩ k[vars]``."""
    I = [p for p in I if not p.is_zero()]
    J = [p for p in J if not p.is_zero()]
    if not I or not J:
        return []
    z = _fresh_aux(I + J)
    zp = DSPolynomial.var(z, I[0].field)
    keep = _active(I) | _active(J)
    return elimination_intersection([zp * p for p in I] + [(1 - zp) * p for p in J], keep, budget=budget)


def ideal_contains(F: Iterable[DSPolynomial], f: DSPolynomial, budget: Optional[Budget] = None) -> bool:
    F = [p for p in F if not p.is_zero()]
    if f.is_zero():
        return True
    if not F:
        return False
    order = MonomialOrder(default_ranking(_active(F) | f.variables()))
    return normal_form(f, buchberger(F, order, budget=budget)).is_zero()


# -- independent oracle

@dataclass
class OracleResult:
    member: bool
    degree_cap: int
    certificate: Optional[List[DSPolynomial]] = None  # cofactors, aligned with the generator list

    def __bool__(self):
        return self.member


def _monomials_upto(variables: Sequence[VarRef], deg: int):
    for d in range(deg + 1):
        for combo in combinations_with_replacement(variables, d):
            m: Dict[VarRef, int] = {}
            for v in combo:
                m[v] = m.get(v, 0) + 1
            yield tuple(sorted(m.items()))


def macaulay_membership_oracle(f: DSPolynomial, F: Sequence[DSPolynomial], degree_cap: int) -> OracleResult:
    """Is ``f = sum c_i g_i`` with every ``deg(c_i g_i) <= degree_cap``?

    Decided by exact Gaussian elimination on the span of all products
    ``u * g_i`` (``u`` a monomial) of degree at most the cap.  A negative
    answer only means no certificate exists below the cap.
    """
    F = list(F)
    if degree_cap < f.total_degree():
        raise ValueError(f"degree cap {degree_cap} is below deg f = {f.total_degree()}")
    ground = f.field
    if f.is_zero():
        return OracleResult(True, degree_cap, [DSPolynomial.zero(ground) for _ in F])
    variables = sorted(_active(F + [f]))
    columns = []  # (generator index, multiplier monomial, product)
    for gi, g in enumerate(F):
        if g.is_zero():
            continue
        room = degree_cap - g.total_degree()
        if room < 0:
            continue
        for u in _monomials_upto(variables, room):
            columns.append((gi, u, DSPolynomial._raw({u: ground.one}, ground) * g))

    # incremental echelon form: pivot monomial -> (vector, combination of columns)
    pivots: Dict[tuple, Tuple[dict, dict]] = {}

    def eliminate(vec: dict, comb: dict):
        vec = dict(vec)
        comb = dict(comb)
        while True:
            hit = None
            for m in vec:
                if m in pivots:
                    hit = m
                    break
            if hit is None:
                return vec, comb
            pv, pc = pivots[hit]
            c = vec[hit] / pv[hit]
            for m, v in pv.items():
                s = vec.get(m, 0) - c * v
                if s != 0:
                    vec[m] = s
                else:
                    vec.pop(m, None)
            for k, v in pc.items():
                s = comb.get(k, 0) - c * v
                if s != 0:
                    comb[k] = s
                else:
                    comb.pop(k, None)

    for ci, (_, _, prod) in enumerate(columns):
        vec, comb = eliminate(prod.terms, {ci: ground.one})
        if vec:
            pivots[min(vec)] = (vec, comb)

    vec, comb = eliminate(f.terms, {})
    if vec:
        return OracleResult(False, degree_cap)
    # f - sum comb_k col_k == 0, so f = sum comb_k col_k
    cert = [DSPolynomial.zero(ground) for _ in F]
    for k, c in comb.items():
        gi, u, _ = columns[k]
        cert[gi] = cert[gi] + DSPolynomial._raw({u: c}, ground)
    cert = [-c for c in cert]
    return OracleResult(True, degree_cap, cert)
