"""Differential-difference polynomials.

A :class:`DSPolynomial` is a sparse polynomial over a ground field in the
variables ``D^i S^j v_k`` (``D`` the derivation, ``S`` the shift, ``v`` one of
the two unknown families ``x`` and ``y``).  Values are immutable.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from typing import Dict, Iterable, Iterator, NamedTuple, Optional, Tuple

from .field import QQ, GroundField

FAMILIES = ("x", "y", "z")  # "z" is reserved for auxiliary variables (saturation, intersection)


class VarRef(NamedTuple):
    """The variable ``D^i S^j`` applied to unknown ``family``-``k``."""

    family: str
    k: int
    i: int = 0
    j: int = 0

    def shifted(self, times: int = 1) -> "VarRef":
        return VarRef(self.family, self.k, self.i, self.j + times)

    def derived(self, times: int = 1) -> "VarRef":
        return VarRef(self.family, self.k, self.i + times, self.j)

    @property
    def order(self) -> int:
        return self.i + self.j

    def to_text(self) -> str:
        s = f"{self.family}{self.k}"
        for _ in range(self.j):
            s = f"S({s})"
        for _ in range(self.i):
            s = f"D({s})"
        return s

    def __str__(self):
        return self.to_text()


Monomial = Tuple[Tuple[VarRef, int], ...]
ONE: Monomial = ()


def mono_mul(a: Monomial, b: Monomial) -> Monomial:
    if not a:
        return b
    if not b:
        return a
    d = dict(a)
    for v, e in b:
        d[v] = d.get(v, 0) + e
    return tuple(sorted(d.items()))


def mono_degree(m: Monomial, family: Optional[str] = None) -> int:
    return sum(e for v, e in m if family is None or v.family == family)


def _mono_map(m: Monomial, f) -> Monomial:
    return tuple(sorted((f(v), e) for v, e in m))


class Measure(NamedTuple):
    ord: Optional[int]
    ord_delta: Optional[int]
    ord_sigma: Optional[int]
    deg_y: int
    deg_x: int


class DSPolynomial:
    """Sparse polynomial ``{Monomial: coefficient}`` over a ground field.

    Zero coefficients are never stored, so two polynomials are equal exactly
    when their term maps are equal.
    """

    __slots__ = ("field", "terms", "_hash")

    def __init__(self, terms: Optional[Dict[Monomial, object]] = None, field: GroundField = QQ):
        self.field = field
        clean = {}
        if terms:
            for m, c in terms.items():
                c = field.coerce(c)
                if c != 0:
                    clean[m] = c
        self.terms: Dict[Monomial, object] = clean
        self._hash = None

    @classmethod
    def _raw(cls, terms, field):
        p = cls.__new__(cls)
        p.field = field
        p.terms = terms
        p._hash = None
        return p

    # -- constructors
    @classmethod
    def const(cls, c, field: GroundField = QQ) -> "DSPolynomial":
        return cls({ONE: c}, field)

    @classmethod
    def var(cls, v: VarRef, field: GroundField = QQ) -> "DSPolynomial":
        return cls._raw({((v, 1),): field.one}, field)

    @classmethod
    def zero(cls, field: GroundField = QQ) -> "DSPolynomial":
        return cls._raw({}, field)

    # -- arithmetic
    def _coerce(self, other) -> "DSPolynomial":
        if isinstance(other, DSPolynomial):
            if other.field != self.field:
                raise ValueError(f"ground field mismatch: {self.field} vs {other.field}")
            return other
        return DSPolynomial.const(other, self.field)

    def __add__(self, other):
        o = self._coerce(other)
        out = dict(self.terms)
        for m, c in o.terms.items():
            s = out.get(m, 0) + c
            if s != 0:
                out[m] = s
            else:
                out.pop(m, None)
        return DSPolynomial._raw(out, self.field)

    __radd__ = __add__

    def __neg__(self):
        return DSPolynomial._raw({m: -c for m, c in self.terms.items()}, self.field)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        o = self._coerce(other)
        out: Dict[Monomial, object] = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in o.terms.items():
                m = mono_mul(m1, m2)
                s = out.get(m, 0) + c1 * c2
                if s != 0:
                    out[m] = s
                else:
                    out.pop(m, None)
        return DSPolynomial._raw(out, self.field)

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if e < 0:
            raise ValueError("negative power of a polynomial")
        out = DSPolynomial.const(1, self.field)
        base = self
        while e:
            if e & 1:
                out = out * base
            base = base * base
            e >>= 1
        return out

    def scale(self, c) -> "DSPolynomial":
        c = self.field.coerce(c)
        if c == 0:
            return DSPolynomial.zero(self.field)
        return DSPolynomial._raw({m: v * c for m, v in self.terms.items()}, self.field)

    def __eq__(self, other):
        if not isinstance(other, DSPolynomial):
            try:
                other = self._coerce(other)
            except (TypeError, ValueError):
                return NotImplemented
        return self.field == other.field and self.terms == other.terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.field.kind, frozenset(self.terms.items())))
        return self._hash

    def __bool__(self):
        return bool(self.terms)

    # -- inspection
    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return all(m == ONE for m in self.terms)

    def constant_term(self):
        return self.terms.get(ONE, self.field.zero)

    def variables(self) -> frozenset:
        return frozenset(v for m in self.terms for v, _ in m)

    def total_degree(self) -> int:
        return max((mono_degree(m) for m in self.terms), default=0)

    def degree_in(self, v: VarRef) -> int:
        return max((e for m in self.terms for w, e in m if w == v), default=0)

    def coefficient_in(self, v: VarRef, e: int) -> "DSPolynomial":
        """Coefficient of ``v^e`` when the polynomial is viewed as univariate in ``v``."""
        out = {}
        for m, c in self.terms.items():
            d = dict(m)
            if d.get(v, 0) == e:
                d.pop(v, None)
                out[tuple(sorted(d.items()))] = c
        return DSPolynomial._raw(out, self.field)

    def sorted_terms(self) -> list:
        """Terms in canonical print order: higher total degree first, then variables."""
        return sorted(self.terms.items(), key=lambda mc: (-mono_degree(mc[0]), _mono_sort_key(mc[0])))

    def map_variables(self, f) -> "DSPolynomial":
        out: Dict[Monomial, object] = {}
        for m, c in self.terms.items():
            nm = _mono_map(m, f)
            s = out.get(nm, 0) + c
            if s != 0:
                out[nm] = s
            else:
                out.pop(nm, None)
        return DSPolynomial._raw(out, self.field)

    def to_text(self) -> str:
        return format_polynomial(self)

    def __str__(self):
        return self.to_text()

    def __repr__(self):
        return f"DSPolynomial({self.to_text()!r}, {self.field.kind})"


def _mono_sort_key(m: Monomial):
    # highest variables first, so S(y1)^2 prints before y1
    return tuple((-_var_rank(v)[0],) + _var_rank(v)[1:] + (-e,) for v, e in reversed(m))


def _var_rank(v: VarRef):
    return (v.i + v.j, v.family, v.k, v.j, v.i)


def _coeff_text(field: GroundField, c) -> Tuple[bool, str]:
    """Return (negative, body) where body is safe to juxtapose with ``*``."""
    if field.kind == "QQ":
        neg = c < 0
        a = abs(c)
        return neg, str(a)
    # Q(t)
    if c.is_constant():
        v = c.constant_value()
        return v < 0, str(abs(v))
    if c.is_polynomial() and len(c.num) and sum(1 for x in c.num if x != 0) == 1:
        lead = c.num[-1]
        if lead < 0:
            return True, str(-c)
        return False, str(c)
    body = str(c)
    if c.is_polynomial():
        body = f"({body})"
    return False, body


def format_polynomial(p: DSPolynomial) -> str:
    """Canonical printer; the output re-parses to the same polynomial."""
    if p.is_zero():
        return "0"
    pieces = []
    for m, c in p.sorted_terms():
        neg, body = _coeff_text(p.field, c)
        mono = "*".join(v.to_text() if e == 1 else f"{v.to_text()}^{e}" for v, e in m)
        if not mono:
            term = body
        elif body == "1":
            term = mono
        else:
            term = f"{body}*{mono}"
        pieces.append((neg, term))
    out = ("-" if pieces[0][0] else "") + pieces[0][1]
    for neg, term in pieces[1:]:
        out += (" - " if neg else " + ") + term
    return out


# -- the two operators

def sigma_shift(p: DSPolynomial, times: int = 1) -> DSPolynomial:
    """Apply the shift: ``D^i S^j v -> D^i S^(j+times) v`` and shift coefficients."""
    if times == 0:
        return p
    field = p.field
    return DSPolynomial._raw(
        {_mono_map(m, lambda v: v.shifted(times)): field.sigma(c, times) for m, c in p.terms.items()},
        field,
    )


def delta_derive(p: DSPolynomial, times: int = 1) -> DSPolynomial:
    """Apply the derivation ``times`` times (Leibniz rule, d/dt on Q(t) coefficients)."""
    for _ in range(times):
        p = _delta_once(p)
    return p


def _delta_once(p: DSPolynomial) -> DSPolynomial:
    field = p.field
    out: Dict[Monomial, object] = {}

    def acc(m, c):
        s = out.get(m, 0) + c
        if s != 0:
            out[m] = s
        else:
            out.pop(m, None)

    for m, c in p.terms.items():
        dc = field.delta(c)
        if dc != 0:
            acc(m, dc)
        for idx, (v, e) in enumerate(m):
            d = dict(m)
            if e == 1:
                del d[v]
            else:
                d[v] = e - 1
            dv = v.derived()
            d[dv] = d.get(dv, 0) + 1
            acc(tuple(sorted(d.items())), c * e)
    return DSPolynomial._raw(out, field)


def measure(p: DSPolynomial) -> Measure:
    """Orders (total, in D, in S) and degrees in the y- and x-families.

    Orders of a constant polynomial are ``None``.
    """
    vs = p.variables()
    deg_y = max((mono_degree(m, "y") for m in p.terms), default=0)
    deg_x = max((mono_degree(m, "x") for m in p.terms), default=0)
    if not vs:
        return Measure(None, None, None, deg_y, deg_x)
    return Measure(
        max(v.i + v.j for v in vs),
        max(v.i for v in vs),
        max(v.j for v in vs),
        deg_y,
        deg_x,
    )


def prolong(F: Iterable[DSPolynomial], delta_levels: int, sigma_levels: int) -> list:
    """All ``D^a S^b f`` for ``f`` in F, ``a <= delta_levels``, ``b <= sigma_levels``.

    Duplicates are dropped; the output order is deterministic (generator, then
    shift, then derivative).
    """
    if delta_levels < 0 or sigma_levels < 0:
        raise ValueError("prolongation levels must be nonnegative")
    seen = set()
    out = []
    for f in F:
        for b in range(sigma_levels + 1):
            g = sigma_shift(f, b)
            for a in range(delta_levels + 1):
                if a:
                    g = delta_derive(g)
                if g.is_zero() or g in seen:
                    continue
                seen.add(g)
                out.append(g)
    return out


# -- convenience

def var(family: str, k: int = 1, i: int = 0, j: int = 0, field: GroundField = QQ) -> DSPolynomial:
    if family not in FAMILIES:
        raise ValueError(f"unknown variable family {family!r}")
    return DSPolynomial.var(VarRef(family, k, i, j), field)


def y(k: int = 1, field: GroundField = QQ) -> DSPolynomial:
    return var("y", k, field=field)


def x(k: int = 1, field: GroundField = QQ) -> DSPolynomial:
    return var("x", k, field=field)


S = sigma_shift
D = delta_derive


@dataclass(frozen=True)
class PolySystem:
    """A finite system of equations ``f = 0`` with declared unknown counts."""

    equations: Tuple[DSPolynomial, ...]
    field: GroundField = QQ
    q: int = 0  # number of x-unknowns
    r: int = 1  # number of y-unknowns

    @classmethod
    def of(cls, equations, field: Optional[GroundField] = None, q: Optional[int] = None,
           r: Optional[int] = None) -> "PolySystem":
        eqs = tuple(equations)
        if field is None:
            field = eqs[0].field if eqs else QQ
        vs = set().union(*(e.variables() for e in eqs)) if eqs else set()
        if q is None:
            q = max((v.k for v in vs if v.family == "x"), default=0)
        if r is None:
            r = max((v.k for v in vs if v.family == "y"), default=0)
        return cls(eqs, field, q, r)

    def __iter__(self) -> Iterator[DSPolynomial]:
        return iter(self.equations)

    def __len__(self):
        return len(self.equations)

    def variables(self) -> frozenset:
        return frozenset().union(*(e.variables() for e in self.equations)) if self.equations else frozenset()

    def sigma_order(self) -> int:
        """Maximal shift order over the equations (0 for an empty or constant system)."""
        return max((m.ord_sigma or 0 for m in map(measure, self.equations)), default=0)


def unknowns(family: str, count: int) -> list:
    return [VarRef(family, k) for k in range(1, count + 1)]


def all_varrefs(families: Iterable[Tuple[str, int]], max_i: int, max_j: int) -> list:
    return [VarRef(f, k, i, j) for f, n in families for k in range(1, n + 1)
            for i, j in product(range(max_i + 1), range(max_j + 1))]
