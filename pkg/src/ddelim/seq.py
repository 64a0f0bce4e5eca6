"""Finite windows of sequences over the ground field.

A :class:`SequencePoint` holds, for each unknown, the entries at offsets
``0 .. W-1`` from a base index; offset ``o`` stands for ``S^o v``.  Entries are
exact field elements, so ``D`` applied to an entry is exact (zero over Q,
d/dt over Q(t)).
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, Iterable, List, Sequence, Tuple

from .ddpoly import DSPolynomial, PolySystem, VarRef, measure, sigma_shift
from .errors import NonSolvableError, OverlapMismatch, WindowTooSmall
from .field import QQ, GroundField

Unknown = Tuple[str, int]


@dataclass(frozen=True)
class SequencePoint:
    windows: Tuple[Tuple[Unknown, Tuple[object, ...]], ...]
    field: GroundField = QQ
    side: str = "N"

    def __post_init__(self):
        widths = {len(w) for _, w in self.windows}
        if len(widths) > 1:
            raise ValueError(f"all windows must share one width, got {sorted(widths)}")
        if self.side not in ("N", "Z"):
            raise ValueError("side must be 'N' or 'Z'")

    @classmethod
    def make(cls, windows: Dict[Unknown, Sequence], field: GroundField = QQ, side: str = "N") -> "SequencePoint":
        items = tuple(sorted((tuple(u), tuple(field.coerce(a) for a in w)) for u, w in windows.items()))
        return cls(items, field, side)

    @classmethod
    def single(cls, values: Sequence, field: GroundField = QQ, unknown: Unknown = ("y", 1),
               side: str = "N") -> "SequencePoint":
        return cls.make({unknown: values}, field, side)

    @property
    def width(self) -> int:
        return len(self.windows[0][1]) if self.windows else 0

    @property
    def unknowns(self) -> List[Unknown]:
        return [u for u, _ in self.windows]

    def window(self, unknown: Unknown) -> Tuple[object, ...]:
        for u, w in self.windows:
            if u == tuple(unknown):
                return w
        raise KeyError(unknown)

    def as_dict(self) -> Dict[Unknown, Tuple[object, ...]]:
        return dict(self.windows)

    def shifted(self, times: int = 1) -> "SequencePoint":
        """The window of ``S^times`` of the sequence (drops leading entries)."""
        return SequencePoint(tuple((u, w[times:]) for u, w in self.windows), self.field, self.side)

    def derived(self) -> "SequencePoint":
        f = self.field
        return SequencePoint(tuple((u, tuple(f.delta(a) for a in w)) for u, w in self.windows), f, self.side)

    def extended(self, new: Dict[Unknown, object]) -> "SequencePoint":
        return SequencePoint(tuple((u, w + (self.field.coerce(new[u]),)) for u, w in self.windows),
                             self.field, self.side)

    def __str__(self):
        inner = "; ".join(f"{fam}{k} = [" + ", ".join(self.field.format(a) for a in w) + "]"
                          for (fam, k), w in self.windows)
        return f"<{inner}; side {self.side}>"


def _entry(w: SequencePoint, v: VarRef, index: int, cache: dict):
    key = (v, index)
    if key in cache:
        return cache[key]
    try:
        win = w.window((v.family, v.k))
    except KeyError:
        raise WindowTooSmall(f"no window for unknown {v.family}{v.k}") from None
    pos = v.j + index
    if pos >= len(win):
        raise WindowTooSmall(f"{v} needs offset {pos} but the window has width {len(win)}")
    a = win[pos]
    for _ in range(v.i):
        a = w.field.delta(a)
    cache[key] = a
    return a


def evaluate(p: DSPolynomial, w: SequencePoint, index: int = 0):
    """Value at ``index`` of the sequence obtained by substituting ``w`` into ``p``.

    ``D^i S^j v`` becomes ``D^i`` of the window entry at offset ``j + index``;
    coefficients are shifted ``index`` times (the embedding of the ground
    field into sequences).
    """
    if p.field != w.field:
        raise ValueError(f"ground field mismatch: {p.field} vs {w.field}")
    field = w.field
    cache: dict = {}
    total = field.zero
    for m, c in p.terms.items():
        term = field.sigma(c, index) if index else c
        for v, e in m:
            term = term * _entry(w, v, index, cache) ** e
        total = total + term
    return total


def is_partial_solution(F: Iterable[DSPolynomial], w: SequencePoint, ell: int) -> bool:
    """Whether ``S^i f`` vanishes at ``w`` for every ``f`` in F and ``0 <= i < ell``."""
    F = list(F)
    h = PolySystem.of(F, w.field).sigma_order()
    if w.width < ell + h:
        raise WindowTooSmall(f"a partial solution of length {ell} needs width {ell + h}, got {w.width}")
    return all(evaluate(sigma_shift(f, i), w) == 0 for i in range(ell) for f in F)


def _explicit_form(f: DSPolynomial):
    """Split ``f = a * v + b`` with ``v`` the unique top-shift variable (D-order 0)."""
    h = measure(f).ord_sigma
    if h is None:
        raise NonSolvableError(f"{f} has no unknowns")
    top = {v for v in f.variables() if v.j == h}
    if len(top) != 1:
        raise NonSolvableError(f"{f} is not explicit in a single highest-shift variable")
    (v,) = top
    if v.i != 0:
        raise NonSolvableError(f"highest-shift variable {v} of {f} carries a derivative")
    if f.degree_in(v) != 1:
        raise NonSolvableError(f"{f} is not linear in {v}")
    a = f.coefficient_in(v, 1)
    b = f.coefficient_in(v, 0)
    return v, h, a, b


def unroll_recurrence(F: Iterable[DSPolynomial], seed: SequencePoint, steps: int) -> SequencePoint:
    """Extend ``seed`` by ``steps`` entries solving each equation for its top shift.

    Every equation must read ``a * S^h v_k + b`` with ``a``, ``b`` free of shift
    ``h`` and one equation per unknown; the result is a partial solution of
    length ``width - h`` whenever the seed satisfies the earlier equations.
    """
    forms = [_explicit_form(f) for f in F]
    if not forms:
        if steps:
            raise NonSolvableError("empty system determines no entries")
        return seed
    hs = {h for _, h, _, _ in forms}
    if len(hs) != 1:
        raise NonSolvableError("all equations must share the same highest shift")
    (h,) = hs
    solved = [(v.family, v.k) for v, _, _, _ in forms]
    if len(set(solved)) != len(solved) or set(solved) != set(seed.unknowns):
        raise NonSolvableError("each unknown of the seed must be solved by exactly one equation")
    if seed.width < h:
        raise WindowTooSmall(f"seed needs at least {h} entries")
    w = seed
    for _ in range(steps):
        i = w.width - h
        new = {}
        for v, _, a, b in forms:
            av = evaluate(sigma_shift(a, i), w)
            if av == 0:
                raise NonSolvableError(f"leading coefficient of {v} vanishes at step {i}")
            new[(v.family, v.k)] = -evaluate(sigma_shift(b, i), w) / av
        w = w.extended(new)
    return w


# -- reindexing between partial solutions of F and of the triple (X, pi1, pi2)

def reindex_to_triple(w: SequencePoint, h: int, ell: int) -> List[Tuple[Tuple[object, ...], ...]]:
    """Points ``p_i = (a_{i-1}, ..., a_{i-1+h})`` per unknown, for ``i = 1..ell``."""
    if w.width != ell + h:
        raise WindowTooSmall(f"width {w.width} differs from ell + h = {ell + h}")
    return [tuple(win[i - 1: i + h] for _, win in w.windows) for i in range(1, ell + 1)]


def reindex_from_triple(points: Sequence[Sequence[Sequence]], field: GroundField = QQ,
                        unknowns: Sequence[Unknown] = (("y", 1),), side: str = "N") -> SequencePoint:
    """Inverse of :func:`reindex_to_triple`; checks ``pi1(p_{i+1}) == pi2(p_i)``."""
    points = [tuple(tuple(field.coerce(a) for a in comp) for comp in p) for p in points]
    if not points:
        raise ValueError("need at least one point")
    if any(len(p) != len(unknowns) for p in points):
        raise ValueError("every point needs one component per unknown")
    for i in range(len(points) - 1):
        for k, u in enumerate(unknowns):
            if points[i + 1][k][:-1] != points[i][k][1:]:
                raise OverlapMismatch(f"points {i + 1} and {i + 2} disagree on the overlap of {u[0]}{u[1]}")
    windows = {}
    for k, u in enumerate(unknowns):
        windows[tuple(u)] = points[0][k] + tuple(p[k][-1] for p in points[1:])
    return SequencePoint.make(windows, field, side)
