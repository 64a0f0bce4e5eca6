"""The computable bound tower behind effective elimination.

Functions (all parameters are naturals)::

    G(n, r, D)     degree bound for the separating polynomial of a prime component
    F(n, r, m, D)  degree bound after differential projection
    C(n, r, m, D)  number of prime components (recursion on (m, D))
    L(n, r, d)     = C(n, r, n(r+1), F(n, r, n(r+1), d))
    A_i, tau_i     train recursions; train_bound = A_{tau_{n(h+1)}}
    final_B        B_delta(...) + s for a pluggable differential bound B_delta

Values are exact Python ints while they fit in the digit budget and
:class:`~ddelim.magnitude.Magnitude` upper bounds afterwards.  Degree-0
inputs evaluate to 0 (the empty variety).
"""
from __future__ import annotations

import math
import sys
from dataclasses import dataclass, field
from typing import Callable, Dict, List, Optional, Tuple, Union

from .magnitude import OVERFLOW, Magnitude, Number

DEFAULT_DIGIT_BUDGET = 100_000
SPLIT_LIMIT = 64  # D above this uses C(m, D) <= D * irr(m, D) instead of enumerating splits
ITER_CAP = 10_000  # recursion levels / sequence indices iterated explicitly

if hasattr(sys, "set_int_max_str_digits"):
    sys.set_int_max_str_digits(0)


@dataclass(frozen=True)
class BoundValue:
    """An exact natural, or a magnitude upper bound when exact evaluation was abandoned."""

    exact: Optional[int]
    magnitude: Magnitude
    digit_budget: int = DEFAULT_DIGIT_BUDGET

    @classmethod
    def of(cls, v: Number, digit_budget: int = DEFAULT_DIGIT_BUDGET) -> "BoundValue":
        if isinstance(v, Magnitude):
            return cls(None, v, digit_budget)
        return cls(v, Magnitude.from_int(v), digit_budget)

    @property
    def is_exact(self) -> bool:
        return self.exact is not None

    @property
    def value(self) -> Number:
        return self.exact if self.exact is not None else self.magnitude

    def __eq__(self, other):
        if isinstance(other, int):
            return self.exact == other
        if isinstance(other, BoundValue):
            return (self.exact, self.magnitude) == (other.exact, other.magnitude)
        return NotImplemented

    def __hash__(self):
        return hash((self.exact, self.magnitude))

    def to_dict(self) -> dict:
        d = {"exact": None if self.exact is None else str(self.exact), "magnitude": self.magnitude.to_dict()}
        if self.exact is not None:
            d["digits"] = len(str(self.exact))
        return d

    def __str__(self):
        if self.exact is None:
            return f"<= {self.magnitude}"
        s = str(self.exact)
        return s if len(s) <= 60 else f"{s[:20]}...{s[-20:]} ({len(s)} digits)"


class Arith:
    """Natural-number arithmetic that degrades to magnitudes past the digit budget."""

    def __init__(self, digit_budget: int = DEFAULT_DIGIT_BUDGET, magnitude: bool = False):
        self.digit_budget = digit_budget
        self.bits = int(digit_budget * math.log2(10)) + 1
        self.magnitude = magnitude

    def lift(self, v) -> Number:
        if isinstance(v, Magnitude):
            return v
        v = int(v)
        if v < 0:
            raise ValueError("bound parameters are naturals")
        return Magnitude.from_int(v) if self.magnitude else v

    def _fit(self, v: int) -> Number:
        return v if v.bit_length() <= self.bits else Magnitude.from_int(v)

    def add(self, a, b) -> Number:
        a, b = self.lift(a), self.lift(b)
        if isinstance(a, int) and isinstance(b, int):
            return self._fit(a + b)
        return Magnitude.lift(a) + b

    def mul(self, a, b) -> Number:
        a, b = self.lift(a), self.lift(b)
        if isinstance(a, int) and isinstance(b, int):
            if a.bit_length() + b.bit_length() > self.bits + 1:
                return Magnitude.lift(a) * b
            return self._fit(a * b)
        return Magnitude.lift(a) * b

    def pow(self, a, b) -> Number:
        a, b = self.lift(a), self.lift(b)
        if isinstance(a, int) and isinstance(b, int):
            if b == 0 or a <= 1:
                return 1 if b == 0 else a
            if (a.bit_length() - 1) * b > self.bits:
                return Magnitude.lift(a) ** b
            return self._fit(a ** b)
        return Magnitude.lift(a) ** b

    def max(self, a, b) -> Number:
        if isinstance(a, int) and isinstance(b, int):
            return max(a, b)
        return Magnitude.lift(a).max(b)

    def is_zero(self, a) -> bool:
        return a == 0 if isinstance(a, int) else a.is_zero

    def small_int(self, a, limit: int) -> Optional[int]:
        """``a`` as an int when it is an exact int not above ``limit``."""
        if isinstance(a, int) and a <= limit:
            return a
        if isinstance(a, Magnitude) and a.tier == "tower" and a.depth == 0 and a.top == int(a.top) \
                and a.top <= limit and self.magnitude:
            return int(a.top)
        return None


class _Height:
    """Crude arithmetic on tetration heights: ``+``/``*`` raise by 1, ``**`` by 2."""

    def lift(self, v):
        return v if isinstance(v, _H) else _H(2)

    def add(self, a, b):
        return _H(max(self.lift(a).h, self.lift(b).h, 3) + 1)

    mul = add

    def pow(self, a, b):
        return _H(max(self.lift(a).h, self.lift(b).h, 3) + 2)


@dataclass(frozen=True)
class _H:
    h: int


# -- closed forms, written once over an arithmetic

def _G(A, n, r, D):
    N = A.mul(n, A.add(r, 1))
    twoN = A.mul(2, N)
    inner = A.add(A.mul(2, A.mul(N, N)), 2)
    first = A.mul(A.mul(twoN, A.pow(inner, N)), A.pow(D, A.add(twoN, 1)))
    return A.add(first, A.mul(twoN, D))


def _F(A, n, r, m, D):
    N = A.mul(n, A.add(r, 1))
    B = A.pow(D, A.mul(N, A.pow(2, A.add(m, 1))))
    return A.pow(D, A.mul(N, B))


def _level_increment() -> int:
    """Height increase of ``D -> F(n, r, m, G(n, r, D))`` under crude arithmetic."""
    A = _Height()
    base = _H(3)
    out = _F(A, base, base, base, _G(A, base, base, base))
    return out.h - 3


LEVEL_INCREMENT = _level_increment()


@dataclass
class BoundEvaluator:
    """Evaluates the tower with a shared memo table and call trace.

    ``trace`` records every (parent, child) pair of the exact C recursion so
    tests can check that recursion only descends lexicographically in (m, D).
    """

    digit_budget: int = DEFAULT_DIGIT_BUDGET
    magnitude: bool = False
    memo: Dict[tuple, Number] = field(default_factory=dict)
    trace: List[Tuple[tuple, tuple]] = field(default_factory=list)
    record_trace: bool = False

    def __post_init__(self):
        self.A = Arith(self.digit_budget, self.magnitude)
        self._stack: List[tuple] = []

    def _wrap(self, v: Number) -> BoundValue:
        return BoundValue.of(v, self.digit_budget)

    # raw evaluators return int | Magnitude
    def G_raw(self, n, r, D) -> Number:
        A = self.A
        if A.is_zero(A.lift(D)):
            return A.lift(0)
        return _G(A, n, r, D)

    def F_raw(self, n, r, m, D) -> Number:
        A = self.A
        if A.is_zero(A.lift(D)):
            return A.lift(0)
        return _F(A, n, r, m, D)

    def _irr(self, n, r, m, D) -> Number:
        """Bound for a prime ideal: 1 + C(m-1, F(m-1, G(D)))."""
        A = self.A
        m1 = A.add(m, 0) if isinstance(m, Magnitude) else m - 1
        return A.add(1, self.C_raw(n, r, m1, self.F_raw(n, r, m1, self.G_raw(n, r, D))))

    def _enter(self, key):
        if self._stack and self.record_trace:
            self.trace.append((self._stack[-1], key))
        self._stack.append(key)

    def C_raw(self, n, r, m, D) -> Number:
        A = self.A
        D = A.lift(D)
        if A.is_zero(D):
            return A.lift(0)
        mi = m if isinstance(m, int) else A.small_int(m, ITER_CAP)
        if mi == 0:
            return D
        if mi is None or mi > ITER_CAP:
            return self._C_height(n, r, m, D)
        key = (n, r, mi, D)
        if key in self.memo:
            if self.record_trace and self._stack:
                self.trace.append((self._stack[-1], ("C", mi, D)))
            return self.memo[key]
        self._enter(("C", mi, D))
        try:
            Di = A.small_int(D, SPLIT_LIMIT)
            if Di is None:
                # every partition has at most D parts, each bounded by irr(m, D)
                val = A.mul(D, self._irr(n, r, mi, D))
                val = Magnitude.lift(val)
            else:
                val = self._irr(n, r, mi, Di)
                for d1 in range(1, Di // 2 + 1):
                    val = A.max(val, A.add(self.C_raw(n, r, mi, d1), self.C_raw(n, r, mi, Di - d1)))
        finally:
            self._stack.pop()
        self.memo[key] = val
        return val

    def _C_height(self, n, r, m, D) -> Magnitude:
        """C for a level count too large to iterate: ``2↑↑(H0 + (inc + 2) m)``."""
        heights = [Magnitude.lift(v).as_height() for v in (D, n, r, m)]
        H0 = heights[0]
        for h in heights[1:]:
            H0 = H0.max(h)
        H0 = H0.max(3)
        return Magnitude.tetration(H0 + Magnitude.from_int(LEVEL_INCREMENT + 2) * Magnitude.lift(m))

    def L_raw(self, n, r, d) -> Number:
        A = self.A
        N = A.mul(n, A.add(r, 1))
        return self.C_raw(n, r, N, self.F_raw(n, r, N, d))

    # public
    def G(self, n, r, D) -> BoundValue:
        return self._wrap(self.G_raw(n, r, D))

    def F(self, n, r, m, D) -> BoundValue:
        return self._wrap(self.F_raw(n, r, m, D))

    def C(self, n, r, m, D) -> BoundValue:
        return self._wrap(self.C_raw(n, r, m, D))

    def L(self, n, r, d) -> BoundValue:
        return self._wrap(self.L_raw(n, r, d))

    def train(self, n, s, h, d) -> "TrainBound":
        return _train(self, n, s, h, d)


@dataclass
class TrainBound:
    """``A_{tau_{n(h+1)}}`` with the A and tau prefixes that were computed."""

    value: BoundValue
    A: List[BoundValue]
    tau: List[BoundValue]
    note: str = ""


def _train(ev: BoundEvaluator, n, s, h, d) -> TrainBound:
    A = ev.A
    nh = A.mul(n, A.add(h, 1))
    nsh = A.mul(A.mul(n, s), A.add(h, 1))
    As: List[Number] = [A.add(ev.L_raw(nh, s, d), 1)]
    stationary_from: Optional[int] = None

    def A_at(i: int) -> Number:
        nonlocal stationary_from
        while len(As) <= i:
            if stationary_from is not None:
                return As[stationary_from]
            prev = As[-1]
            nxt = A.add(prev, ev.L_raw(A.mul(nh, prev), s, d))
            if isinstance(nxt, int) and nxt == prev:
                stationary_from = len(As) - 1
                return prev
            As.append(nxt)
        return As[i]

    count = A.small_int(nh, ITER_CAP)
    taus: List[Number] = [nsh]
    note = ""
    value: Number
    if count is None:
        value, note = OVERFLOW, "tau index count n(h+1) is itself too large to iterate"
    else:
        value = None
        for _ in range(count):
            idx = A.small_int(taus[-1], ITER_CAP)
            if idx is None and stationary_from is None:
                value, note = OVERFLOW, "tau index exceeds the iteration cap"
                break
            a_tau = A_at(idx) if idx is not None else As[stationary_from]
            taus.append(A.add(A.add(taus[-1], A.mul(nsh, a_tau)), 1))
        if value is None:
            idx = A.small_int(taus[-1], ITER_CAP)
            if idx is None and stationary_from is None:
                value, note = OVERFLOW, "final tau index exceeds the iteration cap"
            else:
                value = A_at(idx) if idx is not None else As[stationary_from]
    wrap = ev._wrap
    return TrainBound(wrap(value), [wrap(a) for a in As], [wrap(t) for t in taus], note)


# -- module-level API with a default evaluator per call

def _ev(digit_budget, magnitude) -> BoundEvaluator:
    return BoundEvaluator(digit_budget, magnitude)


def G_bound(n, r, D, *, digit_budget=DEFAULT_DIGIT_BUDGET, magnitude=False) -> BoundValue:
    """``2N (2N^2 + 2)^N D^(2N+1) + 2N D`` with ``N = n(r+1)``."""
    return _ev(digit_budget, magnitude).G(n, r, D)


def F_bound(n, r, m, D, *, digit_budget=DEFAULT_DIGIT_BUDGET, magnitude=False) -> BoundValue:
    """``D^(N * D^(N * 2^(m+1)))`` with ``N = n(r+1)``; 0 at ``D = 0``."""
    return _ev(digit_budget, magnitude).F(n, r, m, D)


def C_bound(n, r, m, D, *, digit_budget=DEFAULT_DIGIT_BUDGET, magnitude=False) -> BoundValue:
    return _ev(digit_budget, magnitude).C(n, r, m, D)


def L_bound(n, r, d, *, digit_budget=DEFAULT_DIGIT_BUDGET, magnitude=False) -> BoundValue:
    return _ev(digit_budget, magnitude).L(n, r, d)


def tau0(n, s, h) -> int:
    return n * s * (h + 1)


def train_bound(n, s, h, d, *, digit_budget=DEFAULT_DIGIT_BUDGET, magnitude=False) -> TrainBound:
    return _ev(digit_budget, magnitude).train(n, s, h, d)


def ritt_order_bound(n: int, s: int) -> int:
    """Order bound ``n * s`` for components of a variety cut out by order-``s`` equations."""
    return n * s


BDeltaFn = Callable[[Number, Number, Number, Arith], Number]


def final_B(r, s, h, d, B_delta_fn: BDeltaFn, *, digit_budget=DEFAULT_DIGIT_BUDGET,
            magnitude=False) -> Tuple[BoundValue, TrainBound]:
    """``B_delta(r(s+1)(A+h+1), r(s+1)(A+h+1), d) + s`` with ``A = train_bound(r, s, h, d)``."""
    ev = _ev(digit_budget, magnitude)
    ar = ev.A
    tb = ev.train(r, s, h, d)
    Aval = tb.value.value
    arg = ar.mul(ar.mul(r, ar.add(s, 1)), ar.add(ar.add(Aval, h), 1))
    bd = B_delta_fn(arg, arg, ar.lift(d), ar)
    return ev._wrap(ar.add(bd, s)), tb


# -- B_delta plugs (synthetic, monotone); selected by name from the CLI config

def _plug_zero(**_):
    return lambda alpha, m, d, A: A.lift(0)


def _plug_constant(c: int = 0, **_):
    return lambda alpha, m, d, A: A.lift(c)


def _plug_affine(a: int = 1, b: int = 1, c: int = 1, e: int = 0, **_):
    return lambda alpha, m, d, A: A.add(A.add(A.mul(a, alpha), A.mul(b, m)), A.add(A.mul(c, d), e))


def _plug_power(base_shift: int = 1, **_):
    """``(d + base_shift) ** ((alpha + 1) * 2 ** (m + 1))``: a doubly exponential stand-in."""
    return lambda alpha, m, d, A: A.pow(A.add(d, base_shift),
                                        A.mul(A.add(alpha, 1), A.pow(2, A.add(m, 1))))


PLUGS = {"zero": _plug_zero, "constant": _plug_constant, "affine": _plug_affine, "power": _plug_power}


def make_plug(name: str, **params) -> BDeltaFn:
    try:
        factory = PLUGS[name]
    except KeyError:
        raise ValueError(f"unknown B_delta plug {name!r}; choose from {sorted(PLUGS)}") from None
    return factory(**{k: int(v) for k, v in params.items()})
