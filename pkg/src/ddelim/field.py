"""Ground fields: the rationals Q and the rational functions Q(t).

On Q the derivation is zero and the shift is the identity.  On Q(t) the
derivation is d/dt and the shift is the substitution t -> t + 1; both commute.
Elements of Q are plain :class:`fractions.Fraction` values, elements of Q(t)
are :class:`RatFunc` instances in canonical form.
"""
from __future__ import annotations

from fractions import Fraction
from functools import total_ordering
from math import comb
from typing import Union

Scalar = Union[int, Fraction]


# -- univariate polynomials over Q, stored low degree first, no trailing zeros

def _trim(c):
    c = list(c)
    while c and c[-1] == 0:
        c.pop()
    return tuple(c)


def _padd(a, b):
    n = max(len(a), len(b))
    return _trim((a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0) for i in range(n))


def _pneg(a):
    return tuple(-x for x in a)


def _pmul(a, b):
    if not a or not b:
        return ()
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x == 0:
            continue
        for j, y in enumerate(b):
            out[i + j] += x * y
    return _trim(out)


def _pscale(a, c):
    return _trim(x * c for x in a) if c != 0 else ()


def _pdivmod(a, b):
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    r = list(a)
    q = [Fraction(0)] * max(len(a) - len(b) + 1, 0)
    lb = b[-1]
    while len(r) >= len(b) and r:
        shift = len(r) - len(b)
        c = r[-1] / lb
        q[shift] = c
        for i, y in enumerate(b):
            r[shift + i] -= c * y
        r = list(_trim(r))
    return _trim(q), tuple(r)


def _pmonic(a):
    if not a:
        return a
    lc = a[-1]
    return tuple(Fraction(x) / lc for x in a)


def _pgcd(a, b):
    while b:
        a, b = b, _pdivmod(a, b)[1]
    return _pmonic(a)


def _pderiv(a):
    return _trim(i * a[i] for i in range(1, len(a)))


def _pshift(a, h=1):
    """Substitute t -> t + h."""
    out = [Fraction(0)] * len(a)
    for i, c in enumerate(a):
        if c == 0:
            continue
        hp = Fraction(1)
        # (t+h)^i = sum_k C(i,k) h^(i-k) t^k
        for k in range(i, -1, -1):
            out[k] += c * comb(i, k) * hp
            hp *= h
    return _trim(out)


def _peval(a, x):
    acc = Fraction(0)
    for c in reversed(a):
        acc = acc * x + c
    return acc


def _pstr(a):
    if not a:
        return "0"
    parts = []
    for i in range(len(a) - 1, -1, -1):
        c = a[i]
        if c == 0:
            continue
        sign = "-" if c < 0 else "+"
        c = abs(c)
        if i == 0:
            body = str(c)
        else:
            mono = "t" if i == 1 else f"t^{i}"
            if c == 1:
                body = mono
            elif c.denominator == 1:
                body = f"{c}*{mono}"
            else:
                body = f"({c})*{mono}"
        parts.append((sign, body))
    s = ("-" if parts[0][0] == "-" else "") + parts[0][1]
    for sign, body in parts[1:]:
        s += f" {sign} {body}"
    return s


@total_ordering
class RatFunc:
    """Element of Q(t): ``num/den`` with gcd 1 and ``den`` monic.

    Polynomials are tuples of Fractions, constant term first.  Instances are
    immutable and hashable; the canonical form makes ``==`` structural.
    """

    __slots__ = ("num", "den", "_hash")

    def __init__(self, num=(), den=(Fraction(1),), *, _canonical=False):
        num = _trim(Fraction(x) for x in num)
        den = _trim(Fraction(x) for x in den)
        if not den:
            raise ZeroDivisionError("zero denominator in Q(t)")
        if not _canonical:
            if not num:
                den = (Fraction(1),)
            else:
                g = _pgcd(num, den)
                if len(g) > 1:
                    num = _pdivmod(num, g)[0]
                    den = _pdivmod(den, g)[0]
                lc = den[-1]
                if lc != 1:
                    num = tuple(x / lc for x in num)
                    den = tuple(x / lc for x in den)
        self.num = num
        self.den = den
        self._hash = None

    @classmethod
    def coerce(cls, x) -> "RatFunc":
        if isinstance(x, RatFunc):
            return x
        if isinstance(x, (int, Fraction)):
            return cls((Fraction(x),), _canonical=True) if x != 0 else cls((), _canonical=True)
        raise TypeError(f"cannot coerce {type(x).__name__} into Q(t)")

    @classmethod
    def t(cls) -> "RatFunc":
        return cls((Fraction(0), Fraction(1)), _canonical=True)

    @classmethod
    def poly(cls, coeffs) -> "RatFunc":
        return cls(coeffs)

    def __add__(self, other):
        try:
            o = RatFunc.coerce(other)
        except TypeError:
            return NotImplemented
        if self.den == o.den:
            return RatFunc(_padd(self.num, o.num), self.den)
        return RatFunc(_padd(_pmul(self.num, o.den), _pmul(o.num, self.den)), _pmul(self.den, o.den))

    __radd__ = __add__

    def __neg__(self):
        return RatFunc(_pneg(self.num), self.den, _canonical=True)

    def __sub__(self, other):
        try:
            return self + (-RatFunc.coerce(other))
        except TypeError:
            return NotImplemented

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        try:
            o = RatFunc.coerce(other)
        except TypeError:
            return NotImplemented
        if not self.num or not o.num:
            return RatFunc((), _canonical=True)
        if len(o.num) == 1 and len(o.den) == 1:
            return RatFunc(_pscale(self.num, o.num[0]), self.den, _canonical=True)
        if len(self.num) == 1 and len(self.den) == 1:
            return RatFunc(_pscale(o.num, self.num[0]), o.den, _canonical=True)
        return RatFunc(_pmul(self.num, o.num), _pmul(self.den, o.den))

    __rmul__ = __mul__

    def inverse(self) -> "RatFunc":
        if not self.num:
            raise ZeroDivisionError("inverse of zero in Q(t)")
        return RatFunc(self.den, self.num)

    def __truediv__(self, other):
        try:
            return self * RatFunc.coerce(other).inverse()
        except TypeError:
            return NotImplemented

    def __rtruediv__(self, other):
        return RatFunc.coerce(other) * self.inverse()

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        out = RatFunc.coerce(1)
        base = self
        while e:
            if e & 1:
                out = out * base
            base = base * base
            e >>= 1
        return out

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = RatFunc.coerce(other)
        if not isinstance(other, RatFunc):
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __lt__(self, other):
        # only a deterministic total order for sorting, no field meaning
        o = RatFunc.coerce(other)
        return (len(self.den), self.den, len(self.num), self.num) < (len(o.den), o.den, len(o.num), o.num)

    def __hash__(self):
        if self._hash is None:
            if len(self.den) == 1 and len(self.num) <= 1:
                self._hash = hash(self.num[0] if self.num else 0)
            else:
                self._hash = hash((self.num, self.den))
        return self._hash

    def __bool__(self):
        return bool(self.num)

    def is_constant(self) -> bool:
        return len(self.den) == 1 and len(self.num) <= 1

    def constant_value(self) -> Fraction:
        if not self.is_constant():
            raise ValueError("not a constant")
        return self.num[0] if self.num else Fraction(0)

    def is_polynomial(self) -> bool:
        return len(self.den) == 1

    def derivative(self) -> "RatFunc":
        # (n/d)' = (n'd - nd') / d^2
        if len(self.den) == 1:
            return RatFunc(_pderiv(self.num), self.den, _canonical=True)
        return RatFunc(_padd(_pmul(_pderiv(self.num), self.den), _pneg(_pmul(self.num, _pderiv(self.den)))),
                       _pmul(self.den, self.den))

    def shift(self, h: int = 1) -> "RatFunc":
        return RatFunc(_pshift(self.num, h), _pshift(self.den, h), _canonical=True)

    def __call__(self, x):
        return _peval(self.num, Fraction(x)) / _peval(self.den, Fraction(x))

    def __str__(self):
        if len(self.den) == 1:
            return _pstr(self.num)
        return f"({_pstr(self.num)})/({_pstr(self.den)})"

    def __repr__(self):
        return f"RatFunc({self})"


class GroundField:
    """A characteristic-zero field with a derivation and a commuting shift."""

    kind = ""

    def coerce(self, x):
        raise NotImplementedError

    @property
    def zero(self):
        return self.coerce(0)

    @property
    def one(self):
        return self.coerce(1)

    def sigma(self, c, times: int = 1):
        raise NotImplementedError

    def delta(self, c):
        raise NotImplementedError

    def is_rational(self, c) -> bool:
        """True when ``c`` lies in the prime field Q."""
        raise NotImplementedError

    def format(self, c) -> str:
        return str(c)

    def __repr__(self):
        return self.kind

    def __eq__(self, other):
        return isinstance(other, GroundField) and self.kind == other.kind

    def __hash__(self):
        return hash(self.kind)


class Rationals(GroundField):
    kind = "QQ"

    def coerce(self, x):
        if isinstance(x, RatFunc):
            return x.constant_value()
        return Fraction(x)

    def sigma(self, c, times=1):
        return c

    def delta(self, c):
        return Fraction(0)

    def is_rational(self, c):
        return True


class RationalFunctions(GroundField):
    kind = "QQ_t"

    def coerce(self, x):
        return RatFunc.coerce(x)

    @property
    def t(self):
        return RatFunc.t()

    def sigma(self, c, times=1):
        if times == 0 or c.is_constant():
            return c
        return c.shift(times)

    def delta(self, c):
        return c.derivative()

    def is_rational(self, c):
        return c.is_constant()


QQ = Rationals()
QQ_t = RationalFunctions()


def field_from_name(name: str) -> GroundField:
    try:
        return {"QQ": QQ, "QQ_t": QQ_t}[name]
    except KeyError:
        raise ValueError(f"unknown ground field {name!r}; expected QQ or QQ_t") from None
