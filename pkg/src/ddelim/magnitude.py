"""Upper-bound estimates for naturals too large to write down.

A :class:`Magnitude` is one of

* a tower ``T(depth, top)`` with ``T(0, x) = x`` and ``T(d, x) = 2 ** T(d-1, x)``;
  canonical when ``top < 2**1000`` and, for ``depth >= 1``, ``top >= 1000``;
* a tetration ``2↑↑height`` where ``height`` is itself a Magnitude, used once a
  tower would need more than ``DEPTH_CAP`` levels;
* ``OVERFLOW``, the trivial bound +inf.

Every operation rounds upward, so the result bounds the exact value of the
same expression evaluated on any naturals bounded by the operands.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional, Union

CAP = 2.0 ** 1000
LOW = 1000.0
DEPTH_CAP = 10**6
_INF = math.inf


def _up(x: float) -> float:
    return math.nextafter(x, _INF)


def _log2_up(x: float) -> float:
    return _up(_up(math.log2(x)))


def _exp2_up(x: float) -> float:
    return _up(_up(2.0 ** x))


@dataclass(frozen=True)
class Magnitude:
    tier: str  # "tower" | "tetration" | "overflow"
    depth: int = 0
    top: float = 0.0
    height: Optional["Magnitude"] = None

    # -- construction
    @staticmethod
    def tower(depth: int, top: float) -> "Magnitude":
        if top != top or top == _INF:
            return OVERFLOW
        top = max(top, 0.0)
        while top >= CAP:
            top = _log2_up(top)
            depth += 1
        while depth > 0 and top < LOW:
            top = _exp2_up(top)
            depth -= 1
        if depth > DEPTH_CAP:
            return Magnitude.tetration(Magnitude.from_int(depth + 5))
        return Magnitude("tower", depth, top)

    @staticmethod
    def tetration(height: "Magnitude") -> "Magnitude":
        """Bound ``2↑↑height``; folded back into a tower when the height is small."""
        if height.tier == "overflow":
            return OVERFLOW
        if height.tier == "tower" and height.depth == 0 and height.top <= DEPTH_CAP:
            h = math.ceil(height.top)
            if h <= 4:
                return Magnitude("tower", 0, float([1, 2, 4, 16, 65536][max(h, 0)]))
            return Magnitude.tower(h - 4, 65536.0)
        return Magnitude("tetration", height=height)

    @staticmethod
    def from_int(v: int) -> "Magnitude":
        if v < 0:
            raise ValueError("magnitudes bound naturals only")
        if v.bit_length() <= 1000:
            f = float(v)
            return Magnitude.tower(0, f if f >= v else _up(f))
        bl = v.bit_length()
        u = v >> (bl - 60)
        return Magnitude.tower(1, _up(math.log2(u + 1) + (bl - 60)))

    @staticmethod
    def lift(v) -> "Magnitude":
        return v if isinstance(v, Magnitude) else Magnitude.from_int(int(v))

    # -- inspection
    @property
    def is_zero(self) -> bool:
        return self.tier == "tower" and self.depth == 0 and self.top == 0.0

    def as_height(self) -> "Magnitude":
        """A height ``h`` with ``self <= 2↑↑h``."""
        if self.tier == "tetration":
            return self.height
        if self.tier == "overflow":
            return OVERFLOW
        return Magnitude.from_int(self.depth + 5)

    def log2(self) -> "Magnitude":
        """Upper bound on log2 of the value (0 for values below 2)."""
        if self.tier == "overflow":
            return OVERFLOW
        if self.tier == "tetration":
            # log2(2↑↑h) = 2↑↑(h-1) <= 2↑↑h
            return self
        if self.depth == 0:
            return Magnitude.tower(0, _log2_up(self.top)) if self.top > 1 else ZERO
        return Magnitude.tower(self.depth - 1, self.top)

    def exp2(self) -> "Magnitude":
        if self.tier == "overflow":
            return OVERFLOW
        if self.tier == "tetration":
            return Magnitude.tetration(self.height + ONE)
        if self.depth == 0 and self.top < LOW:
            return Magnitude.tower(0, _exp2_up(self.top))
        return Magnitude.tower(self.depth + 1, self.top)

    # -- ordering (between bounds, not between the unknown exact values)
    def _cmp_key(self):
        return (self.depth, self.top)

    def __le__(self, other):
        other = Magnitude.lift(other)
        if other.tier == "overflow":
            return True
        if self.tier == "overflow":
            return False
        if self.tier == "tower" and other.tier == "tower":
            return self._cmp_key() <= other._cmp_key()
        return self.as_height() <= other.as_height()

    def __lt__(self, other):
        other = Magnitude.lift(other)
        return self <= other and not other <= self

    def __ge__(self, other):
        return Magnitude.lift(other) <= self

    def __gt__(self, other):
        return Magnitude.lift(other) < self

    def max(self, other) -> "Magnitude":
        other = Magnitude.lift(other)
        if self.tier == "tower" and other.tier == "tower":
            return self if other <= self else other
        if "overflow" in (self.tier, other.tier):
            return OVERFLOW
        return Magnitude.tetration(self.as_height().max(other.as_height()))

    def bounds_int(self, v: int) -> bool:
        """Whether ``v <= self`` (decided with a lower estimate of log2 v)."""
        if self.tier == "overflow":
            return True
        if v <= 1:
            return True
        if self.tier == "tetration":
            return Magnitude.from_int(v) <= self
        if self.depth == 0:
            return v <= self.top
        bl = v.bit_length()
        shift = max(bl - 60, 0)
        low = math.log2(v >> shift) + shift  # <= log2 v up to one ulp
        low = math.nextafter(low, -_INF)
        return Magnitude.tower(self.depth - 1, self.top).bounds_float(low)

    def bounds_float(self, x: float) -> bool:
        if self.tier != "tower":
            return True
        if self.depth == 0:
            return x <= self.top
        if x <= 1:
            return True
        return Magnitude.tower(self.depth - 1, self.top).bounds_float(math.nextafter(math.log2(x), -_INF))

    # -- arithmetic
    def _crude(self, other, step: int) -> "Magnitude":
        h = self.as_height().max(other.as_height()).max(THREE)
        return Magnitude.tetration(h + Magnitude.from_int(step))

    def __add__(self, other) -> "Magnitude":
        other = Magnitude.lift(other)
        if "overflow" in (self.tier, other.tier):
            return OVERFLOW
        if self.tier == "tetration" or other.tier == "tetration":
            return self._crude(other, 1)
        if self.depth == 0 and other.depth == 0:
            return Magnitude.tower(0, _up(self.top + other.top))
        if self.is_zero:
            return other
        if other.is_zero:
            return self
        hi = self.max(other)
        return (hi.log2() + ONE).exp2()

    __radd__ = __add__

    def __mul__(self, other) -> "Magnitude":
        other = Magnitude.lift(other)
        if self.is_zero or other.is_zero:
            return ZERO
        if "overflow" in (self.tier, other.tier):
            return OVERFLOW
        if self.tier == "tetration" or other.tier == "tetration":
            return self._crude(other, 1)
        if self.depth == 0 and other.depth == 0:
            return Magnitude.tower(0, _up(self.top * other.top))
        return (self.log2() + other.log2()).exp2()

    __rmul__ = __mul__

    def __pow__(self, other) -> "Magnitude":
        other = Magnitude.lift(other)
        if other.is_zero:
            return ONE
        if self.is_zero:
            return ZERO
        if "overflow" in (self.tier, other.tier):
            return OVERFLOW
        if self.tier == "tower" and self.depth == 0 and self.top <= 1.0:
            return ONE
        if self.tier == "tetration" or other.tier == "tetration":
            return self._crude(other, 2)
        return (other * self.log2()).exp2()

    def __rpow__(self, base) -> "Magnitude":
        return Magnitude.lift(base) ** self

    # -- reporting
    def to_dict(self) -> dict:
        if self.tier == "tower":
            return {"tier": "tower", "depth": self.depth, "top": float(self.top)}
        if self.tier == "tetration":
            return {"tier": "tetration", "height": self.height.to_dict()}
        return {"tier": "overflow"}

    def __str__(self):
        if self.tier == "overflow":
            return "overflow"
        if self.tier == "tetration":
            return f"2^^({self.height})"
        if self.depth == 0:
            return f"{self.top:.6g}"
        if self.depth <= 3:
            return "2^" * self.depth + f"{self.top:.6g}"
        return f"tower({self.depth}, {self.top:.6g})"


ZERO = Magnitude("tower", 0, 0.0)
ONE = Magnitude("tower", 0, 1.0)
THREE = Magnitude("tower", 0, 3.0)
OVERFLOW = Magnitude("overflow")

Number = Union[int, Magnitude]
