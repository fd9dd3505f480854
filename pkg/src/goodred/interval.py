"""Two-sided numeric enclosures with outward padding.

This is padded double precision, not certified directed rounding: every
operation widens its result by a few ulps plus an optional relative pad.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

REL_PAD = 1e-12


def _down(x: float, rel: float = 0.0) -> float:
    x = x - abs(x) * rel
    return math.nextafter(math.nextafter(x, -math.inf), -math.inf)


def _up(x: float, rel: float = 0.0) -> float:
    x = x + abs(x) * rel
    return math.nextafter(math.nextafter(x, math.inf), math.inf)


@dataclass(frozen=True)
class Interval:
    lo: float
    hi: float

    def __post_init__(self):
        if not (math.isfinite(self.lo) and math.isfinite(self.hi)):
            raise ValueError(f"non-finite interval [{self.lo}, {self.hi}]")
        if self.lo > self.hi:
            raise ValueError(f"empty interval [{self.lo}, {self.hi}]")

    @classmethod
    def point(cls, x: float, rel: float = 0.0) -> "Interval":
        return cls(_down(x, rel), _up(x, rel))

    @classmethod
    def around(cls, x: float, radius: float) -> "Interval":
        return cls(_down(x - radius), _up(x + radius))

    @property
    def mid(self) -> float:
        return 0.5 * (self.lo + self.hi)

    @property
    def width(self) -> float:
        return self.hi - self.lo

    def contains(self, x) -> bool:
        if isinstance(x, Interval):
            return self.lo <= x.lo and x.hi <= self.hi
        return self.lo <= x <= self.hi

    def overlaps(self, other: "Interval") -> bool:
        return self.lo <= other.hi and other.lo <= self.hi

    def __add__(self, other) -> "Interval":
        if isinstance(other, Interval):
            return Interval(_down(self.lo + other.lo), _up(self.hi + other.hi))
        return Interval(_down(self.lo + other), _up(self.hi + other))

    __radd__ = __add__

    def __mul__(self, other) -> "Interval":
        if isinstance(other, Interval):
            prods = (self.lo * other.lo, self.lo * other.hi, self.hi * other.lo, self.hi * other.hi)
            return Interval(_down(min(prods)), _up(max(prods)))
        a, b = self.lo * other, self.hi * other
        return Interval(_down(min(a, b)), _up(max(a, b)))

    __rmul__ = __mul__

    def __truediv__(self, other: float) -> "Interval":
        if isinstance(other, Interval):
            if other.lo <= 0.0 <= other.hi:
                raise ZeroDivisionError("divisor interval contains 0")
            return self * Interval(_down(1.0 / other.hi), _up(1.0 / other.lo))
        return self * (1.0 / other)

    def sqrt(self) -> "Interval":
        if self.lo < 0:
            raise ValueError("sqrt of interval with negative part")
        return Interval(max(0.0, _down(math.sqrt(self.lo))), _up(math.sqrt(self.hi)))

    def pad(self, rel: float = REL_PAD) -> "Interval":
        return Interval(_down(self.lo, rel), _up(self.hi, rel))

    def hull(self, other: "Interval") -> "Interval":
        return Interval(min(self.lo, other.lo), max(self.hi, other.hi))

    def as_list(self) -> list[float]:
        return [self.lo, self.hi]

    def __repr__(self) -> str:
        return f"Interval({self.lo:.12g}, {self.hi:.12g})"


ZERO = Interval(0.0, 0.0)


def interval_sum(items) -> Interval:
    """Sum intervals with compensated endpoint accumulation."""
    items = list(items)
    if not items:
        return ZERO
    lo = math.fsum(i.lo for i in items)
    hi = math.fsum(i.hi for i in items)
    return Interval(_down(lo, 1e-15), _up(hi, 1e-15))
