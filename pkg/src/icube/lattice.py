"""Exact integer/rational lattice primitives shared by every other module.

Vectors are plain tuples of Python ints (arbitrary precision), rationals are
``fractions.Fraction``.  Everything here is a pure function on immutable
values.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from math import gcd
from typing import Iterator, Sequence

IVec2 = tuple[int, int]
IVec3 = tuple[int, int, int]


def reduce_direction(v: IVec3) -> IVec3:
    """Canonical coprime representative of a projection direction.

    Divides out gcd(|x|,|y|,|z|) and flips sign so the first nonzero
    component is positive; (a,b,c) and (-a,-b,-c) describe the same
    projection.
    """
    if all(x == 0 for x in v):
        raise ValueError("degenerate direction")
    g = gcd(gcd(abs(v[0]), abs(v[1])), abs(v[2]))
    w = tuple(x // g for x in v)
    for x in w:
        if x != 0:
            if x < 0:
                w = tuple(-y for y in w)
            break
    return w  # type: ignore[return-value]


def balanced_ternary(z: int) -> tuple[int, ...]:
    """Digits (a_0, a_1, ...) over {-1,0,1} with z = sum a_i 3^i, minimal length."""
    digits: list[int] = []
    while z != 0:
        r = z % 3
        if r == 2:
            r = -1
        digits.append(r)
        z = (z - r) // 3
    return tuple(digits)


def from_balanced_ternary(digits: Sequence[int]) -> int:
    value = 0
    for a in reversed(digits):
        value = 3 * value + a
    return value


def ilcm(a: int, b: int) -> int:
    return a * b // gcd(a, b)


@dataclass(frozen=True)
class Window2:
    """Inclusive axis-aligned box in Z^2."""

    lo: IVec2
    hi: IVec2

    def __post_init__(self) -> None:
        if self.lo[0] > self.hi[0] or self.lo[1] > self.hi[1]:
            raise ValueError("window lower corner exceeds upper corner")

    @classmethod
    def symmetric(cls, radius: int) -> "Window2":
        return cls((-radius, -radius), (radius, radius))

    def __contains__(self, p: Sequence[int]) -> bool:
        return self.lo[0] <= p[0] <= self.hi[0] and self.lo[1] <= p[1] <= self.hi[1]

    def points(self) -> Iterator[IVec2]:
        for x in range(self.lo[0], self.hi[0] + 1):
            for y in range(self.lo[1], self.hi[1] + 1):
                yield (x, y)

    def size(self) -> int:
        return (self.hi[0] - self.lo[0] + 1) * (self.hi[1] - self.lo[1] + 1)


@dataclass(frozen=True)
class Window3:
    """Inclusive axis-aligned box in Z^3."""

    lo: IVec3
    hi: IVec3

    def __post_init__(self) -> None:
        if any(self.lo[i] > self.hi[i] for i in range(3)):
            raise ValueError("window lower corner exceeds upper corner")

    @classmethod
    def symmetric(cls, radius: int) -> "Window3":
        return cls((-radius,) * 3, (radius,) * 3)

    def __contains__(self, p: Sequence[int]) -> bool:
        return all(self.lo[i] <= p[i] <= self.hi[i] for i in range(3))

    def points(self) -> Iterator[IVec3]:
        ranges = [range(self.lo[i], self.hi[i] + 1) for i in range(3)]
        for x, y, z in product(*ranges):
            yield (x, y, z)

    def size(self) -> int:
        n = 1
        for i in range(3):
            n *= self.hi[i] - self.lo[i] + 1
        return n
