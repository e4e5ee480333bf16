"""Digit sets: the translation parts of the dilation IFS {x -> (x+d)/k}.

Houses the canonical three-dimensional families (S, H, T and their primed
variants used for the expansion-set analysis), the planar (u,v) families,
Latin-square construction, differenced sets D - D, and the imaginary-cube
criterion (all three axis projections hit the k x k grid bijectively).

The H and T families live on the {-1,0,1} centered grid, S on {0,1}; grid
checks normalize to {0..k-1}^3 first.  Planar digit sets store exact
rationals so that (u,v) = (p/r, q/r) inputs integerize losslessly.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .lattice import IVec3, ilcm

Rat = Fraction
RVec2 = tuple[Fraction, Fraction]

FAMILIES_3D = ("S", "H", "T", "S'", "T'", "H'")


@dataclass(frozen=True)
class DigitSet3:
    """k^2 distinct lattice points in Z^3."""

    k: int
    points: frozenset[IVec3]

    def __post_init__(self) -> None:
        if self.k < 2:
            raise ValueError("radix must be >= 2")
        if len(self.points) != self.k * self.k:
            raise ValueError("digit set must contain exactly k^2 distinct points")

    def sorted_points(self) -> list[IVec3]:
        return sorted(self.points)


@dataclass(frozen=True)
class DigitSet2:
    """k^2 distinct exact-rational points in Q^2."""

    k: int
    points: frozenset[RVec2]

    def __post_init__(self) -> None:
        if self.k < 2:
            raise ValueError("radix must be >= 2")
        if len(self.points) != self.k * self.k:
            raise ValueError("degenerate digit collision")

    def sorted_points(self) -> list[RVec2]:
        return sorted(self.points)

    def is_integral(self) -> bool:
        return all(x.denominator == 1 and y.denominator == 1 for x, y in self.points)

    def integer_points(self) -> list[tuple[int, int]]:
        if not self.is_integral():
            raise ValueError("integerize first")
        return sorted((int(x), int(y)) for x, y in self.points)

    def integerized(self) -> tuple["DigitSet2", int]:
        """Scale by the lcm of all denominators; returns (scaled set, scale)."""
        scale = 1
        for x, y in self.points:
            scale = ilcm(scale, ilcm(x.denominator, y.denominator))
        pts = frozenset((x * scale, y * scale) for x, y in self.points)
        return DigitSet2(self.k, pts), scale


@dataclass(frozen=True)
class DeltaSet:
    """Differenced digit set D - D; always negation-symmetric and contains 0."""

    k: int
    points: frozenset[tuple]
    has_origin: bool = True


@dataclass(frozen=True)
class LatinSquare:
    """Order-k square over {0..k-1}; every row and column is a permutation."""

    k: int
    rows: tuple[tuple[int, ...], ...]

    def __post_init__(self) -> None:
        k = self.k
        full = set(range(k))
        if len(self.rows) != k or any(len(r) != k for r in self.rows):
            raise ValueError("invalid Latin square: wrong shape")
        for r in self.rows:
            if set(r) != full:
                raise ValueError("invalid Latin square: row not a permutation")
        for j in range(k):
            if {r[j] for r in self.rows} != full:
                raise ValueError("invalid Latin square: column not a permutation")

    def __call__(self, i: int, j: int) -> int:
        return self.rows[i][j]


_CANONICAL: dict[str, tuple[int, tuple[IVec3, ...]]] = {
    "S": (2, ((1, 0, 0), (0, 1, 0), (0, 0, 1), (1, 1, 1))),
    "H": (3, ((0, 0, 0),
              (0, 1, -1), (0, -1, 1),
              (1, 0, -1), (-1, 0, 1),
              (1, -1, 0), (-1, 1, 0),
              (1, 1, 1), (-1, -1, -1))),
    "T": (3, ((1, -1, -1), (-1, 1, -1), (-1, -1, 1),
              (-1, 0, 0), (0, -1, 0), (0, 0, -1),
              (0, 1, 1), (1, 0, 1), (1, 1, 0))),
    "S'": (2, ((0, 0, 0), (1, 0, 0), (0, 1, 0), (0, 0, 1))),
    "T'": (3, ((1, -1, 0), (-1, 1, 0), (-1, -1, 0),
               (-1, 0, 0), (0, -1, 0), (0, 0, 0),
               (0, 1, 1), (1, 0, 1), (1, 1, 1))),
    "H'": (3, ((0, 0, 0),
               (1, 0, 0), (1, -1, 0), (0, -1, 0),
               (-1, 0, 0), (-1, 1, 0), (0, 1, 0),
               (0, 0, 1), (0, 0, -1))),
}


def canonical(family: str) -> DigitSet3:
    """One of the six named digit sets: S, H, T, S', T', H'."""
    try:
        k, pts = _CANONICAL[family]
    except KeyError:
        raise ValueError(f"unknown digit-set family {family!r}") from None
    return DigitSet3(k, frozenset(pts))


def uv_digit_set(family: str, u: Rat | int, v: Rat | int) -> DigitSet2:
    """The planar family D_S/H/T^{u,v} parameterizing projected images."""
    u, v = Fraction(u), Fraction(v)
    if family == "S":
        pts = [(Fraction(1), Fraction(0)), (Fraction(0), Fraction(1)),
               (Fraction(0), Fraction(0)), (u, v)]
        k = 2
    elif family == "H":
        pts = [(Fraction(0), Fraction(0)),
               (Fraction(0), Fraction(1)), (Fraction(0), Fraction(-1)),
               (Fraction(1), Fraction(0)), (Fraction(-1), Fraction(0)),
               (Fraction(1), Fraction(-1)), (Fraction(-1), Fraction(1)),
               (u, v), (-u, -v)]
        k = 3
    elif family == "T":
        pts = [(Fraction(1), Fraction(-1)), (Fraction(-1), Fraction(1)),
               (Fraction(-1), Fraction(-1)), (Fraction(-1), Fraction(0)),
               (Fraction(0), Fraction(-1)), (Fraction(0), Fraction(0)),
               (u - 1, v), (u, v - 1), (u, v)]
        k = 3
    else:
        raise ValueError(f"unknown planar family {family!r}")
    if len(set(pts)) != k * k:
        raise ValueError("degenerate digit collision")
    return DigitSet2(k, frozenset(pts))


def from_latin_square(h: LatinSquare) -> DigitSet3:
    """Digit set {(i, j, h(i,j))} inside the {0..k-1}^3 grid."""
    pts = frozenset((i, j, h(i, j)) for i in range(h.k) for j in range(h.k))
    return DigitSet3(h.k, pts)


def normalize_to_grid(d: DigitSet3) -> DigitSet3:
    """Translate so each axis starts at 0; error if the result leaves the k-grid."""
    k = d.k
    mins = [min(p[i] for p in d.points) for i in range(3)]
    pts = frozenset((p[0] - mins[0], p[1] - mins[1], p[2] - mins[2]) for p in d.points)
    if any(c < 0 or c >= k for p in pts for c in p):
        raise ValueError("point outside cube grid")
    return DigitSet3(k, pts)


def is_imaginary_cube_digit_set(d: DigitSet3) -> bool:
    """True iff all three axis projections are bijections onto {0..k-1}^2."""
    g = normalize_to_grid(d)
    k = g.k
    full = k * k
    for drop in range(3):
        keep = [i for i in range(3) if i != drop]
        if len({(p[keep[0]], p[keep[1]]) for p in g.points}) != full:
            return False
    return True


def to_latin_square(d: DigitSet3) -> LatinSquare:
    """Inverse of from_latin_square (after grid normalization)."""
    g = normalize_to_grid(d)
    if not is_imaginary_cube_digit_set(d):
        raise ValueError("digit set is not an imaginary-cube digit set")
    rows = [[0] * g.k for _ in range(g.k)]
    for i, j, z in g.points:
        rows[i][j] = z
    return LatinSquare(g.k, tuple(tuple(r) for r in rows))


def delta(d: DigitSet3 | DigitSet2 | Iterable[tuple]) -> DeltaSet:
    """Differenced digit set Delta(D) = D - D."""
    if isinstance(d, (DigitSet3, DigitSet2)):
        pts, k = list(d.points), d.k
    else:
        pts, k = list(d), 0
    diffs = frozenset(tuple(a - b for a, b in zip(p, q)) for p in pts for q in pts)
    return DeltaSet(k, diffs)


# --- JSON wire format: {"k": int, "dim": 2|3, "points": [[..], ..]} ---
# Rational coordinates are encoded as "p/q" strings, integers as ints.

def _coord_to_json(c):
    if isinstance(c, Fraction) and c.denominator != 1:
        return f"{c.numerator}/{c.denominator}"
    return int(c)


def _coord_from_json(c) -> Fraction:
    if isinstance(c, str):
        return Fraction(c)
    if isinstance(c, int):
        return Fraction(c)
    raise ValueError("digit coordinates must be ints or 'p/q' strings")


def digit_set_to_json(d: DigitSet3 | DigitSet2) -> str:
    dim = 3 if isinstance(d, DigitSet3) else 2
    pts = [[_coord_to_json(c) for c in p] for p in d.sorted_points()]
    return json.dumps({"k": d.k, "dim": dim, "points": pts})


def digit_set_from_json(text: str) -> DigitSet3 | DigitSet2:
    doc = json.loads(text)
    k, dim, raw = int(doc["k"]), int(doc["dim"]), doc["points"]
    if dim == 3:
        pts3 = frozenset(tuple(int(c) for c in p) for p in raw)
        if any(len(p) != 3 for p in pts3):
            raise ValueError("dim-3 digit set needs 3 coordinates per point")
        return DigitSet3(k, pts3)  # type: ignore[arg-type]
    if dim == 2:
        pts2 = frozenset(tuple(_coord_from_json(c) for c in p) for p in raw)
        if any(len(p) != 2 for p in pts2):
            raise ValueError("dim-2 digit set needs 2 coordinates per point")
        return DigitSet2(k, pts2)  # type: ignore[arg-type]
    raise ValueError("dim must be 2 or 3")
