"""Projection and rasterization of the planar fractals.

project_digit_set carries a 3D digit set along a direction onto the family's
reference plane and reads coordinates off in the plane's affine chart, so
the canonical families land exactly on their (u,v)-parameterized planar
digit sets.  All of it is exact rational arithmetic.

rasterize draws the level-n approximation A_n of F(k, D), seeded from the
convex hull of the IFS fixed points {d/(k-1)}: a pixel is covered iff the
bounding box of some level-n cell intersects it.  The sweep is level
synchronous and integer exact, so the bitmap is byte-identical across runs:
at each level the distinct translation sums are deduplicated, subtrees whose
box sits inside one pixel mark it and stop (their leaves can touch no other
pixel), and subtrees whose box is already fully covered are dropped.
"""

from __future__ import annotations

from dataclasses import dataclass
from decimal import ROUND_HALF_EVEN, Decimal
from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np

from .digit_sets import DigitSet2, DigitSet3, RVec2
from .lattice import ilcm

_PLANES = {
    # plane normal, offset, and chart psi (2x3 integer matrix rows)
    "s": ((1, 1, 1), 1, ((1, 0, 0), (0, 1, 0))),
    "t": ((1, 1, 1), -1, ((1, 0, 0), (0, 1, 0))),
    "h": ((1, 1, 1), 0, ((-1, 0, 0), (0, -1, 0))),
    "xy": ((0, 0, 1), 0, ((1, 0, 0), (0, 1, 0))),
}

_FAMILY_PLANE = {"S": "s", "T": "t", "H": "h", "S'": "xy", "T'": "xy", "H'": "xy"}


@dataclass(frozen=True)
class ProjectionMap:
    direction: tuple
    plane: str

    def __post_init__(self) -> None:
        if self.plane not in _PLANES:
            raise ValueError(f"unknown plane {self.plane!r}")
        normal = _PLANES[self.plane][0]
        dot = sum(Fraction(d) * n for d, n in zip(self.direction, normal))
        if dot == 0:
            raise ValueError("direction parallel to plane")


def family_map(family: str, direction) -> ProjectionMap:
    """Projection map along `direction` onto the family's reference plane."""
    try:
        plane = _FAMILY_PLANE[family]
    except KeyError:
        raise ValueError(f"unknown digit-set family {family!r}") from None
    return ProjectionMap(tuple(direction), plane)


@dataclass(frozen=True)
class ProjectedDigits:
    """Projected digit multiset; collided means |phi(D)| < k^2."""

    k: int
    points: tuple[RVec2, ...]
    collided: bool

    def distinct(self) -> list[RVec2]:
        return sorted(set(self.points))

    def digit_set(self) -> DigitSet2:
        return DigitSet2(self.k, frozenset(self.points))


def project_digit_set(d: DigitSet3, pmap: ProjectionMap, *, strict: bool = True):
    """Exact planar image of a 3D digit set under the projection map.

    With strict=True a digit collision raises (the planar set would not have
    k^2 points); with strict=False the multiset is returned with the
    collision flagged, which is how degenerate directions get rendered.
    """
    normal, offset, psi = _PLANES[pmap.plane]
    dvec = tuple(Fraction(c) for c in pmap.direction)
    dot = sum(dc * nc for dc, nc in zip(dvec, normal))
    out: list[RVec2] = []
    for p in d.sorted_points():
        t = Fraction(sum(pc * nc for pc, nc in zip(p, normal)) - offset, 1) / dot
        img = tuple(pc - t * dc for pc, dc in zip(p, dvec))
        out.append((sum(m * c for m, c in zip(psi[0], img)),
                    sum(m * c for m, c in zip(psi[1], img))))
    collided = len(set(out)) < d.k * d.k
    if strict and collided:
        raise ValueError("degenerate digit collision")
    proj = ProjectedDigits(d.k, tuple(out), collided)
    return proj.digit_set() if strict else proj


@dataclass(frozen=True)
class Raster:
    """Coverage bitmap; pixel rows run top to bottom, 255 = covered."""

    width: int
    height: int
    pixels: bytes
    covered: int
    collided: bool

    def to_pgm(self) -> bytes:
        return b"P5\n%d %d\n255\n" % (self.width, self.height) + self.pixels

    def to_pbm(self) -> bytes:
        lines = [f"P1\n{self.width} {self.height}"]
        row = []
        for y in range(self.height):
            bits = self.pixels[y * self.width:(y + 1) * self.width]
            row = " ".join("1" if b else "0" for b in bits)
            lines.append(row)
        return ("\n".join(lines) + "\n").encode()


def _digits_info(digits) -> tuple[int, list[RVec2], bool]:
    if isinstance(digits, DigitSet2):
        return digits.k, digits.sorted_points(), False
    if isinstance(digits, ProjectedDigits):
        return digits.k, digits.distinct(), digits.collided
    raise TypeError("digits must be a DigitSet2 or ProjectedDigits")


_INT64_CAP = 1 << 62


class _Frame:
    """Integer-exact world-to-pixel floor maps for each recursion level."""

    def __init__(self, k: int, num_digits: Sequence[tuple[int, int]], den: int,
                 res: int, margin: Fraction):
        self.k = k
        self.res = res
        km1 = k - 1
        self.km1 = km1
        xs = [d[0] for d in num_digits]
        ys = [d[1] for d in num_digits]
        # fixed points d/(k-1) have numerators over den*(k-1)
        self.lox, self.hix = min(xs), max(xs)
        self.loy, self.hiy = min(ys), max(ys)
        self.den = den * km1
        self.span_x = (self.hix - self.lox) or self.den
        self.span_y = (self.hiy - self.loy) or self.den
        self.mn, self.md = margin.numerator, margin.denominator
        self.c1 = res * (self.md - 2 * self.mn)

    def level_consts(self, level: int):
        ki = self.k ** level
        return (ki,
                self.res * self.mn * self.span_x * ki, self.md * self.span_x * ki,
                self.res * self.mn * self.span_y * ki, self.md * self.span_y * ki)


def rasterize(digits, depth: int, res: int,
              margin: Fraction = Fraction(1, 20)) -> Raster:
    """Deterministic coverage bitmap of the level-`depth` approximation.

    The frame maps the bounding box of the digit hull into [0,1]^2 with the
    given margin on each side (5% by default), each axis scaled
    independently.
    """
    if depth < 0:
        raise ValueError("depth must be >= 0")
    if res < 16:
        raise ValueError("resolution must be >= 16")
    if not (0 <= margin < Fraction(1, 2)):
        raise ValueError("margin must be in [0, 1/2)")
    k, pts, collided = _digits_info(digits)
    den = 1
    for x, y in pts:
        den = ilcm(den, ilcm(x.denominator, y.denominator))
    nd = [(int(x * den), int(y * den)) for x, y in pts]
    frame = _Frame(k, nd, den, res, margin)
    dn = np.array(sorted(nd), dtype=np.int64)

    max_num = max(max(abs(x), abs(y)) for x, y in nd) or 1
    # translation sums stay below max_num * k^depth / (k-1); guard int64
    if max_num * k ** depth * frame.c1 * 4 >= _INT64_CAP:
        raise ValueError("depth/resolution exceed the supported integer range")

    covered = np.zeros((res, res), dtype=bool)
    km1 = frame.km1
    tau = np.zeros((1, 2), dtype=np.int64)
    for level in range(depth + 1):
        if level > 0:
            tau = (k * tau[:, None, :] + dn[None, :, :]).reshape(-1, 2)
            # dedup: identical sums generate identical subtrees
            offs = tau.min(axis=0)
            width = int(tau[:, 1].max() - offs[1]) + 1
            keys = (tau[:, 0] - offs[0]) * width + (tau[:, 1] - offs[1])
            _, idx = np.unique(keys, return_index=True)
            tau = tau[np.sort(idx)]
        ki, c0x, denx, c0y, deny = frame.level_consts(level)
        ax_lo = (frame.lox + km1 * tau[:, 0]) - frame.lox * ki
        ax_hi = (frame.hix + km1 * tau[:, 0]) - frame.lox * ki
        ay_lo = (frame.loy + km1 * tau[:, 1]) - frame.loy * ki
        ay_hi = (frame.hiy + km1 * tau[:, 1]) - frame.loy * ki
        jx0 = (ax_lo * frame.c1 + c0x) // denx
        jx1 = (ax_hi * frame.c1 + c0x) // denx
        jy0 = (ay_lo * frame.c1 + c0y) // deny
        jy1 = (ay_hi * frame.c1 + c0y) // deny
        np.clip(jx0, 0, res - 1, out=jx0)
        np.clip(jx1, 0, res - 1, out=jx1)
        np.clip(jy0, 0, res - 1, out=jy0)
        np.clip(jy1, 0, res - 1, out=jy1)

        single = (jx0 == jx1) & (jy0 == jy1)
        covered[jy0[single], jx0[single]] = True
        if level == depth:
            for x0, x1, y0, y1 in zip(jx0[~single], jx1[~single],
                                      jy0[~single], jy1[~single]):
                covered[y0:y1 + 1, x0:x1 + 1] = True
            break
        keep = ~single
        if not keep.any():
            break
        jx0, jx1, jy0, jy1, tau = jx0[keep], jx1[keep], jy0[keep], jy1[keep], tau[keep]
        # prune boxes whose pixel rectangle is fully covered already
        acc = np.zeros((res + 1, res + 1), dtype=np.int64)
        np.cumsum(np.cumsum(covered, axis=0), axis=1, out=acc[1:, 1:])
        area = (jx1 - jx0 + 1) * (jy1 - jy0 + 1)
        filled = (acc[jy1 + 1, jx1 + 1] - acc[jy0, jx1 + 1]
                  - acc[jy1 + 1, jx0] + acc[jy0, jx0])
        alive = filled < area
        if not alive.any():
            break
        tau = tau[alive]

    img = np.where(covered[::-1, :], 255, 0).astype(np.uint8)  # top row first
    return Raster(res, res, img.tobytes(), int(covered.sum()), collided)


@dataclass(frozen=True)
class CoverageSeries:
    """Covered-pixel fraction of the hull bounding box per depth 1..N."""

    res: int
    fractions: tuple[Fraction, ...]

    def to_csv(self) -> str:
        lines = ["depth,fraction"]
        for i, frac in enumerate(self.fractions, start=1):
            q = (Decimal(frac.numerator) / Decimal(frac.denominator)).quantize(
                Decimal("0.000001"), rounding=ROUND_HALF_EVEN)
            lines.append(f"{i},{q}")
        return "\n".join(lines) + "\n"


def coverage_series(digits, max_depth: int, res: int) -> CoverageSeries:
    """Coverage fractions at depths 1..max_depth in the margin-free frame."""
    if max_depth < 2:
        raise ValueError("max_depth must be >= 2")
    fracs = []
    for n in range(1, max_depth + 1):
        r = rasterize(digits, n, res, margin=Fraction(0))
        fracs.append(Fraction(r.covered, res * res))
    return CoverageSeries(res, tuple(fracs))


def coverage_at(digits, depth: int, res: int) -> Fraction:
    r = rasterize(digits, depth, res, margin=Fraction(0))
    return Fraction(r.covered, res * res)
