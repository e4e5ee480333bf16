"""Enumeration of degree-k fractal imaginary cubes.

Latin squares of order k are enumerated row by row with column masks; each
square induces the cell arrangement {(i, j, h(i,j))} inside the k^3 grid,
and arrangements are grouped into congruence classes under the full
symmetry group of the cube (order 48, rotations and reflections), which
reproduces the known counts 1, 2, 36, 3482 for k = 2..5.

Canonical class representative: the lexicographically smallest sorted cell
list over the orbit, with cells ordered x-major.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import permutations

import numpy as np

from .digit_sets import DigitSet3, LatinSquare

GROUP_ORDER = 48

MAX_DEGREE = 5


def all_latin_squares(k: int) -> list[LatinSquare]:
    """Complete enumeration via row-by-row backtracking (2 <= k <= 5)."""
    if not 2 <= k <= MAX_DEGREE:
        raise ValueError("degree out of budget (2..5)")
    perms = list(permutations(range(k)))
    masks = [tuple(1 << v for v in p) for p in perms]
    out: list[LatinSquare] = []
    rows: list[tuple[int, ...]] = []

    def rec(cols: tuple[int, ...]) -> None:
        if len(rows) == k:
            out.append(LatinSquare(k, tuple(rows)))
            return
        for p, pm in zip(perms, masks):
            if all(not (c & m) for c, m in zip(cols, pm)):
                rows.append(p)
                rec(tuple(c | m for c, m in zip(cols, pm)))
                rows.pop()

    rec((0,) * k)
    return out


def _symmetry_tables(k: int) -> np.ndarray:
    """48 permutations of cell indices (x-major order x*k^2 + y*k + z)."""
    coords = np.array([(x, y, z) for x in range(k) for y in range(k)
                       for z in range(k)], dtype=np.int64)
    tables = []
    for axes in permutations(range(3)):
        for signs in range(8):
            mapped = np.empty_like(coords)
            for i in range(3):
                col = coords[:, axes[i]]
                mapped[:, i] = (k - 1 - col) if (signs >> i) & 1 else col
            tables.append(mapped[:, 0] * k * k + mapped[:, 1] * k + mapped[:, 2])
    return np.stack(tables)


def _arrangement_cells(h: LatinSquare) -> np.ndarray:
    k = h.k
    return np.array(sorted(i * k * k + j * k + h(i, j)
                           for i in range(k) for j in range(k)), dtype=np.int64)


@dataclass(frozen=True)
class CongruenceClass:
    k: int
    representative: tuple[tuple[int, int, int], ...]
    orbit_size: int

    def digit_set(self) -> DigitSet3:
        return DigitSet3(self.k, frozenset(self.representative))


def congruence_classes(k: int) -> list[CongruenceClass]:
    """Orbits of Latin-square arrangements under the order-48 cube group."""
    squares = all_latin_squares(k)
    cells = np.stack([_arrangement_cells(h) for h in squares])
    tables = _symmetry_tables(k)
    images = []
    for table in tables:
        im = np.sort(table[cells], axis=1).astype(np.uint8)
        images.append(im)
    canon: list[bytes] = []
    for row in range(cells.shape[0]):
        canon.append(min(im[row].tobytes() for im in images))
    counts: dict[bytes, int] = {}
    for c in canon:
        counts[c] = counts.get(c, 0) + 1
    classes = []
    for key in sorted(counts):
        ids = np.frombuffer(key, dtype=np.uint8)
        rep = tuple((int(c) // (k * k), int(c) // k % k, int(c) % k) for c in ids)
        classes.append(CongruenceClass(k, rep, counts[key]))
    return classes


def canonical_arrangement(d: DigitSet3) -> tuple[tuple[int, int, int], ...]:
    """Class identity of a digit set: minimal sorted cell list over the orbit."""
    from .digit_sets import normalize_to_grid
    g = normalize_to_grid(d)
    k = g.k
    cells = np.array(sorted(x * k * k + y * k + z for x, y, z in g.points),
                     dtype=np.int64)
    best = None
    for table in _symmetry_tables(k):
        key = np.sort(table[cells]).astype(np.uint8).tobytes()
        if best is None or key < best:
            best = key
    ids = np.frombuffer(best, dtype=np.uint8)
    return tuple((int(c) // (k * k), int(c) // k % k, int(c) % k) for c in ids)


def latin_square_lower_bound(k: int) -> float:
    """(k!)^(2k) / k^(k^2); the true counts must exceed this."""
    fact = 1
    for i in range(2, k + 1):
        fact *= i
    return fact ** (2 * k) / k ** (k * k)
