"""Measure-positivity classification of projected fractal imaginary cubes.

Two equivalent routes are implemented and cross-checked:

* direction space: congruence predicates on the reduced integer direction
  (a, b, c) — odd sum for the tetrahedral fractal, 3 not dividing the sum
  for T, and for H additionally the rotated class
  a = b = c = -(a+b+c)/3 != 0 (mod 3);
* parameter space: predicates on (u, v) = (p/r, q/r) for the planar digit
  sets — all of p, q, r odd (S), p = q = r (mod 3) (T), and for H also
  p = q = -r (mod 3).

A third, independent route certifies each verdict: project the digit set,
clear denominators, and search the digit-peeling graph for a nontrivial
zero expansion (null) or exhaust it (positive).

Declared-irrational parameters are null; the pigeonhole probe produces the
uniform-discreteness-violating lattice witness that backs that verdict
numerically.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from math import gcd

from . import render
from .digit_sets import (DigitSet2, DigitSet3, canonical,
                         is_imaginary_cube_digit_set, normalize_to_grid)
from .expansion import (ZeroExpansionResult, has_nontrivial_zero_expansion,
                        is_complete_residue_system)
from .lattice import IVec3, reduce_direction

FRACTALS = ("S", "H", "T")


class Verdict(Enum):
    POSITIVE = "positive"
    NULL = "null"


class Rule(Enum):
    ODD_SUM = "OddSum"
    THREE_NONDIV = "ThreeNondiv"
    H_ROTATED = "HRotated"
    PLANE_PARALLEL = "PlaneParallel"
    EVEN_SUM = "EvenSum"
    THREE_DIV = "ThreeDiv"
    IRRATIONAL = "Irrational"
    RESIDUE_SHORTCUT = "ResidueShortcut"


@dataclass(frozen=True)
class UVParams:
    """u = p/r, v = q/r with gcd(p, q, r) = 1 and r > 0."""

    p: int
    q: int
    r: int

    def __post_init__(self) -> None:
        if self.r <= 0:
            raise ValueError("r must be positive")
        if gcd(gcd(abs(self.p), abs(self.q)), self.r) != 1:
            raise ValueError("p, q, r must be coprime")

    @classmethod
    def from_raw(cls, p: int, q: int, r: int) -> "UVParams":
        if r == 0:
            raise ValueError("r must be nonzero")
        if r < 0:
            p, q, r = -p, -q, -r
        g = gcd(gcd(abs(p), abs(q)), r)
        return cls(p // g, q // g, r // g)

    @classmethod
    def from_uv(cls, u: Fraction, v: Fraction) -> "UVParams":
        u, v = Fraction(u), Fraction(v)
        r = u.denominator * v.denominator // gcd(u.denominator, v.denominator)
        return cls.from_raw(int(u * r), int(v * r), r)

    def uv(self) -> tuple[Fraction, Fraction]:
        return Fraction(self.p, self.r), Fraction(self.q, self.r)


@dataclass(frozen=True)
class OracleEvidence:
    """Outcome of the zero-expansion cross-check on the projected digit set."""

    checked: bool
    verdict: Verdict | None = None
    witness: tuple[tuple[int, int], ...] | None = None
    collision: bool = False


@dataclass(frozen=True)
class Classification:
    fractal: str
    verdict: Verdict
    rule: Rule
    direction: IVec3 | None = None
    reduced: IVec3 | None = None
    uv: UVParams | None = None
    oracle: OracleEvidence = OracleEvidence(False)


def classify_direction(fractal: str, d: IVec3) -> Classification:
    """Positivity of the projection of fractal S/H/T along integer (a,b,c)."""
    if fractal not in FRACTALS:
        raise ValueError(f"unknown fractal {fractal!r}")
    red = reduce_direction(tuple(int(c) for c in d))
    a, b, c = red
    s = a + b + c
    if s == 0:
        return Classification(fractal, Verdict.NULL, Rule.PLANE_PARALLEL, d, red)
    uv = direction_to_uv(fractal, red)
    if fractal == "H":
        uv = uv[0]
    if fractal == "S":
        if s % 2 != 0:
            return Classification(fractal, Verdict.POSITIVE, Rule.ODD_SUM, d, red, uv)
        return Classification(fractal, Verdict.NULL, Rule.EVEN_SUM, d, red, uv)
    if s % 3 != 0:
        return Classification(fractal, Verdict.POSITIVE, Rule.THREE_NONDIV, d, red, uv)
    if fractal == "H":
        t = (-(s // 3)) % 3
        if t != 0 and a % 3 == b % 3 == c % 3 == t:
            return Classification(fractal, Verdict.POSITIVE, Rule.H_ROTATED, d, red, uv)
    return Classification(fractal, Verdict.NULL, Rule.THREE_DIV, d, red, uv)


def classify_irrational(fractal: str) -> Classification:
    """Declared-irrational projection parameters always give a null set."""
    if fractal not in FRACTALS:
        raise ValueError(f"unknown fractal {fractal!r}")
    return Classification(fractal, Verdict.NULL, Rule.IRRATIONAL)


def direction_to_uv(fractal: str, d: IVec3):
    """Map a direction to the planar parameters (p, q, r) of its image.

    S: u = (-a+b+c)/s, v = (a-b+c)/s;  T and H: u = (-2a+b+c)/s,
    v = (a-2b+c)/s with s = a+b+c.  For H the pair of branches is returned,
    the second being the image under the half-turn about (1,1,1)
    (u = (2a-b-c)/s, v = (-a+2b-c)/s); both parameterize the same digit set.
    """
    a, b, c = (int(x) for x in d)
    s = a + b + c
    if s == 0:
        raise ValueError("plane-parallel direction")
    if fractal == "S":
        return UVParams.from_raw(-a + b + c, a - b + c, s)
    if fractal == "T":
        return UVParams.from_raw(-2 * a + b + c, a - 2 * b + c, s)
    if fractal == "H":
        return (UVParams.from_raw(-2 * a + b + c, a - 2 * b + c, s),
                UVParams.from_raw(2 * a - b - c, -a + 2 * b - c, s))
    raise ValueError(f"unknown fractal {fractal!r}")


def classify_uv(fractal: str, uv, *, declared_irrational: bool = False) -> Classification:
    """Positivity of F(k, D^{u,v}) from the (p, q, r) congruences."""
    if fractal not in FRACTALS:
        raise ValueError(f"unknown fractal {fractal!r}")
    if declared_irrational:
        return classify_irrational(fractal)
    if not isinstance(uv, UVParams):
        u, v = uv
        uv = UVParams.from_uv(Fraction(u), Fraction(v))
    p, q, r = uv.p, uv.q, uv.r
    if fractal == "S":
        if p % 2 != 0 and q % 2 != 0 and r % 2 != 0:
            return Classification(fractal, Verdict.POSITIVE, Rule.ODD_SUM, uv=uv)
        return Classification(fractal, Verdict.NULL, Rule.EVEN_SUM, uv=uv)
    if p % 3 == q % 3 == r % 3:
        return Classification(fractal, Verdict.POSITIVE, Rule.THREE_NONDIV, uv=uv)
    if fractal == "H" and p % 3 == q % 3 == (-r) % 3:
        return Classification(fractal, Verdict.POSITIVE, Rule.H_ROTATED, uv=uv)
    return Classification(fractal, Verdict.NULL, Rule.THREE_DIV, uv=uv)


_ROT_ROWS = ((-1, 2, 2), (2, -1, 2), (2, 2, -1))


def rotate_H(v: IVec3) -> tuple[Fraction, Fraction, Fraction]:
    """Half-turn of a vector about the axis (1,1,1), exactly.

    The matrix has rows (-1,2,2)/3, (2,-1,2)/3, (2,2,-1)/3 and is an
    involution; it swaps the two positive direction classes of the H
    fractal.
    """
    return tuple(Fraction(sum(r_i * v_i for r_i, v_i in zip(row, v)), 3)
                 for row in _ROT_ROWS)  # type: ignore[return-value]


def rotate_H_integer_image(v: IVec3) -> IVec3:
    """The integer triple 3*R*v whose direction is the rotated image."""
    return tuple(sum(r_i * v_i for r_i, v_i in zip(row, v)) for row in _ROT_ROWS)  # type: ignore[return-value]


@dataclass(frozen=True)
class AgreementReport:
    fractal: str
    direction: IVec3
    reduced: IVec3
    theorem: Classification
    uv_check: Classification
    oracle: OracleEvidence

    @property
    def agree(self) -> bool:
        o = self.oracle.verdict
        return (self.theorem.verdict == self.uv_check.verdict
                and (o is None or o == self.theorem.verdict))


def oracle_for_direction(fractal: str, d: IVec3) -> OracleEvidence:
    """Zero-expansion verdict for the integerized projected digit set.

    A projection that merges digits makes two digit words designate the same
    point, which is already a null certificate; the graph search runs only
    on k^2 distinct points.
    """
    proj = render.project_digit_set(canonical(fractal), render.family_map(fractal, d),
                                    strict=False)
    if proj.collided:
        return OracleEvidence(True, Verdict.NULL, None, collision=True)
    scaled, _ = proj.digit_set().integerized()
    res: ZeroExpansionResult = has_nontrivial_zero_expansion(scaled.k, scaled)
    if res.found:
        return OracleEvidence(True, Verdict.NULL, res.witness)
    return OracleEvidence(True, Verdict.POSITIVE, None)


def cross_validate(fractal: str, d: IVec3) -> AgreementReport:
    """Triangulate the direction predicate, the uv predicate, and the
    zero-expansion oracle; disagreement raises (it would break an invariant)."""
    red = reduce_direction(tuple(int(c) for c in d))
    if sum(red) == 0:
        raise ValueError("plane-parallel direction")
    theorem = classify_direction(fractal, red)
    uv = direction_to_uv(fractal, red)
    if fractal == "H":
        uv = uv[0]
    uv_check = classify_uv(fractal, uv)
    ora = oracle_for_direction(fractal, red)
    report = AgreementReport(fractal, tuple(d), red, theorem, uv_check, ora)
    if not report.agree:
        raise AssertionError(
            f"classification disagreement for {fractal} along {red}: "
            f"theorem={theorem.verdict.value} uv={uv_check.verdict.value} "
            f"oracle={ora.verdict.value if ora.verdict else None}")
    return report


@dataclass(frozen=True)
class ProbeWitness:
    """Nonzero lattice vector y with |phi(y)| <= sqrt(2) * k^-l."""

    k: int
    l: int
    i: int
    j: int
    y: tuple[int, int, int]
    phi_norm_sq: Fraction
    samples: int


def probe_discreteness(fractal: str, u: Fraction, v: Fraction, l: int,
                       eps: Fraction = Fraction(0)) -> ProbeWitness:
    """Pigeonhole witness that the expansion set projected along (u, v, -1)
    is not uniformly discrete at scale k^-l.

    Scans fractional parts of (k^i u, k^i v); two indices i < j falling in
    the same k^-l cell of the unit square give
    y = (floor(k^j u) - floor(k^i u), floor(k^j v) - floor(k^i v), -(k^j - k^i))
    with phi(y) = ({k^i u} - {k^j u}, {k^i v} - {k^j v}), hence
    |phi(y)| <= sqrt(2) k^-l.  A collision is guaranteed within k^(2l) + 1
    samples.  eps is the declared absolute error of u and v; it must not
    exceed k^(-2l).
    """
    if fractal not in FRACTALS:
        raise ValueError(f"unknown fractal {fractal!r}")
    if l < 1:
        raise ValueError("l must be >= 1")
    k = 2 if fractal == "S" else 3
    if eps > Fraction(1, k ** (2 * l)):
        raise ValueError("insufficient input precision")
    u, v = Fraction(u), Fraction(v)
    cell_den = k ** l
    den_u, den_v = u.denominator, v.denominator
    base_u, base_v = u.numerator % den_u, v.numerator % den_v
    floor_u, floor_v = (u.numerator - base_u) // den_u, (v.numerator - base_v) // den_v
    # cu = numerator of frac(k^i u) over den_u, advanced by cu -> k*cu mod den_u
    cu, cv = base_u, base_v
    seen: dict[tuple[int, int], int] = {}
    max_samples = k ** (2 * l) + 1
    for idx in range(max_samples):
        cell = (cu * cell_den // den_u, cv * cell_den // den_v)
        if cell in seen:
            i, j = seen[cell], idx
            cu_i = pow(k, i, den_u) * base_u % den_u
            cv_i = pow(k, i, den_v) * base_v % den_v
            pw = k ** j - k ** i
            y1 = pw * floor_u + (pw * base_u + cu_i - cu) // den_u
            y2 = pw * floor_v + (pw * base_v + cv_i - cv) // den_v
            norm_sq = (Fraction(cu_i - cu, den_u) ** 2
                       + Fraction(cv_i - cv, den_v) ** 2)
            return ProbeWitness(k, l, i, j, (y1, y2, -pw), norm_sq, idx + 1)
        seen[cell] = idx
        cu = cu * k % den_u
        cv = cv * k % den_v
    raise AssertionError("pigeonhole guarantees a collision within k^(2l)+1 samples")


def nk_mk_1_positive(k: int, d: DigitSet3, n: int, m: int) -> Classification:
    """Any imaginary-cube digit set projects positively along (nk, mk, 1).

    The xy-image {(x - nkz, y - mkz)} of a Latin-square digit set is a
    complete residue system mod (k, k); verified, not assumed.
    """
    if k != d.k:
        raise ValueError("radix mismatch")
    if not is_imaginary_cube_digit_set(d):
        raise ValueError("not an imaginary-cube digit set")
    g = normalize_to_grid(d)
    shifted = DigitSet2(k, frozenset(
        (Fraction(x - n * k * z), Fraction(y - m * k * z)) for x, y, z in g.points))
    if not is_complete_residue_system(k, shifted):
        raise AssertionError("projected Latin-square digit set must be a "
                             "complete residue system")
    direction = (n * k, m * k, 1)
    return Classification("custom", Verdict.POSITIVE, Rule.RESIDUE_SHORTCUT,
                          direction, reduce_direction(direction))
