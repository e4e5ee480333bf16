from fractions import Fraction
from itertools import permutations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from icube.classify import (Rule, UVParams, Verdict, classify_direction,
                            classify_irrational, classify_uv, cross_validate,
                            direction_to_uv, nk_mk_1_positive, probe_discreteness,
                            rotate_H, rotate_H_integer_image)
from icube.digit_sets import canonical, from_latin_square
from icube.enumeration import all_latin_squares
from icube.lattice import reduce_direction


def test_classify_direction_examples():
    assert classify_direction("S", (1, -1, 1)).verdict == Verdict.POSITIVE
    assert classify_direction("S", (1, -1, 1)).rule == Rule.ODD_SUM
    assert classify_direction("S", (1, 2, 0)).verdict == Verdict.POSITIVE

    r = classify_direction("T", (1, 1, 1))
    assert r.verdict == Verdict.NULL and r.rule == Rule.THREE_DIV

    r = classify_direction("H", (-1, 2, 2))
    assert r.verdict == Verdict.POSITIVE and r.rule == Rule.H_ROTATED
    r = classify_direction("H", (4, 1, 1))
    assert r.verdict == Verdict.POSITIVE and r.rule == Rule.H_ROTATED
    r = classify_direction("H", (1, 1, 1))
    assert r.verdict == Verdict.NULL

    r = classify_direction("T", (1, 1, 0))
    assert r.verdict == Verdict.POSITIVE and r.rule == Rule.THREE_NONDIV

    r = classify_direction("S", (1, -1, 0))
    assert r.verdict == Verdict.NULL and r.rule == Rule.PLANE_PARALLEL

    with pytest.raises(ValueError):
        classify_direction("S", (0, 0, 0))
    with pytest.raises(ValueError):
        classify_direction("X", (1, 0, 0))


def test_direction_to_uv_examples():
    assert direction_to_uv("S", (1, -1, 1)) == UVParams(-1, 3, 1)
    assert direction_to_uv("S", (2, 1, 0)) == UVParams(-1, 1, 3)
    assert direction_to_uv("T", (1, -1, 1)) == UVParams(-2, 4, 1)
    both = direction_to_uv("H", (1, -1, 1))
    assert both[0] == UVParams(-2, 4, 1)
    assert both[1] == UVParams(2, -4, 1)
    with pytest.raises(ValueError, match="plane-parallel"):
        direction_to_uv("S", (1, -1, 0))


def test_uv_params_normalization():
    assert UVParams.from_raw(2, -4, -2) == UVParams(-1, 2, 1)
    assert UVParams.from_uv(Fraction(1, 2), Fraction(1, 3)) == UVParams(3, 2, 6)
    with pytest.raises(ValueError):
        UVParams(2, 2, 2)
    with pytest.raises(ValueError):
        UVParams(1, 1, -1)


def test_classify_uv_examples():
    assert classify_uv("S", UVParams(3, 3, 1)).verdict == Verdict.POSITIVE
    assert classify_uv("T", UVParams(1, 1, 1)).verdict == Verdict.POSITIVE
    r = classify_uv("H", UVParams(1, 1, 2))
    assert r.verdict == Verdict.POSITIVE and r.rule == Rule.H_ROTATED
    assert classify_uv("S", UVParams(2, 1, 1)).verdict == Verdict.NULL
    assert classify_uv("T", (Fraction(1, 2), Fraction(1, 2))).verdict == Verdict.NULL
    assert classify_uv("S", (1, 1), declared_irrational=True).rule == Rule.IRRATIONAL
    assert classify_irrational("T").verdict == Verdict.NULL


def test_rotate_H_examples():
    assert rotate_H((1, 0, 0)) == (Fraction(-1, 3), Fraction(2, 3), Fraction(2, 3))
    assert rotate_H((1, 1, 1)) == (1, 1, 1)
    # exact matrix image of (1,1,-5); lands in the 3-nondivisible class
    img = rotate_H((1, 1, -5))
    assert img == (-3, -3, 3)
    red = reduce_direction(tuple(int(c) for c in img))
    assert sum(red) % 3 != 0
    # the half-turn pairs the named positive H directions
    assert reduce_direction(rotate_H_integer_image((1, -1, 1))) == (1, -5, 1)
    assert reduce_direction(rotate_H_integer_image((1, 1, 0))) == (1, 1, 4)


def test_rotate_H_involution():
    for v in [(1, 2, 3), (-4, 7, 1), (5, 0, 0), (2, 2, -1)]:
        twice = rotate_H(tuple(rotate_H(v)))
        assert tuple(twice) == tuple(Fraction(c) for c in v)


nonzero_sum_vec = st.tuples(st.integers(-30, 30), st.integers(-30, 30),
                            st.integers(-30, 30)).filter(
    lambda v: v != (0, 0, 0) and sum(v) != 0)


@given(nonzero_sum_vec)
def test_classify_symmetries(v):
    for f in ("S", "T"):
        base = classify_direction(f, v).verdict
        for perm in permutations(v):
            assert classify_direction(f, perm).verdict == base
    for f in ("S", "H", "T"):
        assert (classify_direction(f, v).verdict
                == classify_direction(f, tuple(-c for c in v)).verdict)


@settings(max_examples=80)
@given(nonzero_sum_vec)
def test_theorem_equivalence(v):
    for f in ("S", "T", "H"):
        uv = direction_to_uv(f, reduce_direction(v))
        if f == "H":
            direct, rotated = uv
            assert (classify_uv(f, direct).verdict
                    == classify_uv(f, rotated).verdict)
            uv = direct
        assert classify_uv(f, uv).verdict == classify_direction(f, v).verdict


def test_h_rotation_swaps_classes():
    # 3-nondivisible directions rotate into the congruence class and back
    for v in [(1, 0, 0), (1, 1, 0), (1, -1, 1), (2, 1, 1), (5, -2, 1)]:
        assert sum(v) % 3 != 0
        img = rotate_H_integer_image(v)
        a, b, c = img
        s3 = (a + b + c) // 3
        assert a % 3 == b % 3 == c % 3 == (-s3) % 3 != 0
        back = reduce_direction(rotate_H_integer_image(img))
        assert back == reduce_direction(v)


def test_cross_validate_examples():
    rep = cross_validate("S", (1, 1, 0))
    assert rep.theorem.verdict == Verdict.NULL
    assert rep.oracle.verdict == Verdict.NULL and rep.oracle.collision

    rep = cross_validate("S", (1, -1, 1))
    assert rep.theorem.verdict == Verdict.POSITIVE
    assert rep.oracle.verdict == Verdict.POSITIVE and rep.oracle.witness is None

    rep = cross_validate("H", (-1, 2, 2))
    assert rep.theorem.verdict == Verdict.POSITIVE and rep.agree

    rep = cross_validate("S", (1, 1, 2))
    assert rep.theorem.verdict == Verdict.NULL
    assert rep.oracle.witness is not None  # genuine zero-expansion word

    with pytest.raises(ValueError, match="plane-parallel"):
        cross_validate("T", (1, -1, 0))


def test_probe_rational_trivial():
    w = probe_discreteness("S", Fraction(1), Fraction(1), 3)
    assert w.y[2] != 0
    assert w.phi_norm_sq == 0
    assert w.samples <= 2 ** 6 + 1


def test_probe_irrational_truncations():
    from math import isqrt
    den = 1 << 64
    u = Fraction(isqrt(2 * den * den), den)
    v = Fraction(isqrt(3 * den * den), den)
    for fractal, k in (("S", 2), ("T", 3)):
        for l in (2, 4):
            w = probe_discreteness(fractal, u, v, l, eps=Fraction(1, den))
            assert w.y != (0, 0, 0) and w.y[2] != 0
            assert w.phi_norm_sq <= Fraction(2, k ** (2 * l))
            assert w.samples <= k ** (2 * l) + 1
            # the witness really is floor(k^j u) - floor(k^i u) etc.
            ki, kj = k ** w.i, k ** w.j
            assert w.y[0] == (kj * u).__floor__() - (ki * u).__floor__()
            assert w.y[1] == (kj * v).__floor__() - (ki * v).__floor__()
            assert w.y[2] == -(kj - ki)


def test_probe_insufficient_precision():
    with pytest.raises(ValueError, match="insufficient input precision"):
        probe_discreteness("S", Fraction(1), Fraction(1), 4, eps=Fraction(1, 10))
    with pytest.raises(ValueError):
        probe_discreteness("S", Fraction(1), Fraction(1), 0)


def test_nk_mk_1_examples():
    d_s = canonical("S")
    r = nk_mk_1_positive(2, d_s, 0, 0)
    assert r.verdict == Verdict.POSITIVE and r.rule == Rule.RESIDUE_SHORTCUT
    assert r.direction == (0, 0, 1)

    order4 = from_latin_square(all_latin_squares(4)[0])
    r = nk_mk_1_positive(4, order4, 1, 0)
    assert r.verdict == Verdict.POSITIVE and r.direction == (4, 0, 1)

    assert nk_mk_1_positive(3, canonical("T"), 1, 1).verdict == Verdict.POSITIVE

    from icube.digit_sets import DigitSet3
    flat = DigitSet3(2, frozenset({(0, 0, 0), (0, 1, 0), (1, 0, 0), (1, 1, 0)}))
    with pytest.raises(ValueError, match="imaginary-cube"):
        nk_mk_1_positive(2, flat, 0, 0)
