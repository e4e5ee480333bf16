import json
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from icube.digit_sets import (DigitSet2, DigitSet3, LatinSquare, canonical, delta,
                              digit_set_from_json, digit_set_to_json,
                              from_latin_square, is_imaginary_cube_digit_set,
                              normalize_to_grid, to_latin_square, uv_digit_set)
from icube.enumeration import all_latin_squares


def test_canonical_families():
    s = canonical("S")
    assert s.k == 2
    assert s.points == {(1, 0, 0), (0, 1, 0), (0, 0, 1), (1, 1, 1)}

    sp = canonical("S'")
    assert sp.k == 2
    assert sp.points == {(0, 0, 0), (1, 0, 0), (0, 1, 0), (0, 0, 1)}

    tp = canonical("T'")
    assert tp.k == 3
    assert len(tp.points) == 9
    assert (1, -1, 0) in tp.points and (1, 1, 1) in tp.points

    hp = canonical("H'")
    assert hp.k == 3
    assert (0, 0, 1) in hp.points and (0, 0, -1) in hp.points

    h = canonical("H")
    assert h.points == {(0, 0, 0), (0, 1, -1), (0, -1, 1), (1, 0, -1), (-1, 0, 1),
                        (1, -1, 0), (-1, 1, 0), (1, 1, 1), (-1, -1, -1)}

    t = canonical("T")
    assert t.points == {(1, -1, -1), (-1, 1, -1), (-1, -1, 1), (-1, 0, 0),
                        (0, -1, 0), (0, 0, -1), (0, 1, 1), (1, 0, 1), (1, 1, 0)}

    with pytest.raises(ValueError):
        canonical("X")


def test_from_latin_square_examples():
    xor = LatinSquare(2, ((0, 1), (1, 0)))
    assert from_latin_square(xor).points == {(0, 0, 0), (0, 1, 1), (1, 0, 1), (1, 1, 0)}

    inv = LatinSquare(2, ((1, 0), (0, 1)))  # h(i,j) = 1 - (i xor j)
    assert from_latin_square(inv).points == canonical("S").points

    with pytest.raises(ValueError, match="row"):
        LatinSquare(2, ((0, 0), (1, 1)))
    with pytest.raises(ValueError, match="column"):
        LatinSquare(2, ((0, 1), (0, 1)))


def test_delta_examples():
    dsp = delta(canonical("S'"))
    # brute force over the 4x4 difference table
    pts = sorted(canonical("S'").points)
    brute = {tuple(a - b for a, b in zip(p, q)) for p in pts for q in pts}
    assert dsp.points == brute
    assert len(dsp.points) == 13

    assert delta([(0, 0)]).points == {(0, 0)}

    dtp = delta(canonical("T'"))
    slice0 = {(x, y) for x, y, z in dtp.points if z == 0}
    assert slice0 == {(i, j) for i in range(-2, 3) for j in range(-2, 3)
                      if abs(i) < 3 and abs(j) < 3 and abs(i + j) < 3}


def test_delta_of_h_prime_slices():
    dhp = delta(canonical("H'"))
    by_z = {}
    for x, y, z in dhp.points:
        by_z.setdefault(z, set()).add((x, y))
    assert by_z[2] == {(0, 0)} and by_z[-2] == {(0, 0)}
    hexagon1 = {(i, j) for i in range(-1, 2) for j in range(-1, 2) if abs(i + j) <= 1}
    assert by_z[1] == hexagon1 and by_z[-1] == hexagon1
    assert by_z[0] == {(i, j) for i in range(-2, 3) for j in range(-2, 3)
                       if abs(i + j) <= 2}


def test_is_imaginary_cube_examples():
    assert is_imaginary_cube_digit_set(canonical("S"))
    assert is_imaginary_cube_digit_set(canonical("T"))  # centered grid normalizes
    assert is_imaginary_cube_digit_set(canonical("H"))
    flat = DigitSet3(2, frozenset({(0, 0, 0), (0, 1, 0), (1, 0, 0), (1, 1, 0)}))
    assert not is_imaginary_cube_digit_set(flat)
    outside = DigitSet3(2, frozenset({(0, 0, 0), (1, 1, 1), (2, 0, 1), (0, 1, 0)}))
    with pytest.raises(ValueError, match="outside cube grid"):
        is_imaginary_cube_digit_set(outside)


def test_latin_square_round_trip_order_4():
    seen = set()
    for h in all_latin_squares(4):
        d = from_latin_square(h)
        assert is_imaginary_cube_digit_set(d)
        back = to_latin_square(d)
        assert back == h
        assert d.points not in seen
        seen.add(d.points)
    assert len(seen) == 576


small_digit_sets = st.sets(
    st.tuples(st.integers(-4, 4), st.integers(-4, 4), st.integers(-4, 4)),
    min_size=4, max_size=4).map(lambda s: DigitSet3(2, frozenset(s)))


@given(small_digit_sets)
def test_delta_properties(d):
    dd = delta(d)
    assert (0, 0, 0) in dd.points
    assert dd.points == {tuple(-c for c in p) for p in dd.points}
    k2 = len(d.points)
    assert len(dd.points) <= k2 * (k2 - 1) + 1


def test_uv_digit_set():
    d = uv_digit_set("S", Fraction(-1), Fraction(3))
    assert d.points == {(1, 0), (0, 1), (0, 0), (-1, 3)}
    t = uv_digit_set("T", Fraction(1, 2), Fraction(1, 2))
    assert len(t.points) == 9
    with pytest.raises(ValueError, match="degenerate digit collision"):
        uv_digit_set("S", 0, 0)
    with pytest.raises(ValueError, match="degenerate digit collision"):
        uv_digit_set("T", 0, 0)


def test_json_round_trip():
    for d in (canonical("T"), canonical("S'")):
        back = digit_set_from_json(digit_set_to_json(d))
        assert back == d
    d2 = uv_digit_set("S", Fraction(1, 3), Fraction(-2, 5))
    doc = digit_set_to_json(d2)
    assert "1/3" in doc and json.loads(doc)["dim"] == 2
    assert digit_set_from_json(doc) == d2


def test_normalize_to_grid():
    g = normalize_to_grid(canonical("T"))
    assert all(0 <= c <= 2 for p in g.points for c in p)
    assert len(g.points) == 9
