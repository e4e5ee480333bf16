"""Window verifications of the expansion-set identities, on the exact
windows the reference figures use, with the closed forms as oracle."""

from icube.digit_sets import canonical, delta
from icube.expansion import (decide_membership, expansion_in_window,
                             h_prime_slice_closed_form, lemma_set_member,
                             slice_membership, t_prime_slice_closed_form,
                             verify_slice_window, verify_tetra_window)
from icube.lattice import Window2, Window3

FIG_TETRA_WINDOW = Window3((-2, -2, -1), (6, 6, 4))
FIG_T_WINDOW = Window2((-14, -11), (3, 3))
FIG_H_WINDOW = Window2((-4, -4), (16, 16))
FIG_HEIGHTS = (0, 1, 2, 3, 6)


def test_tetra_figure_window():
    dd = delta(canonical("S'"))
    es = expansion_in_window(2, dd, FIG_TETRA_WINDOW)
    expected = frozenset(p for p in FIG_TETRA_WINDOW.points()
                         if lemma_set_member("C_S", p))
    assert es.points == expected


def test_tetra_circled_points():
    # circled overlay: 2E restricted to the window, via the closed form
    dd = delta(canonical("S'"))
    es = expansion_in_window(2, dd, FIG_TETRA_WINDOW)
    circled = {p for p in es.points
               if all(c % 2 == 0 for c in p)
               and lemma_set_member("C_S", tuple(c // 2 for c in p))}
    for p in circled:
        assert p in es.points
    # every window point of 2E arises this way
    for p in FIG_TETRA_WINDOW.points():
        doubled_member = (all(c % 2 == 0 for c in p)
                          and lemma_set_member("C_S", tuple(c // 2 for c in p)))
        assert doubled_member == (p in circled)


def test_tetra_red_translations():
    # the translated difference-set copies drawn over the figure sit inside E
    dd = delta(canonical("S'"))
    for shift in ((0, 0, 0), (0, 4, 2)):
        for d in dd.points:
            p = tuple(a + b for a, b in zip(d, shift))
            assert decide_membership(2, dd, p).member


def test_t_slices_on_figure_window():
    dd = delta(canonical("T'"))
    for z in FIG_HEIGHTS:
        expected = t_prime_slice_closed_form(z, FIG_T_WINDOW)
        assert expected is not None
        assert slice_membership(3, dd, z, FIG_T_WINDOW) == expected


def test_t_red_translations():
    dd = delta(canonical("T'"))
    for shift in ((0, 0, 0), (3, -3, 3), (0, 3, 3), (-3, 0, 3), (-6, -6, 0)):
        for d in dd.points:
            p = tuple(a + b for a, b in zip(d, shift))
            assert decide_membership(3, dd, p).member


def test_t_circled_points():
    # circled overlay: 3E at height 3z' is 3 * (slice z'), via closed forms
    dd = delta(canonical("T'"))
    for z in (0, 3, 6):
        inner = t_prime_slice_closed_form(z // 3, Window2((-5, -4), (1, 1)))
        got = slice_membership(3, dd, z, FIG_T_WINDOW)
        for q in inner:
            p = (3 * q[0], 3 * q[1])
            if p in FIG_T_WINDOW:
                assert p in got


def test_h_slices_on_figure_window():
    dd = delta(canonical("H'"))
    for z in FIG_HEIGHTS:
        expected = h_prime_slice_closed_form(z, FIG_H_WINDOW)
        assert expected is not None
        assert slice_membership(3, dd, z, FIG_H_WINDOW) == expected


def test_h_red_translations():
    dd = delta(canonical("H'"))
    for shift in ((0, 0, 0), (3, 12, 0), (9, 6, 3)):
        for d in dd.points:
            p = tuple(a + b for a, b in zip(d, shift))
            assert decide_membership(3, dd, p).member


def test_height_two_contains_mixed_residue_points():
    # regression: points of the form 3w + j with w outside B' belong to the
    # height-2 slice even when a wider triangle-shaped exclusion would
    # remove them
    dd = delta(canonical("H'"))
    assert decide_membership(3, dd, (-10, -3, 2)).member
    w = Window2((-12, -5), (-8, -1))
    assert (-10, -3) in h_prime_slice_closed_form(2, w)


def test_verify_helpers_pass():
    rep = verify_tetra_window(Window3.symmetric(6))
    assert rep.mismatches == () and rep.checked == 13 ** 3
    rep = verify_slice_window("t0", Window2.symmetric(8), pairs=[(0, 1), (1, 1)])
    assert rep.mismatches == ()
    rep = verify_slice_window("h0", Window2.symmetric(8), pairs=[(0, 1), (1, 1)])
    assert rep.mismatches == ()
