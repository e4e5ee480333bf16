"""Radix-expansion machinery over lattice digit sets.

The central object is E(k, D) = union over t of E(k, D, t) where
E(k, D, 0) = {0} and E(k, D, t) = k*E(k, D, t-1) + D.  A point x belongs to
E(k, D) iff it has a finite expansion x = sum_j k^j d_j with d_j in D.

Membership is decided by reverse digit-peeling: from state r, follow edges
r -> (r - d)/k for every d in D congruent to r componentwise mod k; x is a
member iff 0 is reachable from x.  Any state with ||r||_inf > M/(k-1)
(M = max ||d||_inf) strictly shrinks under every edge, so the reachable set
is finite and the search terminates.

Also here: the zero-expansion decision that settles measure positivity of
F(k, D) for integral planar digit sets, and the closed-form window sets used
as independent oracles for the expansion-set identities (the C / B picture
for the tetrahedral digit set, and the slice formulas for the primed T and H
digit sets at heights 3^n and 3^m(3^n - 1)).
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .digit_sets import DeltaSet, DigitSet2, DigitSet3, canonical, delta
from .lattice import Window2, Window3


def _digit_tuples(digits) -> tuple[tuple[int, ...], ...]:
    if isinstance(digits, DeltaSet):
        pts = digits.points
    elif isinstance(digits, (DigitSet2, DigitSet3)):
        pts = digits.points
    else:
        pts = digits
    out = []
    for p in pts:
        q = tuple(int(c) for c in p)
        if any(c != int(c) for c in p):
            raise ValueError("integerize first")
        out.append(q)
    return tuple(sorted(out))


def _residue_buckets(k: int, digits: Sequence[tuple[int, ...]]):
    buckets: dict[tuple[int, ...], list[tuple[int, ...]]] = {}
    for d in digits:
        buckets.setdefault(tuple(c % k for c in d), []).append(d)
    return buckets


@dataclass(frozen=True)
class MembershipCertificate:
    """Positive answers carry the digit word (d_0 first, x = sum k^j d_j);
    negative answers carry the exhausted visited-state set."""

    target: tuple[int, ...]
    member: bool
    word: tuple[tuple[int, ...], ...] | None
    visited: frozenset | None


def decide_membership(k: int, digits, target) -> MembershipCertificate:
    """Exact membership of target in E(k, digits), with certificate."""
    if k < 2:
        raise ValueError("radix must be >= 2")
    dts = _digit_tuples(digits)
    target = tuple(int(c) for c in target)
    zero = tuple(0 for _ in target)
    if target == zero:
        return MembershipCertificate(target, True, (), None)
    buckets = _residue_buckets(k, dts)
    parent: dict[tuple, tuple] = {target: None}  # state -> (prev, digit)
    queue = deque([target])
    while queue:
        r = queue.popleft()
        for d in buckets.get(tuple(c % k for c in r), ()):
            s = tuple((rc - dc) // k for rc, dc in zip(r, d))
            if s == zero:
                word = [d]
                cur = r
                while parent[cur] is not None:
                    prev, dd = parent[cur]
                    word.append(dd)
                    cur = prev
                word.reverse()
                return MembershipCertificate(target, True, tuple(word), None)
            if s not in parent:
                parent[s] = (r, d)
                queue.append(s)
    return MembershipCertificate(target, False, None, frozenset(parent))


def decide_membership_batch(k: int, digits, targets: Iterable) -> dict[tuple, bool]:
    """Membership for many points at once.

    Builds the forward closure of all targets under digit peeling, then marks
    the states that reach 0 by a reverse sweep.  The closure is forward
    closed, so a state reaches 0 iff 0 lies in the closure and is
    reverse-reachable from it.
    """
    if k < 2:
        raise ValueError("radix must be >= 2")
    dts = _digit_tuples(digits)
    buckets = _residue_buckets(k, dts)
    targets = [tuple(int(c) for c in t) for t in targets]
    if not targets:
        return {}
    zero = tuple(0 for _ in targets[0])
    preds: dict[tuple, list[tuple]] = {}
    seen: set[tuple] = set(targets)
    stack = list(seen)
    while stack:
        r = stack.pop()
        for d in buckets.get(tuple(c % k for c in r), ()):
            s = tuple((rc - dc) // k for rc, dc in zip(r, d))
            preds.setdefault(s, []).append(r)
            if s not in seen:
                seen.add(s)
                stack.append(s)
    members: set[tuple] = set()
    if zero in seen:
        members.add(zero)
        queue = deque([zero])
        while queue:
            s = queue.popleft()
            for r in preds.get(s, ()):
                if r not in members:
                    members.add(r)
                    queue.append(r)
    return {t: t in members for t in targets}


@dataclass(frozen=True)
class ExpansionSet:
    """E(k, digits, depth) restricted to a window."""

    k: int
    depth: int
    window: Window2 | Window3
    points: frozenset


def _prune_bound(k: int, digits: Sequence[tuple[int, ...]], window) -> list[int]:
    # componentwise: a surviving point can still land in the window after
    # s >= 0 further doublings only if |x_i| <= max(|lo_i|,|hi_i|) + M/(k-1)
    m = max(abs(c) for d in digits for c in d)
    slack = -(-m // (k - 1))  # ceil
    return [max(abs(window.lo[i]), abs(window.hi[i])) + slack
            for i in range(len(window.lo))]


def iterate_expansion(k: int, digits, t: int, window: Window2 | Window3) -> ExpansionSet:
    """E(k, digits, t) intersected with the window, computed exactly.

    Intermediate points that can no longer reach the window are pruned; the
    pruning bound is valid for any number of remaining steps.
    """
    if t < 0:
        raise ValueError("depth must be >= 0")
    dts = _digit_tuples(digits)
    bound = _prune_bound(k, dts, window)
    cur: set[tuple] = {tuple(0 for _ in window.lo)}
    for _ in range(t):
        nxt: set[tuple] = set()
        for w in cur:
            for d in dts:
                p = tuple(k * wc + dc for wc, dc in zip(w, d))
                if all(abs(pc) <= b for pc, b in zip(p, bound)):
                    nxt.add(p)
        cur = nxt
    pts = frozenset(p for p in cur if p in window)
    return ExpansionSet(k, t, window, pts)


def _ceil_log(k: int, x: int) -> int:
    t, p = 0, 1
    while p < x:
        p *= k
        t += 1
    return t


def expansion_in_window(k: int, digits, window: Window2 | Window3) -> ExpansionSet:
    """Stabilized E(k, digits) restricted to the window.

    Requires 0 in digits (true for every differenced set) so the depth sets
    are monotone.  Iterates until two consecutive depths agree on the window
    and the depth exceeds ceil(log_k(window radius)) + ceil(log_k(M/(k-1)+1)) + 2.
    """
    dts = _digit_tuples(digits)
    zero = tuple(0 for _ in window.lo)
    if zero not in dts:
        raise ValueError("stabilized expansion needs 0 among the digits")
    m = max(abs(c) for d in dts for c in d)
    radius = max(max(abs(window.lo[i]), abs(window.hi[i])) for i in range(len(window.lo)))
    t_min = _ceil_log(k, max(radius, 1)) + _ceil_log(k, m // (k - 1) + 1 + (m % (k - 1) != 0)) + 2
    bound = _prune_bound(k, dts, window)
    cur: set[tuple] = {zero}
    prev_view: frozenset = frozenset()
    t = 0
    while True:
        view = frozenset(p for p in cur if p in window)
        if t >= t_min and view == prev_view:
            return ExpansionSet(k, t, window, view)
        prev_view = view
        nxt: set[tuple] = set()
        for w in cur:
            for d in dts:
                p = tuple(k * wc + dc for wc, dc in zip(w, d))
                if all(abs(pc) <= b for pc, b in zip(p, bound)):
                    nxt.add(p)
        cur = nxt
        t += 1


def slice_membership(k: int, digits, z: int, window: Window2) -> frozenset[tuple[int, int]]:
    """{(x,y) in window : (x,y,z) in E(k, digits)} via the exact decider."""
    pts = [(x, y, z) for x, y in window.points()]
    answers = decide_membership_batch(k, digits, pts)
    return frozenset((x, y) for (x, y, zz), ok in answers.items() if ok)


@dataclass(frozen=True)
class ZeroExpansionResult:
    found: bool
    witness: tuple[tuple[int, int], ...] | None


def has_nontrivial_zero_expansion(k: int, d: DigitSet2) -> ZeroExpansionResult:
    """Does 0 have a (k, Delta(D))-expansion besides the all-zero word?

    True certifies (for an integral digit set, which is automatically
    uniformly discrete) that F(k, D) is a null set; False certifies positive
    measure.  A nontrivial zero word can be taken to start with a nonzero
    digit d0, which must be divisible by k; the rest is exactly a
    (k, Delta(D))-expansion of -d0/k.
    """
    if not d.is_integral():
        raise ValueError("integerize first")
    dd = sorted(tuple(int(c) for c in p) for p in delta(d).points)
    for d0 in dd:
        if d0 == (0, 0) or any(c % k for c in d0):
            continue
        cert = decide_membership(k, dd, tuple(-c // k for c in d0))
        if cert.member:
            return ZeroExpansionResult(True, (d0,) + cert.word)
    return ZeroExpansionResult(False, None)


def is_complete_residue_system(k: int, d: DigitSet2) -> bool:
    """True iff D hits every class of Z^2/(kZ x kZ) exactly once."""
    pts = d.integer_points()
    return len({(x % k, y % k) for x, y in pts}) == k * k


# ---------------------------------------------------------------------------
# Closed-form lemma sets (independent test oracles; pure residue arithmetic)
# ---------------------------------------------------------------------------

def _v2(n: int) -> int:
    v = 0
    while n % 2 == 0:
        n //= 2
        v += 1
    return v


def lemma_set_member(set_id: str, p: Sequence[int], m: int | None = None) -> bool:
    """Membership in one of the named closed-form sets.

    B_S: {2^n (x,y,z) : x,y,z odd}           C_S: Z^3 minus B_S
    B_3Z: 3Z^2                               A_m: {i,j <= 0, i+j >= -3^(m+1)}
    B': {i = j != 0 mod 3}                   G'_m: {|i|,|j|,|i+j| < 3^m}
    A'_m: {i,j >= -3^m, i+j <= 2*3^m} union {i,j <= 3^m, i+j >= -2*3^m}
    J: {|i|,|j|,|i+j| <= 1}
    """
    if set_id in ("A_m", "A'_m", "G'_m") and (m is None or m < 0):
        raise ValueError("set requires parameter m >= 0")
    if set_id == "B_S":
        x, y, z = p
        return x != 0 and y != 0 and z != 0 and _v2(x) == _v2(y) == _v2(z)
    if set_id == "C_S":
        return not lemma_set_member("B_S", p)
    if set_id == "B_3Z":
        return p[0] % 3 == 0 and p[1] % 3 == 0
    if set_id == "A_m":
        i, j = p
        return i <= 0 and j <= 0 and i + j >= -(3 ** (m + 1))
    if set_id == "B'":
        return p[0] % 3 == p[1] % 3 != 0
    if set_id == "G'_m":
        i, j = p
        t = 3 ** m
        return abs(i) < t and abs(j) < t and abs(i + j) < t
    if set_id == "A'_m":
        i, j = p
        t = 3 ** m
        return ((i >= -t and j >= -t and i + j <= 2 * t)
                or (i <= t and j <= t and i + j >= -2 * t))
    if set_id == "J":
        i, j = p
        return abs(i) <= 1 and abs(j) <= 1 and abs(i + j) <= 1
    raise ValueError(f"unknown lemma set {set_id!r}")


def _a_m_points(m: int) -> list[tuple[int, int]]:
    t = 3 ** (m + 1)
    return [(i, j) for i in range(-t, 1) for j in range(-t - i, 1)]


def _g_prime_m_points(m: int) -> list[tuple[int, int]]:
    t = 3 ** m
    return [(i, j) for i in range(-t + 1, t) for j in range(-t + 1, t)
            if abs(i + j) < t]


def decompose_height(z: int):
    """Classify z as 0, 3^n, or 3^m(3^n - 1); None when uncharacterized."""
    if z == 0:
        return ("zero",)
    if z < 0:
        return None
    m, w = 0, z
    while w % 3 == 0:
        w //= 3
        m += 1
    if w == 1:
        return ("pow3", m)
    n, p = 0, 1
    while p < w + 1:
        p *= 3
        n += 1
    if p == w + 1:
        return ("pow3_minus", m, n)
    return None


def t_prime_slice_closed_form(z: int, window: Window2) -> frozenset[tuple[int, int]] | None:
    """Slice of E(3, Delta(D_T')) at height z per the closed forms.

    z = 0: all of Z^2; z = 3^n: remove 3^n B; z = 3^m(3^n - 1): remove
    3^m B and the Minkowski sum 3^(m+n) B + A_m.  Heights not of this shape
    have no closed form and yield None.
    """
    form = decompose_height(z)
    if form is None:
        return None
    if form[0] == "zero":
        return frozenset(window.points())
    if form[0] == "pow3":
        n = form[1]
        mod = 3 ** (n + 1)
        return frozenset(p for p in window.points()
                         if not (p[0] % mod == 0 and p[1] % mod == 0))
    _, m, n = form
    mod_b = 3 ** (m + 1)
    mod_s = 3 ** (m + n + 1)
    a_res = {(i % mod_s, j % mod_s) for i, j in _a_m_points(m)}
    out = set()
    for x, y in window.points():
        if x % mod_b == 0 and y % mod_b == 0:
            continue
        if (x % mod_s, y % mod_s) in a_res:
            continue
        out.add((x, y))
    return frozenset(out)


def _scaled_bprime_residues(t: int) -> tuple[int, set[tuple[int, int]]]:
    # 3^t B' is two residue classes mod 3^(t+1)
    mod = 3 ** (t + 1)
    return mod, {(3 ** t % mod, 3 ** t % mod), (2 * 3 ** t % mod, 2 * 3 ** t % mod)}


def _minkowski_residues(t: int, shifts: Iterable[tuple[int, int]]):
    mod, base = _scaled_bprime_residues(t)
    res = {((bx + sx) % mod, (by + sy) % mod)
           for bx, by in base for sx, sy in shifts}
    return mod, res


# The H' slices at heights 3^m(3^n - 1) are 3^(m+n+1)-periodic.  They are
# reproduced by forward residue-table arithmetic from the slice recursions
#   E_{3w}   = 3 E_w + G'_1
#   E_{3w-1} = (3 E_w + J) u (3 E_{w-1} + {0})
# with the bases E_0 = Z^2 and E_1 = 3 Z^2 + J = Z^2 \ B'.  A table T of
# modulus M marks the members of E_z among residues mod M.
#
# (The single-shape exclusion written A'_m does not survive at n = 1 for
# m >= 1, where translates of the offset region interact; the recursion
# itself is the reliable closed description, so it is the oracle used here.)

_J_SHIFTS = tuple((i, j) for i in range(-1, 2) for j in range(-1, 2)
                  if abs(i + j) <= 1)
_G1_SHIFTS = tuple((i, j) for i in range(-2, 3) for j in range(-2, 3)
                   if abs(i + j) <= 2)


def _tbl_scale3(t: np.ndarray) -> np.ndarray:
    m = t.shape[0]
    s = np.zeros((3 * m, 3 * m), dtype=bool)
    s[::3, ::3] = t
    return s


def _tbl_minkowski(t: np.ndarray, shifts) -> np.ndarray:
    out = np.zeros_like(t)
    for a, b in shifts:
        out |= np.roll(np.roll(t, a, axis=0), b, axis=1)
    return out


def _tbl_lift(t: np.ndarray, mod: int) -> np.ndarray:
    reps = mod // t.shape[0]
    return np.tile(t, (reps, reps)) if reps > 1 else t


def _h_height1_table() -> np.ndarray:
    t = np.ones((3, 3), dtype=bool)
    t[1, 1] = False
    t[2, 2] = False
    return t


def _h_pow3_table(n: int) -> np.ndarray:
    t = _h_height1_table()
    for _ in range(n):
        t = _tbl_minkowski(_tbl_scale3(t), _G1_SHIFTS)
    return t


def _h_pow3_minus1_table(n: int) -> np.ndarray:
    # E_{3^n - 1}, modulus 3^(n+1)
    if n == 0:
        return np.ones((1, 1), dtype=bool)
    upper = _tbl_minkowski(_tbl_scale3(_h_pow3_table(n - 1)), _J_SHIFTS)
    lower = _tbl_scale3(_h_pow3_minus1_table(n - 1))
    return upper | _tbl_lift(lower, upper.shape[0])


def _h_slice_table(m: int, n: int) -> np.ndarray:
    t = _h_pow3_minus1_table(n)
    for _ in range(m):
        t = _tbl_minkowski(_tbl_scale3(t), _G1_SHIFTS)
    return t


def h_prime_slice_closed_form(z: int, window: Window2) -> frozenset[tuple[int, int]] | None:
    """Slice of E(3, Delta(D_H')) at height z, from the forward closed forms.

    z = 0 gives Z^2 and z = 3^n gives Z^2 minus 3^n B'; at z = 3^m(3^n - 1)
    the residue table built from the slice recursions is used.  The union
    term 3^(m+n) B' + G'_m is a guaranteed subset there (see
    h_prime_union_term_residues).  Heights of any other shape are
    uncharacterized and yield None.
    """
    form = decompose_height(z)
    if form is None:
        return None
    if form[0] == "zero":
        return frozenset(window.points())
    if form[0] == "pow3":
        n = form[1]
        mod, res = _scaled_bprime_residues(n)
        return frozenset(p for p in window.points()
                         if (p[0] % mod, p[1] % mod) not in res)
    _, m, n = form
    tbl = _h_slice_table(m, n)
    mod = tbl.shape[0]
    return frozenset(p for p in window.points() if tbl[p[0] % mod, p[1] % mod])


def h_prime_union_term_residues(m: int, n: int):
    """Residues (mod 3^(m+n+1)) of the union term 3^(m+n) B' + G'_m."""
    return _minkowski_residues(m + n, _g_prime_m_points(m))


# ---------------------------------------------------------------------------
# Window verifications exposed to the CLI
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class LemmaReport:
    which: str
    checked: int
    mismatches: tuple


def verify_tetra_window(window: Window3) -> LemmaReport:
    """E(2, Delta(D_S')) == C on the window, decider vs closed form."""
    dd = delta(canonical("S'"))
    answers = decide_membership_batch(2, dd, window.points())
    bad = tuple(sorted(p for p, got in answers.items()
                       if got != lemma_set_member("C_S", p)))
    return LemmaReport("ds", len(answers), bad)


def verify_slice_window(family: str, window: Window2,
                        pairs: Sequence[tuple[int, int]] | None = None) -> LemmaReport:
    """Decider slices vs closed forms for the primed T or H digit set.

    Checks z = 0, z = 3^n (n = 0 included), and z = 3^m(3^n - 1) for
    (m, n) in pairs (default grid m in {0,1,2}, n in {1,2,3}).
    """
    if family == "t0":
        dd, oracle, name = delta(canonical("T'")), t_prime_slice_closed_form, "t0"
    elif family == "h0":
        dd, oracle, name = delta(canonical("H'")), h_prime_slice_closed_form, "h0"
    else:
        raise ValueError("family must be 't0' or 'h0'")
    if pairs is None:
        pairs = [(m, n) for m in (0, 1, 2) for n in (1, 2, 3)]
    heights = {0, 1}
    for m, n in pairs:
        heights.add(3 ** n)
        heights.add(3 ** m * (3 ** n - 1))
    bad = []
    checked = 0
    for z in sorted(heights):
        expected = oracle(z, window)
        assert expected is not None
        got = slice_membership(3, dd, z, window)
        checked += window.size()
        if got != expected:
            sym = sorted(got.symmetric_difference(expected))
            bad.append((z, tuple(sym[:8])))
    return LemmaReport(name, checked, tuple(bad))


def slice_to_json(z: int, window: Window2, points: Iterable[tuple[int, int]]) -> str:
    import json
    doc = {
        "z": z,
        "window": [list(window.lo), list(window.hi)],
        "points": [list(p) for p in sorted(points)],
    }
    return json.dumps(doc)
