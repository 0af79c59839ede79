from __future__ import annotations

import math
import random
from itertools import combinations, permutations

import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from squaretiled import (
    IntransitiveError,
    NotBijectiveError,
    Origami,
    OrigamiSyntaxError,
    Permutation,
    canonical_form,
    format_origami,
    genus,
    holonomy_lattice,
    holonomy_vectors,
    is_isomorphic,
    is_normal,
    monodromy_order,
    parse_origami,
    stratum,
    vertex_permutation,
)
from squaretiled.lattice import hermite_normal_form, lattice_contains, xgcd
from squaretiled.origami import _is_transitive


@st.composite
def origamis(draw, max_n=7):
    n = draw(st.integers(1, max_n))
    h = draw(st.permutations(range(n)))
    v = draw(st.permutations(range(n)))
    assume(_is_transitive(h, v))
    return Origami.from_arrays(h, v)


@st.composite
def relabelings(draw, n):
    return Permutation.from_array(draw(st.permutations(range(n))))


# --------------------------------------------------------------------------
# Permutations

def test_permutation_composition_is_right_to_left():
    p = Permutation.from_cycles([(1, 2)], 3)
    q = Permutation.from_cycles([(2, 3)], 3)
    # (p*q)(2) = p(q(2)) = p(3) = 3
    assert (p * q)(2) == 3
    assert (q * p)(2) == 1


def test_permutation_cycles_and_str():
    p = Permutation([2, 3, 1, 4])
    assert p.cycles() == [(1, 2, 3), (4,)]
    assert p.cycles(singletons=False) == [(1, 2, 3)]
    assert str(p) == "(1 2 3)(4)"
    assert p.cycle_type() == (3, 1)


def test_permutation_rejects_non_bijection():
    with pytest.raises(ValueError):
        Permutation([1, 1, 2])


@given(st.permutations(range(6)), st.integers(-7, 7))
def test_permutation_power_matches_repeated_product(images, k):
    p = Permutation.from_array(images)
    expected = Permutation.identity(6)
    step = p if k >= 0 else p.inverse()
    for _ in range(abs(k)):
        expected = expected * step
    assert p ** k == expected


# --------------------------------------------------------------------------
# Parsing

def test_parse_one_square_torus():
    o = parse_origami("h: 1\nv: 1")
    assert o.n == 1 and o.h.is_identity() and o.v.is_identity()


def test_parse_cycle_notation_omits_fixed_points():
    o = parse_origami("h: (1 2)(3)\nv: (1 3)")
    assert o.n == 3
    assert o.h == Permutation([2, 1, 3])
    assert o.v == Permutation([3, 2, 1])


def test_parse_accepts_pair_transitive_with_identity_v():
    o = parse_origami("h: 2 1\nv: 1 2")
    assert o.n == 2


def test_parse_explicit_n_adds_fixed_points():
    o = parse_origami("n: 4\nh: (1 2 3)\nv: (1 4)")
    assert o.n == 4
    with pytest.raises(IntransitiveError):
        parse_origami("n: 5\nh: (1 2 3)\nv: (1 4)")


def test_parse_ignores_comments_and_blank_lines():
    o = parse_origami("# the L\n\nh: (1 2)  # right\nv: (1 3)\n")
    assert o.n == 3


@pytest.mark.parametrize("text, exc, where", [
    ("h: (1 2\nv: (1 3)", OrigamiSyntaxError, "line 1"),
    ("h: (1 2)\nw: (1 3)", OrigamiSyntaxError, "line 2"),
    ("h: (1 2)", OrigamiSyntaxError, "missing 'v:'"),
    ("h: 1 1\nv: 1 2", NotBijectiveError, "line 1"),
    ("h: (1 2)(2 3)\nv: 1 2 3", NotBijectiveError, "line 1"),
    ("h: 2 1 3\nv: 2 1 3", IntransitiveError, "line 2"),
    ("n: x\nh: 1\nv: 1", OrigamiSyntaxError, "line 1"),
])
def test_parse_errors_are_distinct_and_name_the_line(text, exc, where):
    with pytest.raises(exc, match=where):
        parse_origami(text)


@pytest.mark.parametrize("style", ["cycles", "images"])
def test_parse_inverts_format_on_small_corpus(small_corpus, style):
    for o in small_corpus:
        assert parse_origami(format_origami(o, style)) == o


# --------------------------------------------------------------------------
# Vertices and strata

def test_vertex_permutation_examples(torus, l3, o4):
    assert vertex_permutation(torus).is_identity()
    assert vertex_permutation(l3) == Permutation.from_cycles([(1, 3, 2)], 3)
    assert vertex_permutation(o4) == Permutation.from_cycles([(1, 4, 2)], 4)
    assert vertex_permutation(o4).fixes(3)


def test_stratum_examples(torus, l3, ew):
    s = stratum(torus)
    assert (s.zero_orders, s.genus, s.m_q) == ((), 1, 0)
    s = stratum(l3)
    assert (s.zero_orders, s.genus, s.m_q) == ((2,), 2, 4)
    s = stratum(ew)
    assert (s.zero_orders, s.genus, s.m_q) == ((1, 1, 1, 1), 3, 8)


def test_quaternion_origami_vertex_cycles(ew):
    assert sorted(len(c) for c in vertex_permutation(ew).cycles()) == [2, 2, 2, 2]


def test_vertex_permutation_matches_pointwise_formula(small_corpus):
    for o in small_corpus[:200]:
        sigma = vertex_permutation(o)
        for i in range(1, o.n + 1):
            assert sigma(i) == o.v(o.h(o.v.inverse()(o.h.inverse()(i))))


@given(origamis())
def test_genus_two_ways(o):
    s = stratum(o)
    cycles = vertex_permutation(o).cycles()
    assert sum(len(c) - 1 for c in cycles) == 2 * s.genus - 2
    assert s.genus == 1 + (o.n - len(cycles)) // 2
    if s.genus >= 2:
        assert s.m_q == 4 * s.genus - 4


def test_genus_two_ways_on_small_corpus(small_corpus):
    for o in small_corpus:
        s = stratum(o)
        v = len(vertex_permutation(o).cycles())
        assert 2 * s.genus == 2 + o.n - v == 2 + sum(s.zero_orders)


# --------------------------------------------------------------------------
# Canonical form

def test_canonical_form_of_torus_is_itself(torus):
    assert canonical_form(torus) == torus


def test_canonical_form_matches_relabeled_l(l3):
    other = Origami.from_cycles([(2, 3)], [(2, 1)], n=3)
    assert canonical_form(l3) == canonical_form(other)


def test_canonical_form_invariant_under_transposition(o4):
    pi = Permutation.from_cycles([(1, 3)], 4)
    assert canonical_form(o4.relabel(pi)) == canonical_form(o4)


@settings(max_examples=200)
@given(st.data())
def test_canonical_form_conjugation_invariant_and_idempotent(data):
    o = data.draw(origamis())
    pi = data.draw(relabelings(o.n))
    c = canonical_form(o)
    assert canonical_form(c) == c
    assert canonical_form(o.relabel(pi)) == c
    assert is_isomorphic(o, o.relabel(pi))


def test_canonical_form_under_random_relabelings_of_corpus(small_corpus):
    rng = random.Random(5)
    for o in small_corpus[::7]:
        c = canonical_form(o)
        for _ in range(100):
            images = list(range(o.n))
            rng.shuffle(images)
            assert canonical_form(o.relabel(Permutation.from_array(images))) == c


def _brute_canonical(o: Origami):
    """Smallest relabeled key over all n! relabelings; independent of the BFS rule."""
    best = None
    for images in permutations(range(o.n)):
        r = o.relabel(Permutation.from_array(images))
        if best is None or r.key < best:
            best = r.key
    return best


def test_isomorphism_agrees_with_brute_force_on_four_squares(small_corpus):
    four = [o for o in small_corpus if o.n == 4]
    brute = [_brute_canonical(o) for o in four]
    # the corpus holds one origami per class, so brute-force keys must all differ
    assert len(set(brute)) == len(four)


def test_is_isomorphic_examples(l3, o4):
    assert is_isomorphic(l3, l3)
    assert not is_isomorphic(l3, o4)


# --------------------------------------------------------------------------
# Holonomy

def test_hermite_normal_form_examples():
    assert hermite_normal_form([(2, 0), (0, 1)]) == ((2, 0), (0, 1))
    assert hermite_normal_form([(4, 6), (2, 3), (0, 5)]) == ((2, 3), (0, 5))
    assert hermite_normal_form([(3, 1), (1, 2)]) == ((1, 2), (0, 5))


def _hnf_oracle(vectors):
    """``a`` = gcd of x-coordinates, ``a*d`` = gcd of all 2x2 minors."""
    a = 0
    for x, _ in vectors:
        a = math.gcd(a, x)
    det = 0
    for (x1, y1), (x2, y2) in combinations(vectors, 2):
        det = math.gcd(det, x1 * y2 - x2 * y1)
    if a == 0 or det == 0:
        return 0, 0
    return a, det // a


@given(st.lists(st.tuples(st.integers(-20, 20), st.integers(-20, 20)), min_size=2, max_size=6))
def test_hermite_normal_form_against_minors(vectors):
    a0, d0 = _hnf_oracle(vectors)
    assume(a0 and d0)
    (a, b), (zero, d) = hermite_normal_form(vectors)
    assert (a, d, zero) == (a0, d0, 0)
    assert 0 <= b < d
    hnf = ((a, b), (0, d))
    assert all(lattice_contains(hnf, vec) for vec in vectors)


@given(st.integers(-500, 500), st.integers(-500, 500))
def test_xgcd(a, b):
    g, x, y = xgcd(a, b)
    assert g == math.gcd(a, b) and a * x + b * y == g


def test_holonomy_examples(torus, ew):
    assert holonomy_lattice(torus) == ((1, 0), (0, 1))
    assert holonomy_lattice(Origami.from_cycles([(1, 2)], [], n=2)) == ((2, 0), (0, 1))
    assert holonomy_lattice(ew) == ((2, 0), (0, 2))


@settings(max_examples=100)
@given(st.data())
def test_holonomy_independent_of_labels_and_root(data):
    o = data.draw(origamis())
    pi = data.draw(relabelings(o.n))
    root = data.draw(st.integers(1, o.n))
    hnf = holonomy_lattice(o)
    assert holonomy_lattice(o.relabel(pi)) == hnf
    assert holonomy_lattice(o, root=root) == hnf
    assert all(lattice_contains(hnf, vec) for vec in holonomy_vectors(o, root))


# --------------------------------------------------------------------------
# Normality

def test_is_normal_examples(torus, l3, ew):
    assert is_normal(torus)
    assert is_normal(ew)
    assert not is_normal(l3)
    assert monodromy_order(l3) == 6


def test_monodromy_order_of_quaternion_origami(ew):
    assert monodromy_order(ew) == 8


def _word_value(o: Origami, word):
    p = Permutation.identity(o.n)
    for letter in word:
        p = p * {"h": o.h, "v": o.v, "H": o.h.inverse(), "V": o.v.inverse()}[letter]
    return p


def test_normal_origamis_act_regularly_on_random_words(small_corpus, ew):
    rng = random.Random(11)
    normals = [o for o in small_corpus if is_normal(o)] + [ew]
    assert len(normals) > 10
    for o in normals:
        for _ in range(50):
            word = [rng.choice("hvHV") for _ in range(rng.randint(1, 12))]
            p = _word_value(o, word)
            if p(1) == 1:
                assert p.is_identity()


def test_monodromy_order_matches_closure_size(small_corpus):
    for o in small_corpus[::11]:
        # independent closure by multiplying out every word until nothing new appears
        group = {Permutation.identity(o.n)}
        frontier = list(group)
        while frontier:
            nxt = []
            for g in frontier:
                for s in (o.h, o.v):
                    x = g * s
                    if x not in group:
                        group.add(x)
                        nxt.append(x)
            frontier = nxt
        assert monodromy_order(o) == len(group)
        assert is_normal(o) == (len(group) == o.n)


def test_genus_function(l3):
    assert genus(l3) == 2
