from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from squaretiled import (
    HORIZONTAL,
    VERTICAL,
    Direction,
    GenusError,
    NoWitnessError,
    PowerOfTwoBound,
    apply_S,
    corners_property,
    direction_height_profile,
    directions,
    finiteness_bound,
    genus,
    has_balanced_heights,
    horizontal_cylinders,
    is_balanced_horizontal,
    is_isomorphic,
    orbit,
    regular_corner_circle,
    stratum,
    trace_direction_oracle,
    vertex_permutation,
    vorobets_witness,
)


# --------------------------------------------------------------------------
# Balanced heights

def test_balanced_horizontal_examples(torus, l3, o4):
    assert is_balanced_horizontal(torus)
    assert is_balanced_horizontal(l3)
    assert not is_balanced_horizontal(apply_S(o4))
    assert {c.height for c in horizontal_cylinders(apply_S(o4)).cylinders} == {1, 2}


def test_balanced_heights_examples(l3, ew):
    rep = has_balanced_heights(ew)
    assert rep.balanced and rep.witness is None and rep.orbit_size == 1
    rep = has_balanced_heights(l3)
    assert rep.balanced and rep.orbit_size == 3


def test_unbalanced_witness_for_o4(o4):
    rep = has_balanced_heights(o4)
    assert not rep.balanced and rep.orbit_size == 9
    assert set(rep.witness.heights) == {1, 2}
    assert is_isomorphic(rep.witness.member, apply_S(o4))
    # the witness cylinders really are cylinders of the member
    assert set(rep.witness.cylinders) <= set(horizontal_cylinders(rep.witness.member).cylinders)


def test_balanced_agrees_with_flow_oracle(small_corpus):
    """Orbit-balanced surfaces have equal traced heights in every small direction."""
    ds = directions(3)
    for o in [x for x in small_corpus if x.n <= 5]:
        rep = has_balanced_heights(o)
        traced = [len({c.height for c in trace_direction_oracle(o, d).cylinders}) == 1 for d in ds]
        if rep.balanced:
            assert all(traced)
        else:
            # unbalanced surfaces on at most 5 squares already show it in a small direction
            assert not all(traced)


def test_balanced_is_orbit_invariant(small_corpus):
    for o in [x for x in small_corpus if x.n == 5][:25]:
        rec = orbit(o)
        assert {has_balanced_heights(m).balanced for m in rec.members} == {rec.balanced}


# --------------------------------------------------------------------------
# Corners criterion

def test_corners_examples(l3, o4, ew, torus):
    assert corners_property(l3)
    assert corners_property(ew)
    assert not corners_property(o4)
    with pytest.raises(GenusError):
        corners_property(torus)


def test_corners_witness(o4, l3):
    member, row = regular_corner_circle(o4)
    sigma = vertex_permutation(member)
    assert row and all(sigma.fixes(i) for i in row)
    assert sorted(row) == sorted(next(c for c in member.h.cycles() if row[0] in c))
    assert regular_corner_circle(l3) is None


def test_corners_implies_balanced_small(small_corpus):
    for o in small_corpus:
        if genus(o) >= 2 and corners_property(o):
            assert has_balanced_heights(o).balanced


def test_corners_is_orbit_invariant(o4, l3):
    for o in (o4, l3):
        values = {corners_property(m) for m in orbit(o, flags=False).members}
        assert len(values) == 1


# --------------------------------------------------------------------------
# Finiteness bound

def test_finiteness_bound_genus_two():
    b = finiteness_bound(2)
    assert (b.coefficient, b.exponent) == (16, 2 ** 17)
    assert b.value == 16 * 2 ** (2 ** 17)
    assert b.digits() == 39458
    assert 10 ** 39457 <= b.value < 10 ** 39458


def test_finiteness_bound_genus_three_is_symbolic():
    b = finiteness_bound(3)
    assert (b.coefficient, b.exponent) == (64, 2 ** 33)
    with pytest.raises(OverflowError):
        b.value
    # log10(64 * 2^(2^33)) = log10(64) + 2^33 log10(2) ~ 2585827974.4
    assert b.digits() == 2585827975


def test_finiteness_bound_monotone():
    bounds = [finiteness_bound(g) for g in range(2, 7)]
    assert all(b2 > b1 for b1, b2 in zip(bounds, bounds[1:]))
    assert not bounds[0] > bounds[0]


def test_finiteness_bound_rejects_low_genus():
    with pytest.raises(GenusError):
        finiteness_bound(1)


@given(st.integers(1, 300), st.integers(0, 200), st.integers(0, 2 ** 260))
def test_power_of_two_ge_is_exact(c, e, x):
    b = PowerOfTwoBound(c, e)
    assert b.ge(x) == (x <= c * 2 ** e)
    assert b.ge(c * 2 ** e) and not b.ge(c * 2 ** e + 1)


@given(st.integers(1, 300), st.integers(0, 200), st.integers(1, 300), st.integers(0, 200))
def test_power_of_two_ordering_is_exact(c1, e1, c2, e2):
    a, b = PowerOfTwoBound(c1, e1), PowerOfTwoBound(c2, e2)
    assert (a > b) == (c1 * 2 ** e1 > c2 * 2 ** e2)
    assert a.bit_length() == (c1 * 2 ** e1).bit_length()


@given(st.integers(1, 10 ** 6), st.integers(0, 3000))
def test_power_of_two_digits(c, e):
    assert PowerOfTwoBound(c, e).digits() == len(str(c * 2 ** e))


# --------------------------------------------------------------------------
# Vorobets cylinder

def test_vorobets_examples(l3, ew, torus):
    d, c = vorobets_witness(l3, 1)
    assert d == HORIZONTAL and (c.width, c.height) == (2, 1)
    d, c = vorobets_witness(ew, 1)
    assert d == HORIZONTAL and c.width == 4 and c.area * 8 >= 8
    with pytest.raises(GenusError):
        vorobets_witness(torus)


def test_vorobets_witness_satisfies_both_inequalities(small_corpus):
    for o in small_corpus:
        if genus(o) < 2:
            continue
        m = stratum(o).m_q
        d, c = vorobets_witness(o, 1)
        assert Fraction(c.area) >= Fraction(o.n, m)
        # length^2 <= N * 2^(2^(4m+1)); the right side is astronomically large
        assert c.length_squared.bit_length() <= (2 ** (4 * m + 1))


def test_no_witness_error_is_a_lookup_error():
    assert issubclass(NoWitnessError, LookupError)


# --------------------------------------------------------------------------
# Height profile

def test_height_profile_torus(torus):
    prof = direction_height_profile(torus, 1)
    assert prof.heights_squared[HORIZONTAL] == (1,)
    assert prof.heights_squared[VERTICAL] == (1,)
    assert prof.heights_squared[Direction(1, 1)] == (Fraction(1, 2),)
    assert prof.flagged == []


def test_height_profile_quaternion_origami(ew):
    prof = direction_height_profile(ew, 1)
    assert all(x <= 1 for hs in prof.heights_squared.values() for x in hs)


def test_height_profile_flags_tall_cylinder(cyl4):
    assert HORIZONTAL in direction_height_profile(cyl4, 1).flagged
