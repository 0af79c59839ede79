"""Decision procedures: balanced heights, the corners criterion, normality
consequences, the Vorobets cylinder and the finiteness bound.

Every periodic direction of an origami is the horizontal direction of some
member of its SL(2,Z)-orbit, and equality of heights does not care about the
overall scale. So "in every periodic direction" becomes "horizontally, on every
orbit member", which is a finite exact check.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import mpmath

from .cylinders import Cylinder, _row_cylinders, cylinders_in_direction, horizontal_cylinders
from .origami import Origami, _monodromy_order_exceeds, _vertex_array, from_key, stratum
from .perm import cycles_of_array
from .sl2 import Direction, directions, orbit_keys


class GenusError(ValueError):
    """The property is only defined for genus at least 2."""


class NoWitnessError(LookupError):
    """No qualifying cylinder in the searched directions; widen the search."""


def _require_higher_genus(o: Origami) -> None:
    g = stratum(o).genus
    if g < 2:
        raise GenusError(f"needs genus >= 2, surface has genus {g}")


# --------------------------------------------------------------------------
# Balanced heights

def _balanced_horizontal(h: Sequence[int], v: Sequence[int]) -> bool:
    heights = {ht for _, _, ht in _row_cylinders(h, v)}
    return len(heights) == 1


def is_balanced_horizontal(o: Origami) -> bool:
    return _balanced_horizontal(o.h.array, o.v.array)


@dataclass(frozen=True)
class BalanceWitness:
    member: Origami
    cylinders: tuple[Cylinder, Cylinder]

    @property
    def heights(self) -> tuple[int, int]:
        return self.cylinders[0].height, self.cylinders[1].height


@dataclass(frozen=True)
class BalanceReport:
    balanced: bool
    witness: BalanceWitness | None
    orbit_size: int


def has_balanced_heights(o: Origami) -> BalanceReport:
    """Check equal cylinder heights in every periodic direction of ``o``.

    Orbit members are examined in breadth-first order from the canonical form;
    the first unbalanced one is returned as the witness.
    """
    keys = orbit_keys(o.h.array, o.v.array)
    n = o.n
    for key in keys:
        if not _balanced_horizontal(key[:n], key[n:]):
            member = from_key(key)
            cyls = horizontal_cylinders(member).cylinders
            low = min(cyls, key=lambda c: c.height)
            high = max(cyls, key=lambda c: c.height)
            return BalanceReport(False, BalanceWitness(member, (low, high)), len(keys))
    return BalanceReport(True, None, len(keys))


# --------------------------------------------------------------------------
# Corners criterion

def _corner_circles_singular(h: Sequence[int], v: Sequence[int]) -> bool:
    """Does every horizontal circle through tile corners carry a cone point?"""
    sigma = _vertex_array(h, v)
    return all(any(sigma[x] != x for x in row) for row in cycles_of_array(h))


def corners_property(o: Origami) -> bool:
    """No closed regular geodesic, in any periodic direction, passes through a tile corner."""
    _require_higher_genus(o)
    n = o.n
    return all(_corner_circles_singular(k[:n], k[n:]) for k in orbit_keys(o.h.array, o.v.array))


def regular_corner_circle(o: Origami) -> tuple[Origami, list[int]] | None:
    """An orbit member and a row whose bottom corners are all regular, if one exists.

    Such a row means a closed regular geodesic through tile corners, so its
    existence is exactly the failure of :func:`corners_property`.
    """
    _require_higher_genus(o)
    n = o.n
    for k in orbit_keys(o.h.array, o.v.array):
        h, v = k[:n], k[n:]
        sigma = _vertex_array(h, v)
        for row in cycles_of_array(h):
            if all(sigma[x] == x for x in row):
                return from_key(k), [x + 1 for x in row]
    return None


def orbit_flags(keys: Sequence[tuple[int, ...]]) -> tuple[bool, bool, bool]:
    """``(balanced, corners, contains_normal)`` for an orbit given by its canonical keys.

    ``corners`` is False on genus 1, where every corner is regular.
    """
    n = len(keys[0]) // 2
    balanced = corners = True
    normal = False
    for k in keys:
        h, v = k[:n], k[n:]
        if balanced and not _balanced_horizontal(h, v):
            balanced = False
        if corners and not _corner_circles_singular(h, v):
            corners = False
        if not normal and not _monodromy_order_exceeds(h, v, n):
            normal = True
    return balanced, corners, normal


def uniform_cylinder_failures(o: Origami, max_norm: int) -> list[tuple[Direction, list[tuple[int, int]]]]:
    """Directions where cylinders do not all share width and height.

    On a normal origami the deck group permutes the cylinders of each periodic
    direction transitively, so this list must be empty.
    """
    bad = []
    for d in directions(max_norm):
        dec = cylinders_in_direction(o, d)
        shapes = {(c.width, c.height) for c in dec.cylinders}
        if len(shapes) > 1:
            bad.append((d, sorted(shapes)))
    return bad


# --------------------------------------------------------------------------
# Big numbers of the form coefficient * 2**exponent

@dataclass(frozen=True)
class PowerOfTwoBound:
    """The exact integer ``coefficient * 2**exponent``.

    The exponent can be astronomically large (``2**33`` already for genus 3),
    so comparisons are done on bit lengths and the integer is only built on
    request.
    """

    coefficient: int
    exponent: int

    MAX_MATERIALIZE_BITS = 1 << 24

    @property
    def value(self) -> int:
        if self.exponent > self.MAX_MATERIALIZE_BITS:
            raise OverflowError(f"2**{self.exponent} is too large to build; use comparisons or digits()")
        return self.coefficient << self.exponent

    def ge(self, x: int) -> bool:
        """Exact test ``x <= coefficient * 2**exponent`` for ``x >= 0``."""
        if x.bit_length() <= self.exponent:
            return True
        # here the exponent is below the bit length of x, so the shift is cheap
        q = x >> self.exponent
        rem = x & ((1 << self.exponent) - 1)
        return q < self.coefficient or (q == self.coefficient and rem == 0)

    def bit_length(self) -> int:
        return self.coefficient.bit_length() + self.exponent if self.coefficient else 0

    def __gt__(self, other: PowerOfTwoBound) -> bool:
        if self.bit_length() != other.bit_length():
            return self.bit_length() > other.bit_length()
        # equal bit lengths: the exponents differ by less than the coefficient sizes
        e = min(self.exponent, other.exponent)
        return self.coefficient << (self.exponent - e) > other.coefficient << (other.exponent - e)

    def digits(self) -> int:
        """Number of decimal digits."""
        if self.exponent <= self.MAX_MATERIALIZE_BITS:
            x = self.value
            d = int(mpmath.floor(mpmath.log10(mpmath.mpf(x)))) + 1
            # guard against rounding at a power of ten
            while 10 ** d <= x:
                d += 1
            while d > 1 and 10 ** (d - 1) > x:
                d -= 1
            return d
        with mpmath.workdps(60):
            lg = mpmath.log10(self.coefficient) + self.exponent * mpmath.log10(2)
            return int(mpmath.floor(lg)) + 1

    def __str__(self):
        return f"{self.coefficient}*2^{self.exponent}"


def finiteness_bound(genus: int) -> PowerOfTwoBound:
    """``m^2 * 2^(2^(4m+1))`` with ``m = 4g - 4``: a bound on the square count of a
    minimal balanced origami of genus ``g``.
    """
    if genus < 2:
        raise GenusError(f"bound is stated for genus >= 2, got {genus}")
    m = 4 * genus - 4
    return PowerOfTwoBound(m * m, 1 << (4 * m + 1))


# --------------------------------------------------------------------------
# Vorobets cylinder

def vorobets_witness(o: Origami, max_norm: int = 1) -> tuple[Direction, Cylinder]:
    """A cylinder with length at most ``2^(2^(4m)) sqrt(N)`` and area at least ``N/m``.

    ``m = 4g - 4``. Both inequalities are checked exactly: the length via its
    square against ``N * 2^(2^(4m+1))``, the area as ``area * m >= N``. Within
    a direction the largest-area cylinder is tried first.
    """
    st = stratum(o)
    if st.genus < 2:
        raise GenusError(f"needs genus >= 2, surface has genus {st.genus}")
    m = st.m_q
    n = o.n
    bound = PowerOfTwoBound(n, 1 << (4 * m + 1))
    for d in directions(max_norm):
        dec = cylinders_in_direction(o, d)
        for cyl in sorted(dec.cylinders, key=lambda c: (-c.area, c.length_squared)):
            if cyl.area * m >= n and bound.ge(cyl.length_squared):
                return d, cyl
    raise NoWitnessError(f"no Vorobets cylinder with |dx|,|dy| <= {max_norm}; increase max_norm")


# --------------------------------------------------------------------------
# Height profile

@dataclass(frozen=True)
class HeightProfile:
    heights_squared: dict  # Direction -> tuple[Fraction, ...]

    @property
    def flagged(self) -> list[Direction]:
        """Directions with a cylinder taller than 1."""
        return [d for d, hs in self.heights_squared.items() if any(x > 1 for x in hs)]


def direction_height_profile(o: Origami, max_norm: int) -> HeightProfile:
    """Squared geometric cylinder heights ``height^2 / (dx^2 + dy^2)`` per direction.

    Diagnostic only: heights at most 1 are expected on square-count minimal
    surfaces, which this package does not recognize.
    """
    out = {}
    for d in directions(max_norm):
        dec = cylinders_in_direction(o, d)
        out[d] = tuple(sorted(c.height_squared for c in dec.cylinders))
    return HeightProfile(out)
