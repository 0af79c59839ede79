"""Cylinder decompositions, saddle connections and moduli along a ray.

Every rational direction of a square-tiled surface is completely periodic.
Direction ``d`` is handled by moving to the orbit member whose horizontal
direction is ``d`` and reading off its rows; widths and heights are counted in
units of the primitive vector ``(dx, dy)``. Geometric quantities are kept
exact as ``(integer, dx^2 + dy^2)`` pairs: the circumference is
``width * sqrt(norm2)`` and the height ``height / sqrt(norm2)``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .origami import Origami, _vertex_array, genus
from .perm import cycles_of_array
from .sl2 import HORIZONTAL, Direction, directions, reduce_to_horizontal


@dataclass(frozen=True)
class Cylinder:
    squares: frozenset[int]
    width: int
    height: int
    norm2: int = 1

    def __post_init__(self):
        if len(self.squares) != self.width * self.height:
            raise AssertionError(f"cylinder has {len(self.squares)} squares but width*height = {self.width * self.height}")

    @property
    def area(self) -> int:
        return self.width * self.height

    @property
    def length_squared(self) -> int:
        return self.width * self.width * self.norm2

    @property
    def height_squared(self) -> Fraction:
        return Fraction(self.height * self.height, self.norm2)

    @property
    def geometric_length(self) -> float:
        return self.width * math.sqrt(self.norm2)

    @property
    def geometric_height(self) -> float:
        return self.height / math.sqrt(self.norm2)

    @property
    def modulus(self) -> Fraction:
        """Height over circumference; the square roots cancel."""
        return Fraction(self.height, self.width * self.norm2)

    def shape(self) -> tuple[int, int, int]:
        return self.width, self.height, self.norm2


@dataclass(frozen=True)
class CylinderDecomposition:
    direction: Direction
    cylinders: tuple[Cylinder, ...]
    reduced_origami: Origami

    def shapes(self) -> list[tuple[int, int, int]]:
        """Sorted ``(width, height, norm2)`` triples."""
        return sorted(c.shape() for c in self.cylinders)

    @property
    def heights(self) -> list[int]:
        return [c.height for c in self.cylinders]

    def has_equal_heights(self) -> bool:
        return len(set(self.heights)) <= 1


def _row_cylinders(h: Sequence[int], v: Sequence[int]) -> list[tuple[list[int], int, int]]:
    """Horizontal cylinders as ``(squares, width, height)`` on 0-indexed arrays."""
    n = len(h)
    sigma = _vertex_array(h, v)
    rows = cycles_of_array(h)
    row_of = [0] * n
    for r, c in enumerate(rows):
        for x in c:
            row_of[x] = r
    parent = list(range(len(rows)))

    def find(r):
        while parent[r] != r:
            parent[r] = parent[parent[r]]
            r = parent[r]
        return r

    for r, c in enumerate(rows):
        # the circle on top of row c runs through the bottom-left corners of v(c)
        if all(sigma[v[x]] == v[x] for x in c):
            above = row_of[v[c[0]]]
            if len(rows[above]) != len(c):
                raise AssertionError(f"regular circle joins rows of lengths {len(c)} and {len(rows[above])}")
            parent[find(r)] = find(above)

    groups: dict[int, list[int]] = {}
    for r in range(len(rows)):
        groups.setdefault(find(r), []).append(r)
    out = []
    for members in groups.values():
        squares = sorted(x for r in members for x in rows[r])
        out.append((squares, len(rows[members[0]]), len(members)))
    out.sort(key=lambda t: t[0][0])
    return out


def _row_heights(h: Sequence[int], v: Sequence[int]) -> list[int]:
    return [height for _, _, height in _row_cylinders(h, v)]


def horizontal_cylinders(o: Origami) -> CylinderDecomposition:
    """Maximal horizontal cylinders of ``o``.

    Each ``h``-cycle is a row of squares; rows separated by a circle with only
    regular corners belong to the same cylinder.
    """
    cyls = tuple(Cylinder(frozenset(x + 1 for x in sq), w, ht)
                 for sq, w, ht in _row_cylinders(o.h.array, o.v.array))
    return CylinderDecomposition(HORIZONTAL, cyls, o)


def cylinders_in_direction(o: Origami, d: Direction) -> CylinderDecomposition:
    """Cylinders of ``o`` in direction ``d``, measured in the metric of ``o``.

    ``squares`` refer to the labels of ``reduced_origami``.
    """
    if d == HORIZONTAL:
        return horizontal_cylinders(o)
    reduced = reduce_to_horizontal(o, d)
    cyls = tuple(Cylinder(c.squares, c.width, c.height, d.norm2) for c in horizontal_cylinders(reduced).cylinders)
    return CylinderDecomposition(d, cyls, reduced)


# --------------------------------------------------------------------------
# Saddle connections

class NoSingularityError(ValueError):
    """The surface is a torus cover: no cone points, no saddle connections."""


def _horizontal_saddle_lengths(h: Sequence[int], v: Sequence[int]) -> list[int]:
    sigma = _vertex_array(h, v)
    lengths = []
    for row in cycles_of_array(h):
        # the circle at the bottom of this row passes through the bottom-left corners of its squares
        marks = [i for i, x in enumerate(row) if sigma[x] != x]
        if not marks:
            continue
        w = len(row)
        for a, b in zip(marks, marks[1:] + [marks[0] + w]):
            lengths.append(b - a)
    return lengths


def horizontal_saddle_connections(o: Origami) -> list[int]:
    """Lengths of the horizontal saddle connections, in unit squares."""
    lengths = _horizontal_saddle_lengths(o.h.array, o.v.array)
    if not lengths:
        raise NoSingularityError("surface has no singularities (genus 1)")
    return lengths


def saddle_ratio(o: Origami, max_norm: int) -> Fraction:
    """Largest ratio of two parallel saddle connection lengths seen in the given directions.

    A lower estimate for the Smillie-Weiss constant of the surface.
    """
    if genus(o) < 2:
        raise NoSingularityError("surface has no singularities (genus 1)")
    best = Fraction(1)
    for d in directions(max_norm):
        reduced = o if d == HORIZONTAL else reduce_to_horizontal(o, d)
        lengths = horizontal_saddle_connections(reduced)
        best = max(best, Fraction(max(lengths), min(lengths)))
    return best


# --------------------------------------------------------------------------
# Moduli along a Teichmüller ray

def ray_modulus(mod0: float, t: float) -> tuple[float, float]:
    """Modulus ``e^{2t} mod0`` of a flat cylinder at time ``t`` and the bound ``1/modulus``.

    The reciprocal bounds the extremal length of the core curve from above.
    """
    if not mod0 > 0:
        raise ValueError(f"modulus must be positive, got {mod0}")
    modulus = math.exp(2 * t) * mod0
    return modulus, 1 / modulus


def ray_modulus_exact(mod0: Fraction, stretch: Fraction) -> tuple[Fraction, Fraction]:
    """Rational version of :func:`ray_modulus` with ``stretch = e^{2t}`` given exactly."""
    mod0 = Fraction(mod0)
    stretch = Fraction(stretch)
    if mod0 <= 0 or stretch <= 0:
        raise ValueError("modulus and stretch factor must be positive")
    modulus = stretch * mod0
    return modulus, 1 / modulus
