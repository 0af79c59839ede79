"""Cylinders by direct simulation of the straight-line flow.

This is a test oracle and deliberately shares nothing with the SL(2,Z)
reduction in :mod:`squaretiled.cylinders`: it never applies a matrix, and it
decides regularity of a corner from the gluings around it rather than from the
vertex permutation.

For a direction ``(a, b)`` with ``b > 0`` every horizontal edge is cut into
``b`` open intervals of length ``1/b``. Flowing up one row shifts positions by
``a/b``, so the first-return map permutes these intervals (tracked through
their midpoints). Cycles of that permutation are closed leaves; two neighbouring
intervals lie in the same cylinder iff the leaf through the point separating
them meets no singular corner.
"""

from __future__ import annotations

import math
from fractions import Fraction

from .cylinders import Cylinder, CylinderDecomposition
from .origami import Origami
from .perm import cycles_of_array, inverse_array
from .sl2 import Direction


class _Flow:
    def __init__(self, h, v, a: int, b: int):
        self.h, self.v = h, v
        self.hi, self.vi = inverse_array(h), inverse_array(v)
        self.slope = Fraction(a, b)

    def corner_regular(self, s: int) -> bool:
        """Is the bottom-left corner of square ``s`` a regular point?

        It is the top-right corner of ``t = h^-1 v^-1 s``; going right then up
        from ``t`` reaches ``s``, and the corner is regular iff up then right
        does too.
        """
        t = self.hi[self.vi[s]]
        return self.h[self.v[t]] == s

    def step(self, s: int, x: Fraction):
        """Flow from ``(s, x)`` on a bottom edge up to the next horizontal edge.

        Returns ``(s', x', corner)`` where ``corner`` is None if the segment
        ends in the interior of an edge, else the square whose bottom-left
        corner was hit.
        """
        r = self.slope
        h, hi, v = self.h, self.hi, self.v
        if r < 0 and x == 0:
            s, x = hi[s], Fraction(1)
        end = x + r
        if r > 0:
            crossings = math.ceil(end) - math.floor(x) - 1
            for _ in range(crossings):
                s = h[s]
            u = end - crossings
            if u == 1:
                corner = v[h[s]]
                return corner, Fraction(0), corner
        elif r < 0:
            crossings = math.ceil(x) - math.floor(end) - 1
            for _ in range(crossings):
                s = hi[s]
            u = end + crossings
            if u == 0:
                corner = v[s]
                return corner, Fraction(0), corner
        else:
            u = x
            if u == 0:
                corner = v[s]
                return corner, Fraction(0), corner
        return v[s], u, None

    def leaf_is_regular(self, s: int, x: Fraction) -> bool:
        """Follow the leaf through ``(s, x)`` until it closes or meets a cone point."""
        if x == 0 and not self.corner_regular(s):
            return False
        start = (s, x)
        state = start
        for _ in range(4 * len(self.h) * (self.slope.denominator + 1) + 4):
            ns, nx, corner = self.step(*state)
            if corner is not None and not self.corner_regular(corner):
                return False
            state = (ns, nx)
            if state == start:
                return True
        raise AssertionError("leaf did not close; flow bookkeeping is inconsistent")


def trace_direction_oracle(o: Origami, d: Direction) -> CylinderDecomposition:
    """Cylinders of ``o`` in direction ``d`` found by tracing the flow exactly."""
    h, v = o.h.array, o.v.array
    a, b = d.dx, d.dy
    if b == 0:
        # reflect in the diagonal: rows become columns, cylinder shapes are unchanged
        h, v = v, h
        a, b = 0, 1
    elif b < 0:
        a, b = -a, -b
    flow = _Flow(h, v, a, b)
    n = len(h)
    hi = flow.hi

    def index(s, j):
        return s * b + j

    # first-return map on intervals (s, j) = (j/b, (j+1)/b) of the bottom edge of s
    ret = [0] * (n * b)
    for s in range(n):
        for j in range(b):
            mid = Fraction(2 * j + 1, 2 * b)
            ns, nx, corner = flow.step(s, mid)
            assert corner is None
            ret[index(s, j)] = index(ns, math.floor(nx * b))
    leaves = cycles_of_array(ret)
    leaf_of = [0] * (n * b)
    for k, c in enumerate(leaves):
        for i in c:
            leaf_of[i] = k

    parent = list(range(len(leaves)))

    def find(k):
        while parent[k] != k:
            parent[k] = parent[parent[k]]
            k = parent[k]
        return k

    for s in range(n):
        for j in range(b):
            left = index(s, j - 1) if j else index(hi[s], b - 1)
            if flow.leaf_is_regular(s, Fraction(j, b)):
                parent[find(leaf_of[index(s, j)])] = find(leaf_of[left])

    groups: dict[int, list[int]] = {}
    for k in range(len(leaves)):
        groups.setdefault(find(k), []).append(k)
    cylinders = []
    for members in groups.values():
        crossings = {len(leaves[k]) for k in members}
        if len(crossings) != 1:
            raise AssertionError(f"closed leaves of one cylinder have different lengths {crossings}")
        k = crossings.pop()
        intervals = sum(len(leaves[m]) for m in members)
        width, rem_w = divmod(k, b)
        area, rem_a = divmod(intervals, b)
        assert rem_w == 0 and rem_a == 0 and area % width == 0
        squares = frozenset(i // b + 1 for m in members for i in leaves[m])
        cylinders.append((width, area // width, squares))
    cyls = tuple(_OracleCylinder(sq, w, ht, d.norm2) for w, ht, sq in sorted(cylinders, key=lambda t: (t[0], t[1])))
    return CylinderDecomposition(d, cyls, o)


class _OracleCylinder(Cylinder):
    """A cylinder whose ``squares`` are the squares of ``o`` it crosses.

    Those can number more than the area, so the size check is skipped.
    """

    def __post_init__(self):
        pass
