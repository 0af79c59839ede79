"""Rank-2 integer lattices and their Hermite normal form."""

from __future__ import annotations

from typing import Iterable


def xgcd(a: int, b: int) -> tuple[int, int, int]:
    """Return ``(g, x, y)`` with ``g = gcd(a, b) >= 0`` and ``a*x + b*y = g``."""
    x0, y0, x1, y1 = 1, 0, 0, 1
    while b:
        q, r = divmod(a, b)
        a, b = b, r
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    if a < 0:
        return -a, -x0, -y0
    return a, x0, y0


def hermite_normal_form(vectors: Iterable[tuple[int, int]]) -> tuple[tuple[int, int], tuple[int, int]]:
    """Row-style HNF ``((a, b), (0, d))`` of the lattice spanned by ``vectors``.

    The lattice must have rank 2. The result satisfies ``a > 0``, ``d > 0``
    and ``0 <= b < d``; it depends only on the lattice, not on the generators.
    """
    pivot = (0, 0)
    d = 0
    for x, y in vectors:
        # Merge (x, y) into the pivot row by a unimodular 2x2 step on the first column.
        a, b = pivot
        if x == 0:
            d = _gcd(d, y)
            continue
        g, s, t = xgcd(a, x)
        # (a, b), (x, y) -> (g, s*b + t*y), (0, (a*y - x*b) / g)
        pivot = (g, s * b + t * y)
        d = _gcd(d, (a * y - x * b) // g)
    a, b = pivot
    if a == 0 or d == 0:
        raise ValueError("vectors do not span a rank-2 lattice")
    return (a, b % d), (0, d)


def _gcd(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return abs(a)


def lattice_contains(hnf: tuple[tuple[int, int], tuple[int, int]], vec: tuple[int, int]) -> bool:
    (a, b), (_, d) = hnf
    x, y = vec
    if x % a:
        return False
    return (y - (x // a) * b) % d == 0
