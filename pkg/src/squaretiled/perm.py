"""Permutations of ``{1, ..., n}``.

Externally everything is 1-indexed (cycle notation, file formats, images).
Internally a permutation is a tuple of 0-indexed images, exposed as
``Permutation.array`` for the hot loops in the rest of the package.
"""

from __future__ import annotations

from typing import Iterable, Sequence


def inverse_array(p: Sequence[int]) -> tuple[int, ...]:
    inv = [0] * len(p)
    for i, j in enumerate(p):
        inv[j] = i
    return tuple(inv)


def compose_arrays(p: Sequence[int], q: Sequence[int]) -> tuple[int, ...]:
    """Return ``p o q`` (apply ``q`` first) on 0-indexed arrays."""
    return tuple(p[j] for j in q)


def is_bijection(p: Sequence[int]) -> bool:
    n = len(p)
    seen = [False] * n
    for j in p:
        if not 0 <= j < n or seen[j]:
            return False
        seen[j] = True
    return True


def cycles_of_array(p: Sequence[int]) -> list[list[int]]:
    """Cycles of a 0-indexed array, each starting at its smallest element."""
    n = len(p)
    seen = [False] * n
    out = []
    for i in range(n):
        if seen[i]:
            continue
        c = []
        j = i
        while not seen[j]:
            seen[j] = True
            c.append(j)
            j = p[j]
        out.append(c)
    return out


class Permutation:
    """A bijection of ``{1, ..., n}``.

    Composition follows function notation: ``(p * q)(i) == p(q(i))``.

    >>> p = Permutation.from_cycles([(1, 2)], 3)
    >>> p.images
    (2, 1, 3)
    >>> str(p * Permutation([2, 3, 1]))
    '(1)(2 3)'
    """

    __slots__ = ("_a",)

    def __init__(self, images: Iterable[int]):
        a = tuple(int(x) - 1 for x in images)
        if not is_bijection(a):
            raise ValueError(f"not a permutation of 1..{len(a)}: {[x + 1 for x in a]}")
        self._a = a

    @classmethod
    def from_array(cls, array: Sequence[int], check: bool = True) -> Permutation:
        """Build from 0-indexed images."""
        p = cls.__new__(cls)
        a = tuple(array)
        if check and not is_bijection(a):
            raise ValueError(f"not a permutation of 0..{len(a) - 1}: {list(a)}")
        p._a = a
        return p

    @classmethod
    def identity(cls, n: int) -> Permutation:
        return cls.from_array(range(n), check=False)

    @classmethod
    def from_cycles(cls, cycles: Iterable[Sequence[int]], n: int | None = None) -> Permutation:
        """Build from disjoint 1-indexed cycles; omitted points are fixed."""
        cycles = [tuple(c) for c in cycles]
        largest = max((x for c in cycles for x in c), default=0)
        if n is None:
            n = largest
        if largest > n:
            raise ValueError(f"cycle entry {largest} exceeds n={n}")
        a = list(range(n))
        seen = set()
        for c in cycles:
            for x in c:
                if x < 1:
                    raise ValueError(f"cycle entries must be positive, got {x}")
                if x in seen:
                    raise ValueError(f"{x} appears twice in cycle notation")
                seen.add(x)
            for i, x in enumerate(c):
                a[x - 1] = c[(i + 1) % len(c)] - 1
        return cls.from_array(a, check=False)

    @property
    def array(self) -> tuple[int, ...]:
        return self._a

    @property
    def n(self) -> int:
        return len(self._a)

    @property
    def images(self) -> tuple[int, ...]:
        return tuple(x + 1 for x in self._a)

    def __call__(self, i: int) -> int:
        return self._a[i - 1] + 1

    def __mul__(self, other: Permutation) -> Permutation:
        if other.n != self.n:
            raise ValueError("cannot compose permutations of different sizes")
        return Permutation.from_array(compose_arrays(self._a, other._a), check=False)

    def inverse(self) -> Permutation:
        return Permutation.from_array(inverse_array(self._a), check=False)

    def __pow__(self, k: int) -> Permutation:
        base = self if k >= 0 else self.inverse()
        result = Permutation.identity(self.n)
        for _ in range(abs(k)):
            result = result * base
        return result

    def cycles(self, singletons: bool = True) -> list[tuple[int, ...]]:
        cs = [tuple(x + 1 for x in c) for c in cycles_of_array(self._a)]
        return cs if singletons else [c for c in cs if len(c) > 1]

    def cycle_type(self) -> tuple[int, ...]:
        return tuple(sorted((len(c) for c in cycles_of_array(self._a)), reverse=True))

    def fixes(self, i: int) -> bool:
        return self._a[i - 1] == i - 1

    def is_identity(self) -> bool:
        return all(i == j for i, j in enumerate(self._a))

    def conjugate(self, pi: Permutation) -> Permutation:
        """Relabel by ``pi``: returns ``pi * self * pi^-1``."""
        return pi * self * pi.inverse()

    def __eq__(self, other):
        if not isinstance(other, Permutation):
            return NotImplemented
        return self._a == other._a

    def __hash__(self):
        return hash(self._a)

    def __len__(self):
        return len(self._a)

    def __str__(self):
        return "".join("(" + " ".join(map(str, c)) + ")" for c in self.cycles())

    def __repr__(self):
        return f"Permutation({list(self.images)})"
