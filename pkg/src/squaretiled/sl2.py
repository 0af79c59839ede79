"""The SL(2,Z) action on origamis, orbits, and direction reduction.

Generator conventions (left action, matrices act on column vectors):

* ``T = [[1, 1], [0, 1]]`` sends ``(h, v)`` to ``(h, v h^-1)``;
* ``S = [[0, -1], [1, 0]]`` sends ``(h, v)`` to ``(v^-1, h)``.

Two checks pin these down: ``T`` leaves the horizontal cylinders untouched and
``S`` carries the vertical cylinders of ``o`` to the horizontal ones of
``S o``. Both are exercised in the test suite.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Sequence

from .origami import Origami, StratumSignature, _canonical_key, _stratum, from_key
from .perm import inverse_array


@dataclass(frozen=True)
class Matrix2Z:
    a: int
    b: int
    c: int
    d: int

    def __post_init__(self):
        if self.a * self.d - self.b * self.c != 1:
            raise ValueError(f"matrix {self} is not in SL(2,Z) (determinant {self.a * self.d - self.b * self.c})")

    def __matmul__(self, other: Matrix2Z) -> Matrix2Z:
        return Matrix2Z(
            self.a * other.a + self.b * other.c,
            self.a * other.b + self.b * other.d,
            self.c * other.a + self.d * other.c,
            self.c * other.b + self.d * other.d,
        )

    def inverse(self) -> Matrix2Z:
        return Matrix2Z(self.d, -self.b, -self.c, self.a)

    def apply(self, x: int, y: int) -> tuple[int, int]:
        return self.a * x + self.b * y, self.c * x + self.d * y

    def __str__(self):
        return f"[[{self.a},{self.b}],[{self.c},{self.d}]]"


IDENTITY = Matrix2Z(1, 0, 0, 1)
T = Matrix2Z(1, 1, 0, 1)
S = Matrix2Z(0, -1, 1, 0)

# word letters: upper case = generator, lower case = its inverse
GENERATORS = {"T": T, "t": T.inverse(), "S": S, "s": S.inverse()}


@dataclass(frozen=True)
class Direction:
    """A rational unoriented direction, normalized to ``dx > 0`` or ``(0, 1)``."""

    dx: int
    dy: int

    def __post_init__(self):
        if (self.dx, self.dy) == (0, 0):
            raise ValueError("the zero vector is not a direction")
        if math.gcd(self.dx, self.dy) != 1:
            raise ValueError(f"direction ({self.dx},{self.dy}) is not primitive")
        if not (self.dx > 0 or (self.dx == 0 and self.dy == 1)):
            raise ValueError(f"direction ({self.dx},{self.dy}) is not normalized")

    @classmethod
    def of(cls, dx: int, dy: int) -> Direction:
        """Normalize an arbitrary nonzero integer vector."""
        g = math.gcd(dx, dy)
        if g == 0:
            raise ValueError("the zero vector is not a direction")
        dx, dy = dx // g, dy // g
        if dx < 0 or (dx == 0 and dy < 0):
            dx, dy = -dx, -dy
        return cls(dx, dy)

    @property
    def norm2(self) -> int:
        return self.dx * self.dx + self.dy * self.dy

    def __str__(self):
        return f"({self.dx},{self.dy})"


HORIZONTAL = Direction(1, 0)
VERTICAL = Direction(0, 1)


def directions(max_norm: int) -> list[Direction]:
    """All normalized directions with ``|dx|, |dy| <= max_norm``.

    Horizontal and vertical come first, then the rest by size.
    """
    out = {Direction.of(dx, dy)
           for dx in range(0, max_norm + 1)
           for dy in range(-max_norm, max_norm + 1)
           if (dx, dy) != (0, 0)}
    rest = sorted(out - {HORIZONTAL, VERTICAL}, key=lambda d: (max(abs(d.dx), abs(d.dy)), d.dx, d.dy))
    return [HORIZONTAL, VERTICAL] + rest


# --------------------------------------------------------------------------
# Generators on 0-indexed arrays

def _T(h, v):
    hi = inverse_array(h)
    return h, tuple(v[hi[i]] for i in range(len(h)))


def _T_inv(h, v):
    return h, tuple(v[h[i]] for i in range(len(h)))


def _S(h, v):
    return inverse_array(v), tuple(h)


def _S_inv(h, v):
    return tuple(v), inverse_array(h)


_ACTIONS = {"T": _T, "t": _T_inv, "S": _S, "s": _S_inv}


def apply_T(o: Origami) -> Origami:
    return Origami.from_arrays(*_T(o.h.array, o.v.array), check=False)


def apply_T_inv(o: Origami) -> Origami:
    return Origami.from_arrays(*_T_inv(o.h.array, o.v.array), check=False)


def apply_S(o: Origami) -> Origami:
    return Origami.from_arrays(*_S(o.h.array, o.v.array), check=False)


def apply_S_inv(o: Origami) -> Origami:
    return Origami.from_arrays(*_S_inv(o.h.array, o.v.array), check=False)


def word_matrix(word: str) -> Matrix2Z:
    m = IDENTITY
    for letter in word:
        m = m @ GENERATORS[letter]
    return m


def apply_word(o: Origami, word: str) -> Origami:
    """Act by the matrix ``word_matrix(word)``; the rightmost letter acts first."""
    h, v = o.h.array, o.v.array
    for letter in reversed(word):
        h, v = _ACTIONS[letter](h, v)
    return Origami.from_arrays(h, v, check=False)


def factor(A: Matrix2Z, rounding: str = "floor") -> str:
    """Write ``A`` as a word in ``T, S`` and their inverses.

    Euclid's algorithm on the first column: shear ``a`` modulo ``c`` with a
    power of ``T``, swap with ``S^-1``, repeat until ``c = 0``. ``rounding``
    picks the quotient (``"floor"`` or ``"nearest"``); both give valid words,
    which the tests use as two independent factorizations.
    """
    if rounding not in ("floor", "nearest"):
        raise ValueError(f"unknown rounding {rounding!r}")
    a, b, c, d = A.a, A.b, A.c, A.d
    # left factors applied so far: L_k ... L_1 A = M
    applied: list[str] = []
    while c != 0:
        if rounding == "floor":
            q = a // c
        else:
            q = round(a / c) if abs(a) < 2**52 else a // c
        if q:
            # T^-q M
            a, b = a - q * c, b - q * d
            applied.extend(["t" if q > 0 else "T"] * abs(q))
        # S^-1 M = [[c, d], [-a, -b]]
        a, b, c, d = c, d, -a, -b
        applied.append("s")
    # M = [[a, b], [0, a]] with a = +-1
    if a == 1:
        tail = ("T" if b > 0 else "t") * abs(b)
    else:
        # -T^-b = S^2 T^-b
        tail = "SS" + ("t" if b > 0 else "T") * abs(b)
    inverse = {"T": "t", "t": "T", "S": "s", "s": "S"}
    # A = L_1^-1 ... L_k^-1 M
    word = "".join(inverse[x] for x in applied) + tail
    assert word_matrix(word) == A, (A, word)
    return word


def apply_matrix(o: Origami, A: Matrix2Z) -> Origami:
    """The origami ``A . o`` for ``A`` in SL(2,Z)."""
    if not isinstance(A, Matrix2Z):
        A = Matrix2Z(*A)
    return apply_word(o, factor(A))


def direction_matrix(d: Direction) -> Matrix2Z:
    """A matrix in SL(2,Z) sending ``(dx, dy)`` to ``(1, 0)``.

    Built from ``x dx + y dy = 1`` as ``[[x, y], [-dy, dx]]``. Solutions are
    pinned by ``-dx < y <= 0`` (and ``x = 0`` for the vertical direction); any
    other choice differs by a power of ``T`` on the left.
    """
    dx, dy = d.dx, d.dy
    if dx == 0:
        return Matrix2Z(0, 1, -1, 0)
    # y * dy = 1 (mod dx), choose y in (-dx, 0]
    y = pow(dy, -1, dx) - dx if dx > 1 else 0
    x = (1 - y * dy) // dx
    A = Matrix2Z(x, y, -dy, dx)
    assert A.apply(dx, dy) == (1, 0)
    return A


def reduce_to_horizontal(o: Origami, d: Direction) -> Origami:
    """An orbit member whose horizontal direction is direction ``d`` of ``o``."""
    if d == VERTICAL:
        return apply_S(o)
    return apply_matrix(o, direction_matrix(d))


def disk_param(r: float) -> float:
    """Teichmüller time ``log((1 + r) / (1 - r))`` of the disk point at radius ``r``."""
    if not 0 <= r < 1:
        raise ValueError(f"radius must lie in [0, 1), got {r}")
    return math.log1p(r) - math.log1p(-r)


# --------------------------------------------------------------------------
# Orbits

@dataclass(frozen=True)
class OrbitRecord:
    members: frozenset  # canonical Origami
    stratum: StratumSignature
    balanced: bool | None = None
    corners: bool | None = None
    contains_normal: bool | None = None

    @property
    def size(self) -> int:
        return len(self.members)

    @property
    def n(self) -> int:
        return next(iter(self.members)).n

    @property
    def representative(self) -> Origami:
        """The member with the smallest canonical key."""
        return min(self.members, key=lambda o: o.key)


def orbit_keys(h: Sequence[int], v: Sequence[int]) -> list[tuple[int, ...]]:
    """Canonical keys of the SL(2,Z)-orbit, in breadth-first discovery order."""
    n = len(h)
    start = _canonical_key(h, v)
    seen = {start}
    order = [start]
    for key in order:
        kh, kv = key[:n], key[n:]
        for act in (_T, _T_inv, _S):
            nh, nv = act(kh, kv)
            c = _canonical_key(nh, nv)
            if c not in seen:
                seen.add(c)
                order.append(c)
    return order


def orbit(o: Origami, flags: bool = True) -> OrbitRecord:
    """Closure of ``canonical_form(o)`` under ``T``, ``T^-1`` and ``S``.

    With ``flags=True`` the balanced / corners / normal flags are filled in.
    """
    keys = orbit_keys(o.h.array, o.v.array)
    record = OrbitRecord(frozenset(from_key(k) for k in keys), _stratum(o.h.array, o.v.array))
    if flags:
        from .properties import orbit_flags
        balanced, corners, normal = orbit_flags(keys)
        record = OrbitRecord(record.members, record.stratum, balanced, corners, normal)
    return record


def canonical_keys(origamis: Iterable[Origami]) -> set[tuple[int, ...]]:
    return {_canonical_key(o.h.array, o.v.array) for o in origamis}
