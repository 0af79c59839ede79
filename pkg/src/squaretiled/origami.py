"""Origamis (square-tiled translation surfaces) and their intrinsic invariants.

An origami on ``n`` unit squares is a pair of permutations ``(h, v)``:
``h(i)`` is the square glued to the right edge of square ``i`` and ``v(i)``
the square glued to its top edge. The pair must generate a transitive group.

Most functions here also have a private variant working on 0-indexed tuples;
those are what the orbit and search code call in their inner loops.
"""

from __future__ import annotations

import re
from collections import deque
from dataclasses import dataclass
from typing import Sequence

from .lattice import hermite_normal_form
from .perm import Permutation, cycles_of_array, inverse_array, is_bijection


class OrigamiError(ValueError):
    """Base class for invalid origami input."""


class OrigamiSyntaxError(OrigamiError):
    pass


class NotBijectiveError(OrigamiError):
    pass


class IntransitiveError(OrigamiError):
    pass


def _is_transitive(h: Sequence[int], v: Sequence[int]) -> bool:
    n = len(h)
    seen = [False] * n
    seen[0] = True
    stack = [0]
    count = 1
    while stack:
        x = stack.pop()
        for y in (h[x], v[x]):
            if not seen[y]:
                seen[y] = True
                count += 1
                stack.append(y)
    return count == n


@dataclass(frozen=True)
class Origami:
    h: Permutation
    v: Permutation

    def __post_init__(self):
        if self.h.n != self.v.n:
            raise OrigamiError(f"h acts on {self.h.n} squares but v on {self.v.n}")
        if self.h.n == 0:
            raise OrigamiError("an origami needs at least one square")
        if not _is_transitive(self.h.array, self.v.array):
            raise IntransitiveError("<h, v> is not transitive: the surface is disconnected")

    @classmethod
    def from_arrays(cls, h: Sequence[int], v: Sequence[int], check: bool = True) -> Origami:
        """Build from 0-indexed image arrays."""
        if check:
            for name, p in (("h", h), ("v", v)):
                if not is_bijection(p):
                    raise NotBijectiveError(f"{name} is not a bijection")
            return cls(Permutation.from_array(h, False), Permutation.from_array(v, False))
        o = object.__new__(cls)
        object.__setattr__(o, "h", Permutation.from_array(h, False))
        object.__setattr__(o, "v", Permutation.from_array(v, False))
        return o

    @classmethod
    def from_cycles(cls, h, v, n: int | None = None) -> Origami:
        if n is None:
            n = max((x for c in list(h) + list(v) for x in c), default=1)
        return cls(Permutation.from_cycles(h, n), Permutation.from_cycles(v, n))

    @property
    def n(self) -> int:
        return self.h.n

    @property
    def key(self) -> tuple[int, ...]:
        """0-indexed ``h`` images followed by ``v`` images."""
        return self.h.array + self.v.array

    def relabel(self, pi: Permutation) -> Origami:
        """The same surface with square ``i`` renamed ``pi(i)``."""
        return Origami(self.h.conjugate(pi), self.v.conjugate(pi))

    def __str__(self):
        return format_origami(self).rstrip("\n")


def from_key(key: Sequence[int]) -> Origami:
    n = len(key) // 2
    return Origami.from_arrays(key[:n], key[n:], check=False)


# --------------------------------------------------------------------------
# Text format

_LINE = re.compile(r"^\s*([nhv])\s*:\s*(.*?)\s*$")
_CYCLES = re.compile(r"^(\(\s*(\d+(\s+|\s*,\s*))*\d*\s*\)\s*)+$")


def _parse_spec(spec: str, lineno: int, name: str):
    """Return ('images', list) or ('cycles', list of tuples)."""
    if not spec:
        raise OrigamiSyntaxError(f"line {lineno}: empty permutation for {name}")
    if spec.startswith("("):
        if not _CYCLES.match(spec):
            raise OrigamiSyntaxError(f"line {lineno}: malformed cycle notation for {name}: {spec!r}")
        cycles = []
        for body in re.findall(r"\(([^)]*)\)", spec):
            entries = [int(x) for x in re.split(r"[\s,]+", body.strip()) if x]
            if entries:
                cycles.append(tuple(entries))
        return "cycles", cycles
    tokens = spec.split()
    if not all(t.isdigit() for t in tokens):
        raise OrigamiSyntaxError(f"line {lineno}: expected integers or cycles for {name}: {spec!r}")
    return "images", [int(t) for t in tokens]


def parse_origami(text: str) -> Origami:
    """Parse the two-line origami format.

    ``h: <spec>`` and ``v: <spec>``, where a spec is either one-line image
    notation (``2 1 3``) or disjoint cycles (``(1 2)(3)``, fixed points may be
    omitted). An optional ``n: <N>`` line fixes the number of squares; otherwise
    it is the largest integer mentioned. Blank lines and ``#`` comments are
    ignored.

    >>> o = parse_origami("h: (1 2)(3)\\nv: (1 3)")
    >>> o.n, str(o.h), str(o.v)
    (3, '(1 2)(3)', '(1 3)(2)')
    """
    fields: dict[str, tuple[int, str]] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0]
        if not line.strip():
            continue
        m = _LINE.match(line)
        if not m:
            raise OrigamiSyntaxError(f"line {lineno}: expected 'h: ...', 'v: ...' or 'n: ...', got {raw.strip()!r}")
        name, spec = m.group(1), m.group(2)
        if name in fields:
            raise OrigamiSyntaxError(f"line {lineno}: duplicate '{name}:' line")
        fields[name] = (lineno, spec)
    for name in "hv":
        if name not in fields:
            raise OrigamiSyntaxError(f"missing '{name}:' line")

    n = None
    if "n" in fields:
        lineno, spec = fields["n"]
        if not spec.isdigit() or int(spec) < 1:
            raise OrigamiSyntaxError(f"line {lineno}: 'n:' must be a positive integer, got {spec!r}")
        n = int(spec)

    parsed = {name: (fields[name][0],) + _parse_spec(fields[name][1], fields[name][0], name) for name in "hv"}
    largest = max(max(vals, default=0) if kind == "images" else max((x for c in vals for x in c), default=0)
                  for _, kind, vals in parsed.values())
    if n is None:
        lengths = {len(vals) for _, kind, vals in parsed.values() if kind == "images"}
        n = max([largest, *lengths]) if largest else 1

    perms = {}
    for name, (lineno, kind, vals) in parsed.items():
        if kind == "images":
            if len(vals) != n:
                raise OrigamiSyntaxError(f"line {lineno}: {name} lists {len(vals)} images but n = {n}")
            if not is_bijection([x - 1 for x in vals]):
                raise NotBijectiveError(f"line {lineno}: {name} = {' '.join(map(str, vals))} is not a bijection of 1..{n}")
            perms[name] = Permutation(vals)
        else:
            flat = [x for c in vals for x in c]
            if any(x < 1 or x > n for x in flat):
                raise NotBijectiveError(f"line {lineno}: {name} mentions a square outside 1..{n}")
            if len(set(flat)) != len(flat):
                raise NotBijectiveError(f"line {lineno}: cycles of {name} are not disjoint")
            perms[name] = Permutation.from_cycles(vals, n)
    try:
        return Origami(perms["h"], perms["v"])
    except IntransitiveError as e:
        raise IntransitiveError(f"line {fields['v'][0]}: {e}") from None


def format_origami(o: Origami, style: str = "cycles") -> str:
    """Serialize to the text format; singleton cycles are kept so ``n`` is implied."""
    if style == "cycles":
        return f"h: {o.h}\nv: {o.v}\n"
    if style == "images":
        return f"h: {' '.join(map(str, o.h.images))}\nv: {' '.join(map(str, o.v.images))}\n"
    raise ValueError(f"unknown style {style!r}")


# --------------------------------------------------------------------------
# Corners, stratum, genus

@dataclass(frozen=True)
class StratumSignature:
    zero_orders: tuple[int, ...]
    genus: int
    m_q: int


def _vertex_array(h: Sequence[int], v: Sequence[int]) -> tuple[int, ...]:
    hi = inverse_array(h)
    vi = inverse_array(v)
    return tuple(v[h[vi[hi[i]]]] for i in range(len(h)))


def vertex_permutation(o: Origami) -> Permutation:
    """``sigma = v h v^-1 h^-1``; its cycles are the vertices, read at bottom-left corners.

    A vertex whose cycle has length ``k`` has cone angle ``2 pi k``; the corner
    of square ``i`` is regular iff ``sigma`` fixes ``i``.
    """
    return Permutation.from_array(_vertex_array(o.h.array, o.v.array), check=False)


def _stratum(h, v) -> StratumSignature:
    n = len(h)
    cycles = cycles_of_array(_vertex_array(h, v))
    zeros = tuple(sorted(len(c) - 1 for c in cycles if len(c) > 1))
    # Euler characteristic: V - 2n + n = 2 - 2g.
    twice_g_euler = 2 + n - len(cycles)
    twice_g_degree = 2 + sum(zeros)
    if twice_g_euler != twice_g_degree or twice_g_euler % 2:
        raise AssertionError(f"genus mismatch: Euler gives {twice_g_euler}/2, degree gives {twice_g_degree}/2")
    return StratumSignature(zeros, twice_g_euler // 2, 2 * sum(zeros))


def stratum(o: Origami) -> StratumSignature:
    return _stratum(o.h.array, o.v.array)


def genus(o: Origami) -> int:
    return _stratum(o.h.array, o.v.array).genus


# --------------------------------------------------------------------------
# Canonical form

def _canonical_key(h: Sequence[int], v: Sequence[int]) -> tuple[int, ...]:
    n = len(h)
    hi = inverse_array(h)
    vi = inverse_array(v)
    best = None
    rng = range(n)
    for s in rng:
        label = [-1] * n
        label[s] = 0
        order = [s]
        k = 1
        for x in order:
            for y in (h[x], v[x], hi[x], vi[x]):
                if label[y] < 0:
                    label[y] = k
                    k += 1
                    order.append(y)
        cand = tuple([label[h[x]] for x in order] + [label[v[x]] for x in order])
        if best is None or cand < best:
            best = cand
    return best


def canonical_form(o: Origami) -> Origami:
    """Deterministic representative of the relabeling class of ``o``.

    For every base square, squares are renumbered in breadth-first discovery
    order using the moves ``h, v, h^-1, v^-1``; the lexicographically smallest
    ``h``-images followed by ``v``-images wins.
    """
    return from_key(_canonical_key(o.h.array, o.v.array))


def is_isomorphic(a: Origami, b: Origami) -> bool:
    if a.n != b.n:
        return False
    return _canonical_key(a.h.array, a.v.array) == _canonical_key(b.h.array, b.v.array)


# --------------------------------------------------------------------------
# Holonomy and normality

def holonomy_vectors(o: Origami, root: int = 1) -> list[tuple[int, int]]:
    """Translation vectors of the loops closed by non-tree edges of a BFS tree."""
    h, v = o.h.array, o.v.array
    hi, vi = inverse_array(h), inverse_array(v)
    n = o.n
    pos: list[tuple[int, int] | None] = [None] * n
    pos[root - 1] = (0, 0)
    queue = deque([root - 1])
    tree = set()
    while queue:
        x = queue.popleft()
        px, py = pos[x]
        for y, step, kind in ((h[x], (1, 0), "h"), (v[x], (0, 1), "v")):
            if pos[y] is None:
                pos[y] = (px + step[0], py + step[1])
                tree.add((kind, x))
                queue.append(y)
        for y, step, kind in ((hi[x], (-1, 0), "h"), (vi[x], (0, -1), "v")):
            if pos[y] is None:
                pos[y] = (px + step[0], py + step[1])
                tree.add((kind, y))
                queue.append(y)
    loops = []
    for kind, perm, step in (("h", h, (1, 0)), ("v", v, (0, 1))):
        for x in range(n):
            if (kind, x) in tree:
                continue
            y = perm[x]
            loops.append((pos[x][0] + step[0] - pos[y][0], pos[x][1] + step[1] - pos[y][1]))
    return loops


def holonomy_lattice(o: Origami, root: int = 1) -> tuple[tuple[int, int], tuple[int, int]]:
    """Hermite normal form ``((a, b), (0, d))`` of the lattice of loop translations."""
    return hermite_normal_form(holonomy_vectors(o, root))


def _monodromy_order_exceeds(h: Sequence[int], v: Sequence[int], bound: int) -> bool:
    seen = {tuple(h), tuple(v)}
    queue = list(seen)
    for g in queue:
        for gen in (h, v):
            prod = tuple(g[x] for x in gen)  # g o gen
            if prod not in seen:
                seen.add(prod)
                if len(seen) > bound:
                    return True
                queue.append(prod)
    return False


def monodromy_order(o: Origami) -> int:
    h, v = o.h.array, o.v.array
    seen = {tuple(h), tuple(v)}
    queue = list(seen)
    for g in queue:
        for gen in (h, v):
            prod = tuple(g[x] for x in gen)
            if prod not in seen:
                seen.add(prod)
                queue.append(prod)
    return len(seen)


def is_normal(o: Origami) -> bool:
    """True iff the monodromy group ``<h, v>`` has exactly ``n`` elements.

    Transitivity already forces at least ``n``; the closure stops as soon as it
    has found ``n + 1`` distinct elements.
    """
    return not _monodromy_order_exceeds(o.h.array, o.v.array, o.n)


# --------------------------------------------------------------------------
# Named examples used throughout the tests and docs

def one_square_torus() -> Origami:
    return Origami(Permutation([1]), Permutation([1]))


def quaternion_origami() -> Origami:
    """Regular action of Q8 with ``h`` = right multiplication by i, ``v`` by j.

    Squares 1..8 are the elements 1, i, j, k, -1, -i, -j, -k.
    """
    # quaternion units as (sign, unit) with unit in 1, i, j, k
    table = {("1", u): (1, u) for u in "1ijk"}
    table.update({(u, "1"): (1, u) for u in "1ijk"})
    table.update({
        ("i", "i"): (-1, "1"), ("j", "j"): (-1, "1"), ("k", "k"): (-1, "1"),
        ("i", "j"): (1, "k"), ("j", "k"): (1, "i"), ("k", "i"): (1, "j"),
        ("j", "i"): (-1, "k"), ("k", "j"): (-1, "i"), ("i", "k"): (-1, "j"),
    })
    elements = [(s, u) for s in (1, -1) for u in "1ijk"]
    index = {e: i for i, e in enumerate(elements)}

    def right_mult(by):
        out = []
        for s, u in elements:
            t, w = table[(u, by)]
            out.append(index[(s * t, w)])
        return out

    return Origami.from_arrays(right_mult("i"), right_mult("j"))
