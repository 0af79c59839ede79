"""Exhaustive enumeration of origamis, orbit classification and the property survey."""

from __future__ import annotations

import hashlib
import json
import logging
import os
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import permutations
from pathlib import Path
from typing import Iterable, Iterator

from .origami import Origami, _canonical_key, _is_transitive, _monodromy_order_exceeds, _stratum, from_key, holonomy_lattice
from .properties import orbit_flags, uniform_cylinder_failures
from .sl2 import orbit_keys, OrbitRecord

log = logging.getLogger(__name__)

DEFAULT_MAX_N = 8
CORPUS_VERSION = 1
UNIFORMITY_MAX_NORM = 3


class SearchLimitError(ValueError):
    pass


class CorpusError(ValueError):
    pass


def max_squares() -> int:
    """Largest square count the search accepts; ``ORIGAMI_MAX_N`` overrides the default."""
    raw = os.environ.get("ORIGAMI_MAX_N")
    if raw is None:
        return DEFAULT_MAX_N
    try:
        value = int(raw)
    except ValueError:
        raise SearchLimitError(f"ORIGAMI_MAX_N must be an integer, got {raw!r}") from None
    if value < 1:
        raise SearchLimitError(f"ORIGAMI_MAX_N must be positive, got {value}")
    return value


def _check_n(n: int) -> None:
    cap = max_squares()
    if not 1 <= n <= cap:
        raise SearchLimitError(f"square count {n} outside 1..{cap} (set ORIGAMI_MAX_N to raise the cap)")


# --------------------------------------------------------------------------
# Enumeration

def partitions(n: int, largest: int | None = None) -> Iterator[tuple[int, ...]]:
    """Partitions of ``n`` in reverse lexicographic order."""
    if largest is None:
        largest = n
    if n == 0:
        yield ()
        return
    for k in range(min(n, largest), 0, -1):
        for rest in partitions(n - k, k):
            yield (k,) + rest


def cycle_type_representative(partition: tuple[int, ...]) -> tuple[int, ...]:
    """0-indexed permutation with consecutive cycles of the given lengths."""
    h = []
    start = 0
    for k in partition:
        h.extend(range(start + 1, start + k))
        h.append(start)
        start += k
    return tuple(h)


def _enumerate_cycle_type(n: int, partition: tuple[int, ...], genus_min: int) -> tuple[list[tuple[int, ...]], int]:
    """Canonical keys of all classes whose ``h`` has the given cycle type.

    Conjugation preserves the cycle type of ``h``, so classes from different
    cycle types never collide and each type can be processed independently.
    """
    h = cycle_type_representative(partition)
    seen = set()
    out = []
    nodes = 0
    for v in permutations(range(n)):
        nodes += 1
        if not _is_transitive(h, v):
            continue
        key = _canonical_key(h, v)
        if key in seen:
            continue
        seen.add(key)
        if _stratum(key[:n], key[n:]).genus >= genus_min:
            out.append(key)
    return out, nodes


def _enumerate_task(args):
    return _enumerate_cycle_type(*args)


def _enumerate_keys(n: int, genus_min: int, jobs: int = 1) -> tuple[list[tuple[int, ...]], int]:
    tasks = [(n, p, genus_min) for p in partitions(n)]
    if jobs > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(_enumerate_task, tasks))
    else:
        results = [_enumerate_task(t) for t in tasks]
    keys = []
    nodes = 0
    for ks, nd in results:
        keys.extend(ks)
        nodes += nd
    return keys, nodes


def enumerate_origamis(n: int, genus_min: int = 1) -> Iterator[Origami]:
    """One canonical representative per isomorphism class on ``n`` squares with genus >= ``genus_min``.

    ``h`` runs over one representative per cycle type and ``v`` over all of
    S_n; each pair is reduced to its canonical form and emitted the first time
    that form is seen.
    """
    _check_n(n)
    for p in partitions(n):
        keys, _ = _enumerate_cycle_type(n, p, genus_min)
        for key in keys:
            yield from_key(key)


# --------------------------------------------------------------------------
# Orbits

def _classify_keys(keys: Iterable[tuple[int, ...]]) -> list[list[tuple[int, ...]]]:
    pending = sorted(set(keys))
    assigned: set[tuple[int, ...]] = set()
    orbits = []
    for key in pending:
        if key in assigned:
            continue
        n = len(key) // 2
        members = orbit_keys(key[:n], key[n:])
        assigned.update(members)
        orbits.append(sorted(members))
    return orbits


def classify_orbits(entries: Iterable[Origami]) -> list[OrbitRecord]:
    """Partition canonical origamis into SL(2,Z)-orbits, sorted by smallest member."""
    keys = [_canonical_key(o.h.array, o.v.array) for o in entries]
    records = []
    for members in _classify_keys(keys):
        n = len(members[0]) // 2
        balanced, corners, normal = orbit_flags(members)
        records.append(OrbitRecord(
            frozenset(from_key(k) for k in members),
            _stratum(members[0][:n], members[0][n:]),
            balanced, corners, normal,
        ))
    return records


# --------------------------------------------------------------------------
# Corpus

def canonical_text(n: int, h: Iterable[int], v: Iterable[int]) -> str:
    return f"{n}|{' '.join(map(str, h))}|{' '.join(map(str, v))}"


def origami_id(o: Origami) -> str:
    """Content hash of the canonical form; stable across runs and platforms."""
    key = _canonical_key(o.h.array, o.v.array)
    return _key_id(key)


def _key_id(key: tuple[int, ...]) -> str:
    n = len(key) // 2
    text = canonical_text(n, (x + 1 for x in key[:n]), (x + 1 for x in key[n:]))
    return hashlib.sha256(text.encode()).hexdigest()[:16]


@dataclass(frozen=True)
class CorpusEntry:
    id: str
    n: int
    h: tuple[int, ...]
    v: tuple[int, ...]
    genus: int
    zeros: tuple[int, ...]
    orbit: str
    balanced: bool
    corners: bool
    normal: bool
    holonomy: tuple[tuple[int, int], tuple[int, int]]

    @property
    def origami(self) -> Origami:
        return Origami.from_arrays([x - 1 for x in self.h], [x - 1 for x in self.v])

    def to_json(self) -> dict:
        return {
            "id": self.id,
            "n": self.n,
            "h": list(self.h),
            "v": list(self.v),
            "genus": self.genus,
            "zeros": list(self.zeros),
            "orbit": self.orbit,
            "flags": {"balanced": self.balanced, "corners": self.corners, "normal": self.normal},
            "holonomy": [list(r) for r in self.holonomy],
        }

    @classmethod
    def from_json(cls, d: dict) -> CorpusEntry:
        try:
            flags = d["flags"]
            return cls(
                id=str(d["id"]), n=int(d["n"]),
                h=tuple(int(x) for x in d["h"]), v=tuple(int(x) for x in d["v"]),
                genus=int(d["genus"]), zeros=tuple(int(x) for x in d["zeros"]),
                orbit=str(d["orbit"]),
                balanced=bool(flags["balanced"]), corners=bool(flags["corners"]), normal=bool(flags["normal"]),
                holonomy=tuple(tuple(int(x) for x in r) for r in d["holonomy"]),
            )
        except (KeyError, TypeError, ValueError) as e:
            raise CorpusError(f"malformed corpus entry {d!r}: {e}") from None


def save_corpus(entries: Iterable[CorpusEntry], path: str | Path) -> None:
    payload = {"version": CORPUS_VERSION, "entries": [e.to_json() for e in entries]}
    Path(path).write_text(json.dumps(payload, separators=(",", ":")) + "\n", encoding="utf-8")


def load_corpus(path: str | Path) -> list[CorpusEntry]:
    try:
        payload = json.loads(Path(path).read_text(encoding="utf-8"))
    except json.JSONDecodeError as e:
        raise CorpusError(f"{path}: not valid JSON: {e}") from None
    if not isinstance(payload, dict) or "version" not in payload:
        raise CorpusError(f"{path}: missing version field")
    if payload["version"] != CORPUS_VERSION:
        raise CorpusError(f"{path}: corpus version {payload['version']!r}, expected {CORPUS_VERSION}")
    return [CorpusEntry.from_json(d) for d in payload.get("entries", [])]


# --------------------------------------------------------------------------
# Survey

@dataclass
class SearchReport:
    n_max: int
    genus_min: int
    counts: dict[int, dict[str, int]] = field(default_factory=dict)
    balanced_orbits: list[dict] = field(default_factory=list)
    implication_violations: list[dict] = field(default_factory=list)
    runtime_stats: dict[int, dict[str, float]] = field(default_factory=dict)
    truncated: bool = False
    completed_n: int = 0
    entries: list[CorpusEntry] = field(default_factory=list, repr=False)

    def rarity(self) -> dict[int, str]:
        """``balanced_orbits / genus2plus_orbits`` per square count, as exact fractions."""
        out = {}
        for n, c in self.counts.items():
            if c["genus2plus_orbits"]:
                out[n] = f"{c['balanced_orbits']}/{c['genus2plus_orbits']}"
            else:
                out[n] = None
        return out

    def to_dict(self, timings: bool = False) -> dict:
        d = {
            "n_max": self.n_max,
            "genus_min": self.genus_min,
            "truncated": self.truncated,
            "completed_n": self.completed_n,
            "counts": {str(n): c for n, c in sorted(self.counts.items())},
            "rarity": {str(n): r for n, r in sorted(self.rarity().items())},
            "rarity_float": {str(n): (float(Fraction(r)) if r else None) for n, r in sorted(self.rarity().items())},
            "balanced_orbits": self.balanced_orbits,
            "implication_violations": self.implication_violations,
            "runtime_stats": {str(n): ({k: v for k, v in s.items()} if timings else {"nodes": s["nodes"]})
                              for n, s in sorted(self.runtime_stats.items())},
        }
        return d

    def to_json(self, timings: bool = False) -> str:
        return json.dumps(self.to_dict(timings), indent=2, sort_keys=True) + "\n"


def _survey_n(n: int, genus_min: int, jobs: int, report: SearchReport) -> None:
    t0 = time.perf_counter()
    # counts cover every genus; genus_min only filters the corpus
    keys, nodes = _enumerate_keys(n, 1, jobs)
    t1 = time.perf_counter()
    orbits = _classify_keys(keys)
    key_set = set(keys)
    counts = {
        "origamis_up_to_iso": len(keys),
        "orbits": len(orbits),
        "genus2plus_orbits": 0,
        "balanced_orbits": 0,
        "corners_orbits": 0,
        "normal_origamis": 0,
    }
    entries = []
    for members in orbits:
        missing = [k for k in members if k not in key_set]
        if missing:
            raise AssertionError(f"orbit member {missing[0]} was not produced by the enumeration")
        rep = members[0]
        st = _stratum(rep[:n], rep[n:])
        orbit_id = _key_id(rep)
        balanced, corners, contains_normal = orbit_flags(members)
        if st.genus >= 2:
            counts["genus2plus_orbits"] += 1
            counts["balanced_orbits"] += balanced
            counts["corners_orbits"] += corners
            if corners and not balanced:
                report.implication_violations.append(
                    {"kind": "corners_not_balanced", "orbit": orbit_id, "n": n})
            if contains_normal and not balanced:
                report.implication_violations.append(
                    {"kind": "normal_not_balanced", "orbit": orbit_id, "n": n})
            if balanced and st.genus >= genus_min:
                report.balanced_orbits.append({
                    "orbit": orbit_id,
                    "n": n,
                    "size": len(members),
                    "genus": st.genus,
                    "zeros": list(st.zero_orders),
                    "corners": corners,
                    "contains_normal": contains_normal,
                    "representative": {"h": [x + 1 for x in rep[:n]], "v": [x + 1 for x in rep[n:]]},
                })
        for k in members:
            h, v = k[:n], k[n:]
            normal = not _monodromy_order_exceeds(h, v, n)
            o = from_key(k)
            if normal:
                counts["normal_origamis"] += 1
                for d, shapes in uniform_cylinder_failures(o, UNIFORMITY_MAX_NORM):
                    report.implication_violations.append({
                        "kind": "normal_not_uniform", "orbit": orbit_id, "n": n,
                        "origami": _key_id(k), "direction": [d.dx, d.dy],
                        "shapes": [list(s) for s in shapes],
                    })
            if st.genus < genus_min:
                continue
            entries.append(CorpusEntry(
                id=_key_id(k), n=n,
                h=tuple(x + 1 for x in h), v=tuple(x + 1 for x in v),
                genus=st.genus, zeros=st.zero_orders, orbit=orbit_id,
                balanced=balanced, corners=corners, normal=normal,
                holonomy=holonomy_lattice(o),
            ))
    t2 = time.perf_counter()
    entries.sort(key=lambda e: (e.n, e.orbit, e.id))
    report.entries.extend(entries)
    report.counts[n] = counts
    report.runtime_stats[n] = {"nodes": nodes, "enumerate_seconds": round(t1 - t0, 3),
                               "classify_seconds": round(t2 - t1, 3)}
    report.completed_n = n
    log.info("n=%d: %d origamis, %d orbits (%.1fs)", n, len(keys), len(orbits), t2 - t0)


def run_survey(n_max: int = DEFAULT_MAX_N, genus_min: int = 2, jobs: int = 1,
               time_limit: float | None = None) -> SearchReport:
    """Enumerate, classify and check every origami with at most ``n_max`` squares.

    Counts cover every genus; ``genus_min`` restricts the corpus entries and
    the list of balanced orbits. Records per-N counts and any violation
    of: corners => balanced, normal => balanced, normal => all cylinders of a
    direction share width and height. With ``time_limit`` (seconds) the survey
    stops after the first square count that exceeds it and marks the report
    truncated.
    """
    _check_n(n_max)
    report = SearchReport(n_max=n_max, genus_min=genus_min)
    start = time.perf_counter()
    for n in range(1, n_max + 1):
        if time_limit is not None and time.perf_counter() - start > time_limit:
            report.truncated = True
            break
        _survey_n(n, genus_min, jobs, report)
    report.balanced_orbits.sort(key=lambda d: (d["n"], d["orbit"]))
    return report
