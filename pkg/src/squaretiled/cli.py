"""Command-line front end.

Exit codes: 0 when the command succeeds or the checked property holds, 1 when
the property fails, 2 on usage or computation errors.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path

from .cylinders import cylinders_in_direction, ray_modulus
from .oracle import trace_direction_oracle
from .origami import Origami, OrigamiError, holonomy_lattice, is_normal, monodromy_order, parse_origami, stratum
from .properties import (GenusError, NoWitnessError, corners_property, finiteness_bound, has_balanced_heights,
                         regular_corner_circle, vorobets_witness)
from .search import SearchLimitError, _key_id, run_survey, save_corpus
from .sl2 import Direction, disk_param, orbit, orbit_keys

EXIT_OK = 0
EXIT_FAILS = 1
EXIT_ERROR = 2


class UsageError(Exception):
    pass


def _dump(obj) -> None:
    print(json.dumps(obj, sort_keys=True))


def _perm_json(o: Origami) -> dict:
    return {"h": list(o.h.images), "v": list(o.v.images)}


def _hnf_text(hnf) -> str:
    return "[" + ",".join(f"[{a},{b}]" for a, b in hnf) + "]"


# --------------------------------------------------------------------------
# Input handling

def _load_origami(args) -> Origami:
    inline = args.h is not None or args.v is not None
    if args.file is not None and inline:
        raise UsageError("give either a file or --h/--v, not both")
    if args.file is None and not inline:
        raise UsageError("no origami given: pass a file or --h and --v")
    if inline:
        if args.h is None or args.v is None:
            raise UsageError("inline input needs both --h and --v")
        lines = [] if args.n is None else [f"n: {args.n}"]
        lines += [f"h: {args.h}", f"v: {args.v}"]
        try:
            return parse_origami("\n".join(lines))
        except OrigamiError as e:
            raise OrigamiError(f"inline origami: {e}") from None
    if args.n is not None:
        raise UsageError("--n only applies to inline input; put an 'n:' line in the file instead")
    path = Path(args.file)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as e:
        raise UsageError(f"cannot read {path}: {e.strerror}") from None
    try:
        return parse_origami(text)
    except OrigamiError as e:
        raise OrigamiError(f"{path}: {e}") from None


def _parse_direction(text: str) -> tuple[tuple[int, int], Direction]:
    try:
        dx, dy = (int(x) for x in text.split(","))
    except ValueError:
        raise UsageError(f"direction must look like 'dx,dy', got {text!r}") from None
    try:
        return (dx, dy), Direction.of(dx, dy)
    except ValueError as e:
        raise UsageError(str(e)) from None


# --------------------------------------------------------------------------
# Subcommands

def cmd_info(args) -> int:
    o = _load_origami(args)
    st = stratum(o)
    normal = is_normal(o)
    hnf = holonomy_lattice(o)
    if args.json:
        _dump({"n": o.n, "genus": st.genus, "zeros": list(st.zero_orders), "m_q": st.m_q,
               "normal": normal, "holonomy": [list(r) for r in hnf], **_perm_json(o)})
    else:
        zeros = ",".join(map(str, st.zero_orders))
        print(f"n={o.n} genus={st.genus} zeros=[{zeros}] normal={str(normal).lower()} "
              f"m_q={st.m_q} holonomy={_hnf_text(hnf)}")
    return EXIT_OK


def cmd_orbit(args) -> int:
    o = _load_origami(args)
    rec = orbit(o)
    higher = rec.stratum.genus >= 2
    corners = rec.corners if higher else None
    keys = sorted(m.key for m in rec.members)
    members = sorted(rec.members, key=lambda m: m.key)
    if args.json:
        _dump({
            "size": rec.size, "n": rec.n, "genus": rec.stratum.genus,
            "zeros": list(rec.stratum.zero_orders),
            "balanced": rec.balanced, "corners": corners, "contains_normal": rec.contains_normal,
            "orbit": _key_id(keys[0]),
            "members": [{"id": _key_id(m.key), **_perm_json(m)} for m in members],
        })
    else:
        zeros = ",".join(map(str, rec.stratum.zero_orders))
        print(f"orbit size={rec.size} n={rec.n} genus={rec.stratum.genus} zeros=[{zeros}]")
        c = "n/a" if corners is None else str(corners).lower()
        print(f"balanced={str(rec.balanced).lower()} corners={c} contains_normal={str(rec.contains_normal).lower()}")
        for m in members:
            print(f"  {_key_id(m.key)}  h={m.h}  v={m.v}")
    return EXIT_OK


def cmd_cylinders(args) -> int:
    o = _load_origami(args)
    given, d = _parse_direction(args.direction)
    dec = trace_direction_oracle(o, d) if args.oracle else cylinders_in_direction(o, d)
    cyls = sorted(dec.cylinders, key=lambda c: (c.width, c.height))
    balanced = dec.has_equal_heights()
    if args.json:
        _dump({
            "direction": [d.dx, d.dy],
            "cylinders": [{"width": c.width, "height": c.height, "area": c.area, "len2_scale": c.norm2}
                          for c in cyls],
            "balanced": balanced,
        })
    else:
        note = "" if given == (d.dx, d.dy) else f" (normalized from {given[0]},{given[1]})"
        print(f"direction {d.dx},{d.dy}{note}: {len(cyls)} cylinder(s), balanced={str(balanced).lower()}")
        for c in cyls:
            print(f"  width={c.width} height={c.height} area={c.area} len2_scale={c.norm2}")
    if given != (d.dx, d.dy):
        print(f"note: direction {given[0]},{given[1]} normalized to {d.dx},{d.dy}", file=sys.stderr)
    return EXIT_OK


def _check(o: Origami, prop: str, max_norm: int) -> tuple[bool, dict | None]:
    if prop == "balanced":
        rep = has_balanced_heights(o)
        if rep.balanced:
            return True, None
        w = rep.witness
        return False, {
            "member": _perm_json(w.member),
            "heights": list(w.heights),
            "cylinders": [{"width": c.width, "height": c.height, "squares": sorted(c.squares)} for c in w.cylinders],
        }
    if prop == "corners":
        if corners_property(o):
            return True, None
        member, row = regular_corner_circle(o)
        return False, {"member": _perm_json(member), "regular_row": row}
    if prop == "normal":
        if is_normal(o):
            return True, None
        return False, {"monodromy_order": monodromy_order(o), "n": o.n}
    if prop == "vorobets":
        d, c = vorobets_witness(o, max_norm)
        return True, {"direction": [d.dx, d.dy], "width": c.width, "height": c.height,
                      "area": c.area, "len2_scale": c.norm2}
    raise AssertionError(prop)


def cmd_check(args) -> int:
    o = _load_origami(args)
    if args.max_norm < 1:
        raise UsageError("--max-norm must be positive")
    result, witness = _check(o, args.property, args.max_norm)
    size = len(orbit_keys(o.h.array, o.v.array))
    if args.json:
        _dump({"property": args.property, "result": result, "witness": witness, "orbit_size": size})
    else:
        print(f"{args.property}: {str(result).lower()} (orbit size {size})")
        if witness is not None:
            if args.property == "balanced":
                m = witness["member"]
                print(f"  witness member h={m['h']} v={m['v']} heights {witness['heights'][0]} vs {witness['heights'][1]}")
            else:
                print(f"  witness {json.dumps(witness, sort_keys=True)}")
    return EXIT_OK if result else EXIT_FAILS


def _report_text(report) -> str:
    lines = [f"survey n_max={report.n_max} genus_min={report.genus_min}"
             + (f" TRUNCATED after n={report.completed_n}" if report.truncated else "")]
    lines.append(f"{'n':>3} {'classes':>8} {'orbits':>6} {'g>=2':>5} {'balanced':>8} {'corners':>7} {'normal':>6}  ratio")
    rarity = report.rarity()
    for n, c in sorted(report.counts.items()):
        lines.append(f"{n:>3} {c['origamis_up_to_iso']:>8} {c['orbits']:>6} {c['genus2plus_orbits']:>5} "
                     f"{c['balanced_orbits']:>8} {c['corners_orbits']:>7} {c['normal_origamis']:>6}  {rarity[n] or '-'}")
    lines.append(f"balanced orbits: {len(report.balanced_orbits)}")
    for b in report.balanced_orbits:
        flags = [f for f in ("corners", "contains_normal") if b[f]]
        lines.append(f"  {b['orbit']} n={b['n']} size={b['size']} zeros={b['zeros']} "
                     f"h={b['representative']['h']} v={b['representative']['v']}"
                     + (f" [{' '.join(flags)}]" if flags else ""))
    lines.append(f"implication violations: {len(report.implication_violations)}")
    for v in report.implication_violations:
        lines.append(f"  {json.dumps(v, sort_keys=True)}")
    return "\n".join(lines) + "\n"


def cmd_search(args) -> int:
    if args.jobs < 1:
        raise UsageError("--jobs must be positive")
    report = run_survey(args.max_squares, args.genus_min, jobs=args.jobs, time_limit=args.time_limit)
    if args.out is not None:
        try:
            save_corpus(report.entries, args.out)
        except OSError as e:
            raise UsageError(f"cannot write {args.out}: {e.strerror}") from None
    for n, s in sorted(report.runtime_stats.items()):
        logging.getLogger(__name__).info("n=%d nodes=%d enumerate=%.3fs classify=%.3fs",
                                         n, s["nodes"], s["enumerate_seconds"], s["classify_seconds"])
    sys.stdout.write(report.to_json() if args.json else _report_text(report))
    if report.truncated:
        print(f"search truncated after n={report.completed_n} (time limit)", file=sys.stderr)
        return EXIT_ERROR
    return EXIT_FAILS if report.implication_violations else EXIT_OK


def cmd_bound(args) -> int:
    b = finiteness_bound(args.genus)
    m = 4 * args.genus - 4
    digits = b.digits()
    if args.json:
        _dump({"genus": args.genus, "m": m, "coefficient": b.coefficient, "exponent": b.exponent, "digits": digits})
    else:
        print(f"genus={args.genus} m={m} bound={b} digits={digits}")
    return EXIT_OK


def cmd_param(args) -> int:
    t = disk_param(args.radius)
    out = {"radius": args.radius, "t": t}
    if args.mod0 is not None:
        modulus, ext = ray_modulus(args.mod0, t)
        out.update({"mod0": args.mod0, "modulus": modulus, "ext_upper_bound": ext})
    if args.json:
        _dump(out)
    else:
        print(" ".join(f"{k}={out[k]!r}" for k in ("radius", "t", "mod0", "modulus", "ext_upper_bound") if k in out))
    return EXIT_OK


# --------------------------------------------------------------------------
# Parser

def _add_input(p: argparse.ArgumentParser) -> None:
    p.add_argument("file", nargs="?", help="origami file with 'h:' and 'v:' lines")
    p.add_argument("--h", help="inline h, cycles '(1 2)(3)' or images '2 1 3'")
    p.add_argument("--v", help="inline v")
    p.add_argument("--n", type=int, help="number of squares for inline input")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="squaretiled", allow_abbrev=False,
                                     description="Exact computations on square-tiled surfaces.")
    parser.add_argument("--verbose", action="store_true", help="log progress and timings to stderr")
    sub = parser.add_subparsers(dest="command", required=True)

    def command(name, func, help):
        p = sub.add_parser(name, help=help, allow_abbrev=False)
        p.add_argument("--json", action="store_true", help="machine-readable output")
        p.set_defaults(func=func)
        return p

    p = command("info", cmd_info, "genus, stratum, normality and holonomy lattice")
    _add_input(p)

    p = command("orbit", cmd_orbit, "SL(2,Z)-orbit with property flags")
    _add_input(p)

    p = command("cylinders", cmd_cylinders, "cylinder decomposition in a rational direction")
    _add_input(p)
    p.add_argument("--direction", default="1,0", help="dx,dy (use --direction=-1,2 for a leading minus)")
    p.add_argument("--oracle", action="store_true", help="trace the flow instead of reducing by SL(2,Z)")

    p = command("check", cmd_check, "decide a property; exit 0 if it holds, 1 if not")
    p.add_argument("property", choices=["balanced", "corners", "normal", "vorobets"])
    _add_input(p)
    p.add_argument("--max-norm", type=int, default=1, help="direction search radius for vorobets")

    p = command("search", cmd_search, "exhaustive survey of all origamis up to a square count")
    p.add_argument("--max-squares", type=int, default=8)
    p.add_argument("--genus-min", type=int, default=2)
    p.add_argument("--out", help="write the corpus JSON here")
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--time-limit", type=float, help="stop after the square count that crosses this many seconds")

    p = command("bound", cmd_bound, "the finiteness bound on square counts for a genus")
    p.add_argument("genus", type=int)

    p = command("param", cmd_param, "Teichmuller time of a disk radius, optionally with a cylinder modulus")
    p.add_argument("radius", type=float)
    p.add_argument("--mod0", type=float, help="modulus at time 0")
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s", stream=sys.stderr)
    try:
        return args.func(args)
    except (UsageError, OrigamiError, GenusError, NoWitnessError, SearchLimitError, ValueError, OverflowError) as e:
        print(f"squaretiled {args.command}: error: {e}", file=sys.stderr)
        return EXIT_ERROR
    except Exception as e:
        # exit code 1 means "property fails", so nothing else may leak it
        logging.getLogger(__name__).debug("internal error", exc_info=True)
        print(f"squaretiled {args.command}: internal error: {type(e).__name__}: {e}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
