"""Command line front end: ``garcat COMMAND SPEC [ARG] [options]``."""

from __future__ import annotations

import argparse
import hashlib
import json
import sys
from pathlib import Path

from . import __version__, gpd
from .artin import ArtinTits
from .core import (
    CapacityError,
    CompositionError,
    DomainError,
    FuelExhausted,
    GarcatError,
    ParseError,
    StructuralError,
    UnsupportedClass,
    finite_alignment_probe,
    to_jsonable,
    validate_category,
)
from .dot import check_dot, lattice_dot, skeleton_dot
from .families import default_family
from .garside import validate_family
from .invariants import boundary_pair, d_max, enumerate_pairs, t_max
from .specfile import parse_spec

SCHEMA = 1
EXIT_OK, EXIT_INPUT, EXIT_CAPACITY = 0, 1, 2


class UsageError(GarcatError):
    pass


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--depth", type=int, default=4, help="ball radius for bounded searches (default 4)")
    common.add_argument("--fuel", type=int, default=10_000, help="right reversing step budget (default 10000)")
    common.add_argument("--jobs", type=int, default=1, help="worker processes for enumeration")
    common.add_argument("--seed", type=int, default=0, help="seed for any sampling (default 0)")
    common.add_argument("--format", choices=("json", "text", "dot"), default="json")
    common.add_argument("--out", help="write the report here instead of stdout")

    p = argparse.ArgumentParser(prog="garcat", description=__doc__)
    p.add_argument("--version", action="version", version=f"garcat {__version__}")
    sub = p.add_subparsers(dest="command", required=True)
    for name, help_ in [("validate", "check the category and its Garside family"),
                        ("classify", "enumerate the closed invariant subspaces"),
                        ("boundary", "the pair of the boundary")]:
        s = sub.add_parser(name, parents=[common], help=help_)
        s.add_argument("spec")
    s = sub.add_parser("normal-form", parents=[common], help="greedy normal form of a word")
    s.add_argument("spec")
    s.add_argument("word")
    s = sub.add_parser("check", parents=[common], help="groupoid criteria")
    s.add_argument("spec")
    s.add_argument("criterion", help=f"all, or one of {', '.join(gpd.CRITERIA)}")
    s = sub.add_parser("gc", parents=[common], help="look for a separator of a fraction u/v")
    s.add_argument("spec")
    s.add_argument("fraction", help="u/v, read as u v^-1")
    s = sub.add_parser("export-dot", parents=[common], help="DOT export")
    s.add_argument("spec")
    s.add_argument("what", choices=("lattice", "skeleton"))
    return p


def _family_or_none(cat):
    try:
        return default_family(cat)
    except (UnsupportedClass, DomainError):
        return None


def _require_family(cat):
    return default_family(cat)


def _parse_fraction(cat, text):
    if "/" not in text:
        raise UsageError(f"fraction must look like u/v, got {text!r}")
    u, v = text.split("/", 1)
    at = cat.objects[0]
    return cat.parse_word(u, at=at), cat.parse_word(v, at=at)


def _run(args, cat):
    """Returns (result dict, text lines, dot text or None)."""
    cmd = args.command
    if cmd == "validate":
        rep = validate_category(cat)
        res = {"category": rep.to_json(), "finite_alignment": finite_alignment_probe(cat, args.depth).to_json()}
        fam = _family_or_none(cat)
        if fam is not None:
            res["family"] = {"letters": [s.render() for s in fam.letters], "certificate": fam.certificate,
                             "checks": validate_family(cat, fam.letters, args.depth).to_json()}
        lines = [f"category valid: {rep.valid}"] + [f"  {c.name}: {c.verdict.status.value}" for c in rep.checks]
        if fam is not None:
            lines.append(f"family: {len(fam.letters)} letters ({fam.certificate})")
        return res, lines, None
    if cmd == "normal-form":
        fam = _require_family(cat)
        x = cat.parse_word(args.word, at=cat.objects[0] if len(cat.objects) == 1 else None)
        nw = fam.normal_decompose(x)
        res = {"input": args.word, "morphism": x.to_json(), "normal_form": nw.render(),
               "letters": [s.render() for s in nw.letters]}
        return res, [nw.render()], None
    if cmd in ("classify", "boundary") or (cmd == "export-dot" and args.what == "lattice"):
        fam = _require_family(cat)
        bp = boundary_pair(fam, args.depth)
        if cmd == "boundary":
            T, why = t_max(fam, args.depth)
            res = {"boundary": bp.to_json(), "D_max": sorted(d_max(fam)),
                   "T_max": {s.render(): to_jsonable(why[s]) for s in sorted(T, key=lambda s: s.render())}}
            return res, [f"boundary pair: {bp.describe()}"], None
        lat = enumerate_pairs(fam, jobs=args.jobs, boundary=bp)
        if cmd == "export-dot":
            dot = lattice_dot(lat)
            check_dot(dot)
            return {"dot": dot}, [dot], dot
        lines = [f"{len(lat.pairs)} pairs"] + [f"  {p.describe()}" for p in lat.pairs]
        lines.append(f"boundary pair: {bp.describe()}")
        return {"lattice": lat.to_json(), "letters": [s.render() for s in fam.letters]}, lines, None
    if cmd == "export-dot":
        dot = skeleton_dot(cat)
        check_dot(dot)
        return {"dot": dot}, [dot], dot
    if cmd == "check":
        fam = _family_or_none(cat)
        if args.criterion.lower() == "all":
            reports = gpd.check_all(cat, args.depth, fam)
        else:
            reports = [gpd.run_criterion(cat, args.criterion, args.depth, fam)]
        res = {"reports": [r.to_json() for r in reports]}
        lines = [f"{r.criterion}: {r.verdict.status.value}" + (" (structural)" if r.verdict.structural else "")
                 for r in reports]
        return res, lines, None
    if cmd == "gc":
        u, v = _parse_fraction(cat, args.fraction)
        r = gpd.gc_probe(cat, u, v, args.depth)
        if r.verdict.fails:
            line = f"{u}/{v}: separator {r.verdict.certificate['separator']}, so g is not in G^c"
        else:
            line = f"{u}/{v}: no separator up to depth {args.depth}"
        return {"report": r.to_json()}, [line], None
    raise UsageError(f"unknown command {cmd}")


def run(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        raw = Path(args.spec).read_bytes()
    except OSError as exc:
        print(f"garcat: cannot read {args.spec}: {exc.strerror}", file=sys.stderr)
        return EXIT_INPUT
    try:
        text = raw.decode("utf-8")
        spec = parse_spec(text)
        cat = spec.build()
        if isinstance(cat, ArtinTits):
            cat.fuel = args.fuel
        result, lines, dot = _run(args, cat)
    except (CapacityError, FuelExhausted) as exc:
        print(f"garcat: {args.command}: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_CAPACITY
    except ParseError as exc:
        print(f"garcat: {args.spec}:{exc.line}:{exc.column}: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except (StructuralError, CompositionError, DomainError, UnsupportedClass, UsageError, UnicodeDecodeError) as exc:
        print(f"garcat: {args.command}: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INPUT

    if args.format == "dot":
        if dot is None:
            print("garcat: --format dot only applies to export-dot", file=sys.stderr)
            return EXIT_INPUT
        out = dot
    elif args.format == "text":
        out = "\n".join(lines).rstrip("\n") + "\n"
    else:
        report = {
            "schema": SCHEMA,
            "tool": "garcat",
            "version": __version__,
            "input_sha256": hashlib.sha256(raw).hexdigest(),
            "command": args.command,
            "options": {"depth": args.depth, "fuel": args.fuel, "seed": args.seed},
            "backend": spec.backend,
            "result": result,
        }
        out = json.dumps(report, sort_keys=True, indent=2, ensure_ascii=False) + "\n"
    if args.out:
        Path(args.out).write_text(out, encoding="utf-8")
    else:
        sys.stdout.write(out)
    return EXIT_OK


def main(argv=None) -> None:
    sys.exit(run(argv))


if __name__ == "__main__":
    main()
