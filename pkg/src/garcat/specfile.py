"""The line-oriented category file format.

::

    backend kgraph
    version 1
    vertex v
    edge e v v color 1
    edge f v v color 2
    square ef = fe

Other backends use ``atoms``/``m`` (artin) and ``vertex``/``mor``/``comp``
(explicit).  ``#`` starts a comment.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .artin import ArtinTits, CoxeterData, INF
from .core import Category, Edge, ExplicitFinite, GraphPath, ParseError, StructuralError, _split_word
from .kgraph import KGraph

BACKENDS = ("graphpath", "kgraph", "artin", "explicit")
VERSION = 1

_ALLOWED = {
    "graphpath": {"vertex", "edge"},
    "kgraph": {"vertex", "edge", "square"},
    "artin": {"atoms", "m"},
    "explicit": {"vertex", "mor", "comp"},
}


@dataclass
class CategorySpec:
    backend: str
    version: int = VERSION
    vertices: list = field(default_factory=list)
    edges: list = field(default_factory=list)  # (id, src, dst, color or None)
    squares: list = field(default_factory=list)  # ((x, y), (y2, x2))
    atoms: list = field(default_factory=list)
    m: list = field(default_factory=list)  # (a, b, int or None)
    mors: list = field(default_factory=list)  # (id, src, dst)
    comps: list = field(default_factory=list)  # (f, g, h)

    def build(self) -> Category:
        if self.backend == "graphpath":
            return GraphPath(self.vertices, [Edge(i, s, d) for i, s, d, _ in self.edges])
        if self.backend == "kgraph":
            return KGraph(self.vertices, [Edge(i, s, d, c or 1) for i, s, d, c in self.edges], self.squares)
        if self.backend == "artin":
            entries = {}
            for a, b, v in self.m:
                key = frozenset((a, b))
                if key in entries and entries[key] != v:
                    raise StructuralError("m", f"conflicting entries for {a} {b}")
                entries[key] = v
            return ArtinTits(CoxeterData(tuple(self.atoms), entries))
        table = {(f, g): h for f, g, h in self.comps}
        return ExplicitFinite(self.vertices, self.mors, table)


def _err(msg, line, col=1):
    return ParseError(msg, line, col)


def parse_spec(text: str) -> CategorySpec:
    spec = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0]
        toks = line.split()
        if not toks:
            continue
        col = raw.index(toks[0]) + 1
        head, args = toks[0], toks[1:]
        if spec is None:
            if head != "backend":
                raise _err("the first statement must be 'backend <name>'", lineno, col)
            if len(args) != 1 or args[0] not in BACKENDS:
                raise _err(f"backend must be one of {', '.join(BACKENDS)}", lineno, col)
            spec = CategorySpec(args[0])
            continue
        if head == "version":
            if args != [str(VERSION)]:
                raise _err(f"unsupported version {' '.join(args)!r}", lineno, col)
            spec.version = VERSION
            continue
        if head not in _ALLOWED[spec.backend]:
            raise _err(f"statement {head!r} is not allowed for backend {spec.backend}", lineno, col)
        _STATEMENTS[head](spec, args, lineno, raw)
    if spec is None:
        raise _err("empty specification", 1)
    return spec


def _vertex(spec, args, lineno, raw):
    if len(args) != 1:
        raise _err("expected 'vertex <id>'", lineno)
    spec.vertices.append(args[0])


def _edge(spec, args, lineno, raw):
    color = None
    if len(args) == 5 and args[3] == "color" and spec.backend == "kgraph":
        try:
            color = int(args[4])
        except ValueError:
            raise _err(f"color must be an integer, got {args[4]!r}", lineno, raw.rindex(args[4]) + 1) from None
        args = args[:3]
    if len(args) != 3:
        raise _err("expected 'edge <id> <src> <dst>'" + (" [color <n>]" if spec.backend == "kgraph" else ""), lineno)
    spec.edges.append((args[0], args[1], args[2], color))


def _square(spec, args, lineno, raw):
    if "=" not in args:
        raise _err("expected 'square <e><f> = <f'><e'>'", lineno)
    i = args.index("=")
    names = [e[0] for e in spec.edges]
    sides = []
    for side in (args[:i], args[i + 1:]):
        if len(side) == 1:
            try:
                side = _split_word(side[0], names)
            except Exception:
                raise _err(f"cannot split {side[0]!r} into declared edges", lineno, raw.index(side[0]) + 1) from None
        if len(side) != 2:
            raise _err("each side of a square has exactly two edges", lineno)
        sides.append(tuple(side))
    spec.squares.append((sides[0], sides[1]))


def _atoms(spec, args, lineno, raw):
    if not args:
        raise _err("expected 'atoms <a> <b> ...'", lineno)
    spec.atoms.extend(args)


def _m(spec, args, lineno, raw):
    if len(args) != 3:
        raise _err("expected 'm <a> <b> <n|inf>'", lineno)
    a, b, v = args
    col = raw.rindex(v) + 1
    if v in ("inf", "oo", "infinity"):
        spec.m.append((a, b, INF))
        return
    try:
        n = int(v)
    except ValueError:
        raise _err(f"m entry must be an integer >= 2 or 'inf', got {v!r}", lineno, col) from None
    if n < 2:
        raise _err(f"m entry must be at least 2, got {n}", lineno, col)
    if a == b:
        raise _err("m entries relate two distinct atoms", lineno)
    spec.m.append((a, b, n))


def _mor(spec, args, lineno, raw):
    if len(args) != 3:
        raise _err("expected 'mor <id> <src> <dst>'", lineno)
    spec.mors.append(tuple(args))


def _comp(spec, args, lineno, raw):
    if len(args) != 4 or args[2] != "=":
        raise _err("expected 'comp <f> <g> = <h>'", lineno)
    spec.comps.append((args[0], args[1], args[3]))


_STATEMENTS = {"vertex": _vertex, "edge": _edge, "square": _square, "atoms": _atoms,
               "m": _m, "mor": _mor, "comp": _comp}


def print_spec(spec: CategorySpec) -> str:
    out = [f"backend {spec.backend}", f"version {spec.version}"]
    for v in spec.vertices:
        out.append(f"vertex {v}")
    for i, s, d, c in spec.edges:
        out.append(f"edge {i} {s} {d}" + (f" color {c}" if c is not None else ""))
    short = all(len(e[0]) == 1 for e in spec.edges)
    for (x, y), (y2, x2) in spec.squares:
        out.append(f"square {x}{y} = {y2}{x2}" if short else f"square {x} {y} = {y2} {x2}")
    if spec.atoms:
        out.append("atoms " + " ".join(spec.atoms))
    for a, b, v in spec.m:
        out.append(f"m {a} {b} {'inf' if v is INF else v}")
    for i, s, d in spec.mors:
        out.append(f"mor {i} {s} {d}")
    for f, g, h in spec.comps:
        out.append(f"comp {f} {g} = {h}")
    return "\n".join(out) + "\n"


def load(text: str) -> Category:
    return parse_spec(text).build()
