"""Graphviz DOT export for lattices and skeletons, with a small syntax checker."""

from __future__ import annotations

import re

from .core import Category, GarcatError
from .invariants import SubspaceLattice


class DotSyntaxError(GarcatError):
    pass


def _q(s: str) -> str:
    return '"' + s.replace("\\", "\\\\").replace('"', '\\"') + '"'


def lattice_dot(lattice: SubspaceLattice, name: str = "lattice") -> str:
    lines = [f"digraph {_q(name)} {{", "  rankdir=BT;", "  node [shape=box];"]
    boundary = set(lattice.boundary_index)
    for i, p in enumerate(lattice.pairs):
        attrs = f"label={_q(p.describe())}"
        if i in boundary:
            attrs += ", style=bold"
        if lattice.boundary is not None and p == lattice.boundary:
            attrs += ", peripheries=2"
        lines.append(f"  p{i} [{attrs}];")
    for i, j in lattice.order:
        lines.append(f"  p{i} -> p{j};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def skeleton_dot(cat: Category, name: str = "skeleton") -> str:
    """Vertices and atoms; an atom x: s -> t is drawn from t to s (paths read right to left)."""
    lines = [f"digraph {_q(name)} {{"]
    for v in cat.objects:
        lines.append(f"  {_q(v)};")
    for a in cat.atoms:
        label = a.render()
        color = getattr(cat, "color", None)
        if cat.backend == "kgraph":
            label += f" [{color(a.word[0])}]"
        lines.append(f"  {_q(a.dst)} -> {_q(a.src)} [label={_q(label)}];")
    lines.append("}")
    return "\n".join(lines) + "\n"


_TOKEN = re.compile(r'\s*(?:("(?:[^"\\]|\\.)*")|([A-Za-z_][A-Za-z0-9_.]*|-?\d+(?:\.\d+)?)|(->|--|[{}\[\];,=]))')


def _tokens(text: str):
    pos = 0
    out = []
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise DotSyntaxError(f"unexpected character at offset {pos}: {text[pos:pos + 10]!r}")
        if m.group(1) is not None:
            out.append(("id", m.group(1)))
        elif m.group(2) is not None:
            out.append(("id", m.group(2)))
        else:
            out.append(("op", m.group(3)))
        pos = m.end()
    return out


def check_dot(text: str) -> bool:
    """Accepts the subset of DOT emitted here: one digraph of node, edge and
    attribute statements.  Raises DotSyntaxError on anything else."""
    toks = _tokens(text)
    i = 0

    def expect(kind, value=None):
        nonlocal i
        if i >= len(toks) or toks[i][0] != kind or (value is not None and toks[i][1] != value):
            got = toks[i][1] if i < len(toks) else "end of input"
            raise DotSyntaxError(f"expected {value or kind}, got {got!r}")
        i += 1
        return toks[i - 1][1]

    def attr_list():
        nonlocal i
        expect("op", "[")
        while not (toks[i] == ("op", "]")):
            expect("id")
            expect("op", "=")
            expect("id")
            if toks[i] == ("op", ","):
                i += 1
        expect("op", "]")

    if expect("id") != "digraph":
        raise DotSyntaxError("only digraphs are emitted")
    if toks[i][0] == "id":
        i += 1
    expect("op", "{")
    while i < len(toks) and toks[i] != ("op", "}"):
        first = expect("id")
        if i < len(toks) and toks[i] == ("op", "=") and first in ("rankdir", "label"):
            i += 1
            expect("id")
        elif first in ("node", "edge", "graph") and toks[i] == ("op", "["):
            attr_list()
        else:
            while toks[i] == ("op", "->"):
                i += 1
                expect("id")
            if toks[i] == ("op", "["):
                attr_list()
        expect("op", ";")
    expect("op", "}")
    if i != len(toks):
        raise DotSyntaxError("trailing input after the graph")
    return True
