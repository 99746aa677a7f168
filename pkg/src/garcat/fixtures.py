"""Reference categories used by the tests, the acceptance suite and the docs."""

from __future__ import annotations

from .artin import ArtinTits, CoxeterData, INF
from .core import Edge, ExplicitFinite, GraphPath
from .kgraph import KGraph


def free_monoid(n: int = 2) -> GraphPath:
    names = "abcdefgh"[:n]
    return GraphPath(["v"], [Edge(a, "v", "v") for a in names])


def naturals() -> GraphPath:
    return GraphPath(["v"], [Edge("a", "v", "v")])


def artin(atoms, entries: dict) -> ArtinTits:
    m = {frozenset(k): v for k, v in entries.items()}
    return ArtinTits(CoxeterData(tuple(atoms), m))


def braid3() -> ArtinTits:
    return artin("ab", {("a", "b"): 3})


def free_artin(n: int = 2) -> ArtinTits:
    atoms = "abcdefgh"[:n]
    return artin(atoms, {(x, y): INF for i, x in enumerate(atoms) for y in atoms[i + 1:]})


def right_angled_abc() -> ArtinTits:
    """a, c commute; b is free with both."""
    return artin("abc", {("a", "c"): 2, ("a", "b"): INF, ("b", "c"): INF})


def affine_a2() -> ArtinTits:
    return artin("abc", {("a", "b"): 3, ("b", "c"): 3, ("a", "c"): 3})


def square_2graph() -> KGraph:
    """One vertex, one edge of each color, e f = f e."""
    return KGraph(["v"], [Edge("e", "v", "v", 1), Edge("f", "v", "v", 2)], [(("e", "f"), ("f", "e"))])


def flip_2graph() -> KGraph:
    """Two blue loops e1, e2 and one red loop f with e_i f = f e_{3-i}."""
    edges = [Edge("e1", "v", "v", 1), Edge("e2", "v", "v", 1), Edge("f", "v", "v", 2)]
    squares = [(("e1", "f"), ("f", "e2")), (("e2", "f"), ("f", "e1"))]
    return KGraph(["v"], edges, squares)


def grid_2graph() -> KGraph:
    """Two blue and two red loops with e_i f_j = f_i e_j."""
    edges = [Edge("e1", "v", "v", 1), Edge("e2", "v", "v", 1),
             Edge("f1", "v", "v", 2), Edge("f2", "v", "v", 2)]
    squares = [((f"e{i}", f"f{j}"), (f"f{i}", f"e{j}")) for i in (1, 2) for j in (1, 2)]
    return KGraph(["v"], edges, squares)


def fan_1graph() -> KGraph:
    """Two parallel edges w -> v and a loop at w; read as a finite window of an infinite fan."""
    return KGraph(["v", "w"], [Edge("e1", "w", "v", 1), Edge("e2", "w", "v", 1), Edge("l", "w", "w", 1)], [])


def fan_2graph() -> KGraph:
    """The fan with a red loop at each vertex; the red loops swap e1 and e2."""
    edges = [Edge("e1", "w", "v", 1), Edge("e2", "w", "v", 1), Edge("l", "w", "w", 1),
             Edge("f", "v", "v", 2), Edge("g", "w", "w", 2)]
    squares = [(("e1", "g"), ("f", "e2")), (("e2", "g"), ("f", "e1")), (("l", "g"), ("g", "l"))]
    return KGraph(["v", "w"], edges, squares)


def two_loops_apart() -> GraphPath:
    return GraphPath(["v", "w"], [Edge("a", "v", "v"), Edge("b", "w", "w")])


def arrow_into_loop() -> GraphPath:
    """An edge x from w to v with a loop a at v."""
    return GraphPath(["v", "w"], [Edge("a", "v", "v"), Edge("x", "w", "v")])


def edge_onto_loop() -> GraphPath:
    """An edge x with domain w and target v, and a loop b at w; no sources."""
    return GraphPath(["v", "w"], [Edge("x", "w", "v"), Edge("b", "w", "w")])


def absorbing_monoid() -> ExplicitFinite:
    """{1, c, z} with every product of non-identities equal to z; not left cancellative."""
    return ExplicitFinite(["v"], [("c", "v", "v"), ("z", "v", "v")],
                          {(f, g): "z" for f in "cz" for g in "cz"})


def cyclic_group_2() -> ExplicitFinite:
    return ExplicitFinite(["v"], [("u", "v", "v")], {("u", "u"): "v"})


def unit_fixing_arrow() -> ExplicitFinite:
    """Objects v, w; u a unit loop at v with u u = 1_v; a: w -> v with u a = a."""
    return ExplicitFinite(["v", "w"], [("u", "v", "v"), ("a", "w", "v")],
                          {("u", "u"): "v", ("u", "a"): "a"})


REFERENCE = {
    "free2": free_monoid,
    "nat": naturals,
    "b3": braid3,
    "square": square_2graph,
    "flip": flip_2graph,
    "grid": grid_2graph,
    "ra_abc": right_angled_abc,
    "affine_a2": affine_a2,
}
