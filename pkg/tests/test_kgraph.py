import itertools

import pytest

from garcat import fixtures as F
from garcat.core import DomainError, Edge, GraphPath, StructuralError
from garcat.invariants import boundary_pair, enumerate_pairs, is_admissible, is_h_invariant, make_pair
from garcat.kgraph import (
    KGraph,
    build_garside_family,
    check_conditions,
    hereditary_saturated_enumerate,
    hereditary_to_pair,
    is_hereditary,
    is_saturated,
    pair_to_hereditary,
)

SQ = F.square_2graph()
SQF = build_garside_family(SQ)


def names(ms):
    return {m.render() for m in ms}


def test_family_of_square():
    assert names(SQF.letters) == {"e", "f", "ef"}


def test_family_of_one_graph_is_edge_set():
    g = KGraph(["v", "w"], [Edge("x", "w", "v"), Edge("b", "w", "w")], [])
    assert names(build_garside_family(g).letters) == {"x", "b"}


def test_family_of_flip():
    fam = build_garside_family(F.flip_2graph())
    assert len(fam.letters) == 2 + 1 + 2


def test_factorization_is_unique():
    fl = F.flip_2graph()
    x = fl.parse_word("e1 f e1 f")
    head, tail = fl.factor(x, (1, 1))
    assert fl.compose(head, tail) == x
    assert fl.degree(head) == (1, 1)


def test_bad_squares():
    edges = [Edge("e", "v", "v", 1), Edge("f", "v", "v", 2), Edge("g", "v", "v", 1)]
    with pytest.raises(StructuralError):
        KGraph(["v"], edges, [(("e", "g"), ("g", "e"))])
    with pytest.raises(StructuralError):
        KGraph(["v"], edges, [(("e", "f"), ("f", "e")), (("e", "f"), ("f", "g"))])


def test_missing_square_is_reported():
    g = KGraph(["v"], [Edge("e", "v", "v", 1), Edge("f", "v", "v", 2)], [])
    assert not g.validate().valid


def test_conditions_examples():
    ef = SQ.parse_word("ef")
    res = check_conditions(SQF, make_pair([ef]))
    assert all(res[k].holds for k in "AIC")
    res = check_conditions(SQF, make_pair([SQ.atom("e")]))
    assert res["I"].fails
    res = check_conditions(SQF, make_pair())
    assert all(res[k].holds for k in "AIC")


@pytest.mark.parametrize("make", [F.square_2graph, F.flip_2graph, F.grid_2graph])
def test_conditions_agree_with_predicates(make):
    fam = build_garside_family(make())
    cat = fam.category
    for r in range(len(fam.letters) + 1):
        for T in itertools.combinations(fam.letters, r):
            for D in ([], list(cat.objects)):
                pair = make_pair(T, D)
                res = check_conditions(fam, pair)
                assert res["A"].holds == is_admissible(fam, pair).holds
                assert res["I"].holds == is_h_invariant(fam, pair).holds


def test_hereditary_saturated_examples():
    one = GraphPath(["v"], [Edge("a", "v", "v")])
    assert hereditary_saturated_enumerate(_as_kgraph(one)) == [frozenset(), frozenset({"v"})]
    apart = _as_kgraph(F.two_loops_apart())
    assert set(hereditary_saturated_enumerate(apart)) == {frozenset(), frozenset({"v"}), frozenset({"w"}),
                                                          frozenset({"v", "w"})}
    onto = _as_kgraph(F.edge_onto_loop())
    assert hereditary_saturated_enumerate(onto) == [frozenset(), frozenset({"v", "w"})]
    assert is_hereditary(onto, frozenset({"w"})) and not is_saturated(onto, frozenset({"w"}))


def test_sources_are_rejected():
    with pytest.raises(DomainError):
        hereditary_saturated_enumerate(_as_kgraph(F.arrow_into_loop()))


def test_pair_to_hereditary_examples():
    bp = boundary_pair(SQF)
    assert pair_to_hereditary(SQF, bp, bp) == frozenset()
    assert pair_to_hereditary(SQF, make_pair(), bp) == frozenset({"v"})


@pytest.mark.parametrize("make", [F.edge_onto_loop, F.two_loops_apart])
def test_round_trip_on_two_vertex_graphs(make):
    kg = _as_kgraph(make())
    fam = build_garside_family(kg)
    bp = boundary_pair(fam)
    hs = hereditary_saturated_enumerate(kg)
    pairs = enumerate_pairs(fam, within=bp).pairs
    assert len(pairs) == len(hs)
    for H in hs:
        assert pair_to_hereditary(fam, hereditary_to_pair(fam, H, bp), bp) == H
    for p in pairs:
        assert hereditary_to_pair(fam, pair_to_hereditary(fam, p, bp), bp) == p


def _as_kgraph(g: GraphPath) -> KGraph:
    return KGraph(list(g.objects), list(g.edges), [])
