import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from garcat.artin import ArtinTits, INF
from garcat.core import ExplicitFinite, GraphPath, ParseError
from garcat.kgraph import KGraph
from garcat.specfile import CategorySpec, load, parse_spec, print_spec

B3_TEXT = "backend artin\natoms a b\nm a b 3\n"
SQUARE_TEXT = """# single square
backend kgraph
vertex v
edge e v v color 1
edge f v v color 2
square ef = fe
"""


def test_b3_spec():
    spec = parse_spec(B3_TEXT)
    assert spec.backend == "artin" and spec.atoms == ["a", "b"] and spec.m == [("a", "b", 3)]
    cat = spec.build()
    assert isinstance(cat, ArtinTits)
    assert cat.parse_word("aba") == cat.parse_word("bab")


def test_square_spec():
    cat = load(SQUARE_TEXT)
    assert isinstance(cat, KGraph)
    assert cat.parse_word("ef") == cat.parse_word("fe")


def test_spaced_square_and_inf():
    text = "backend kgraph\nvertex v\nedge e1 v v color 1\nedge f1 v v color 2\nsquare e1 f1 = f1 e1\n"
    assert parse_spec(text).squares == [(("e1", "f1"), ("f1", "e1"))]
    spec = parse_spec("backend artin\natoms a b c\nm a c 2\nm a b inf\n")
    assert spec.m[1] == ("a", "b", INF)


def test_other_backends():
    assert isinstance(load("backend graphpath\nvertex v\nedge a v v\n"), GraphPath)
    text = "backend explicit\nvertex v\nmor u v v\ncomp u u = v\n"
    assert isinstance(load(text), ExplicitFinite)


@pytest.mark.parametrize("text,line,col", [
    ("backend artin\natoms a b\nm a b 1\n", 3, 7),
    ("backend artin\natoms a b\n  m a b x\n", 3, 9),
    ("atoms a b\n", 1, 1),
    ("backend quux\n", 1, 1),
    ("backend artin\nversion 2\n", 2, 1),
    ("backend artin\nedge a v v\n", 2, 1),
    ("backend kgraph\nvertex v\nedge e v v color blue\n", 3, 18),
    ("backend kgraph\nvertex v\nedge e v v\nsquare ex = xe\n", 4, 8),
    ("", 1, 1),
])
def test_parse_errors_carry_location(text, line, col):
    with pytest.raises(ParseError) as info:
        parse_spec(text)
    assert (info.value.line, info.value.column) == (line, col)


def test_comments_and_blank_lines():
    spec = parse_spec("\n# hi\nbackend artin   # trailing\n\natoms a b # two\nm a b 3\n")
    assert spec == parse_spec(B3_TEXT)


@pytest.mark.parametrize("text", [B3_TEXT, SQUARE_TEXT, "backend explicit\nvertex v\nmor u v v\ncomp u u = v\n"])
def test_round_trip_examples(text):
    spec = parse_spec(text)
    assert parse_spec(print_spec(spec)) == spec


names = st.sampled_from(["a", "b", "c", "x1", "y2"])


@st.composite
def artin_specs(draw):
    atoms = draw(st.lists(names, min_size=1, max_size=4, unique=True))
    m = []
    for i, a in enumerate(atoms):
        for b in atoms[i + 1:]:
            if draw(st.booleans()):
                m.append((a, b, draw(st.sampled_from([2, 3, 4, INF]))))
    return CategorySpec("artin", atoms=atoms, m=m)


@st.composite
def kgraph_specs(draw):
    vs = draw(st.lists(st.sampled_from(["u", "v", "w"]), min_size=1, max_size=3, unique=True))
    n = draw(st.integers(1, 4))
    edges = [(f"e{i}", draw(st.sampled_from(vs)), draw(st.sampled_from(vs)), draw(st.integers(1, 2)))
             for i in range(n)]
    squares = []
    for _ in range(draw(st.integers(0, 2))):
        x, y, y2, x2 = (draw(st.sampled_from(edges))[0] for _ in range(4))
        squares.append(((x, y), (y2, x2)))
    return CategorySpec("kgraph", vertices=vs, edges=edges, squares=squares)


@settings(max_examples=60, deadline=None)
@given(st.one_of(artin_specs(), kgraph_specs()))
def test_round_trip_property(spec):
    assert parse_spec(print_spec(spec)) == spec
