import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from garcat import fixtures as F
from garcat.artin import garside_family
from garcat.core import DomainError, Status
from garcat.garside import GarsideFamily, validate_family
from garcat.kgraph import build_garside_family

from . import oracles

B3 = F.braid3()
B3F = garside_family(B3)
SQ = F.square_2graph()
SQF = build_garside_family(SQ)
FREE = F.free_monoid()
FREEF = GarsideFamily(FREE, FREE.atoms)


def w(cat, text):
    return cat.parse_word(text, at=cat.objects[0])


def test_validate_free_atoms():
    rep = validate_family(FREE, FREE.atoms, 4)
    assert rep.valid
    assert all(c.verdict.holds for c in rep.checks)


def test_validate_b3_divisors_of_delta():
    assert all(c.verdict.holds for c in validate_family(B3, B3F.letters, 4).checks)


def test_b3_atoms_alone_are_not_closed_under_comultiples():
    rep = validate_family(B3, B3.atoms, 3)
    v = rep.get("right-comultiple closure")
    assert v.status is Status.FAILS


def test_units_are_not_letters():
    z2 = F.cyclic_group_2()
    with pytest.raises(DomainError):
        GarsideFamily(z2, [z2.atom("u")])


@pytest.mark.parametrize("text,head", [("aa", "a"), ("abab", "aba"), ("bab", "aba")])
def test_head_b3(text, head):
    assert B3F.head(w(B3, text)) == w(B3, head)


def test_head_square():
    assert SQF.head(w(SQ, "fe")).word == ("e", "f")


def test_head_of_unit_raises():
    with pytest.raises(DomainError):
        B3F.head(B3.identity("*"))


def test_junctions():
    assert B3F.junction_ok(w(B3, "aba"), w(B3, "b")).ok
    # aab has the one-word class {aab}, so its head is a and (a, ab) is normal
    assert oracles.head(B3F, w(B3, "aab")) == B3.atom("a")
    assert B3F.junction_ok(w(B3, "a"), w(B3, "ab")).ok
    bad = B3F.junction_ok(w(B3, "a"), w(B3, "b"))
    assert not bad.ok
    assert bad.witness == w(B3, "ab")
    assert SQF.junction_ok(SQ.atom("e"), SQ.atom("e")).ok


def test_normal_decompose_examples():
    nf = B3F.normal_decompose(w(B3, "abab"))
    assert nf.render() == "aba.b" and B3F.norm(w(B3, "abab")) == 2
    assert B3F.normal_decompose(B3.identity("*")).letters == ()
    assert SQF.normal_decompose(w(SQ, "eef")).render() == "ef.e"


def test_head_incremental_examples():
    a, b = B3.atom("a"), B3.atom("b")
    assert B3F.head_incremental([a], b) == w(B3, "ab")
    assert SQF.head_incremental([SQ.atom("f")], SQ.atom("e")).word == ("e", "f")
    assert B3F.head_incremental([a, a], b) == oracles.head(B3F, w(B3, "aab"))


@pytest.mark.parametrize("fam,alphabet,n", [(B3F, "ab", 7), (FREEF, "ab", 8), (SQF, "ef", 6)])
def test_normal_form_matches_peeling_oracle(fam, alphabet, n):
    cat = fam.category
    for word in oracles.words(alphabet, n):
        x = cat.morphism(word, at=cat.objects[0])
        assert fam.normal_decompose(x).letters == oracles.peel(fam, x)


@pytest.mark.parametrize("fam", [B3F, SQF, build_garside_family(F.flip_2graph())])
def test_is_normal_accepts_exactly_greedy_outputs(fam):
    for path in oracles.letter_paths(fam, 3):
        x = fam.category.product(path)
        assert bool(fam.is_normal(path)) == (fam.normal_decompose(x).letters == path), path


FAMILIES = {"b3": B3F, "square": SQF, "ra": garside_family(F.right_angled_abc()),
            "flip": build_garside_family(F.flip_2graph())}


@st.composite
def element(draw, name):
    fam = FAMILIES[name]
    cat = fam.category
    v = cat.objects[0]
    word = draw(st.lists(st.sampled_from([a.word[0] for a in cat.atoms]), max_size=8))
    return cat.morphism(word, at=v)


@settings(max_examples=60, deadline=None)
@given(st.sampled_from(sorted(FAMILIES)), st.data())
def test_decomposition_multiplies_back(name, data):
    fam = FAMILIES[name]
    x = data.draw(element(name))
    nf = fam.normal_decompose(x).letters
    assert fam.product(nf, at=x.dst) == x
    assert fam.is_normal(nf).ok


@settings(max_examples=60, deadline=None)
@given(st.sampled_from(sorted(FAMILIES)), st.data())
def test_push_is_left_multiplication(name, data):
    fam = FAMILIES[name]
    x = data.draw(element(name))
    s = data.draw(st.sampled_from(fam.letters))
    nf = fam.normal_decompose(x).letters
    assert fam.push(s, nf) == fam.normal_decompose(fam.category.compose(s, x)).letters


@settings(max_examples=60, deadline=None)
@given(st.sampled_from(sorted(FAMILIES)), st.data())
def test_heads_are_divisors_in_family(name, data):
    fam = FAMILIES[name]
    x = data.draw(element(name))
    if x.is_identity:
        return
    h = fam.head(x)
    assert h in fam and fam.category.left_divides(h, x)
    assert all(not fam.category.left_divides(s, x) or fam.category.left_divides(s, h) for s in fam.letters)
