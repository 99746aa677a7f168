import random

import pytest

from garcat import fixtures as F
from garcat.artin import garside_family
from garcat.chars import CharacterSpace, Germ, cone, relative, sample_characters, union
from garcat.core import DomainError
from garcat.garside import GarsideFamily
from garcat.kgraph import build_garside_family

B3 = F.braid3()
B3S = CharacterSpace(garside_family(B3))
FREE = F.free_monoid()
FREES = CharacterSpace(GarsideFamily(FREE, FREE.atoms))
SQ = F.square_2graph()
SQS = CharacterSpace(build_garside_family(SQ))


def b3(text):
    return B3.parse_word(text, at="*")


def fw(text):
    return FREE.parse_word(text, at="v")


def test_eval_examples():
    assert B3S.eval(B3S.finite(b3("abab")), cone(b3("ab"))) == 1
    assert FREES.eval(FREES.vertex("v"), cone(fw("a"))) == 0
    assert B3S.eval(B3S.infinite([], [b3("aba")]), cone(b3("ba"))) == 1


def test_eval_unions_and_relative_ideals():
    chi = FREES.infinite([fw("a")], [fw("b")])
    assert FREES.eval(chi, union(fw("b"), fw("ab"))) == 1
    assert FREES.eval(chi, relative(fw("a"), [fw("aa")])) == 1
    assert FREES.eval(chi, relative(fw("a"), [fw("ab")])) == 0


def test_canonical_representation():
    a, b = fw("a"), fw("b")
    assert FREES.infinite([a, a], [a, a]) == FREES.infinite([], [a])
    assert FREES.infinite([b, a], [b, a]) == FREES.infinite([], [b, a])
    with pytest.raises(DomainError):
        B3S.infinite([], [b3("a"), b3("b")])  # a.b is not normal


def test_germ_apply_examples():
    a, b = fw("a"), fw("b")
    chi = FREES.infinite([b], [a])
    assert FREES.germ_apply(Germ(a, b, chi)) == FREES.infinite([a], [a])
    assert FREES.germ_apply(Germ(a, a, FREES.infinite([a], [b]))) == FREES.infinite([a], [b])
    delta = b3("aba")
    chi = B3S.infinite([delta], [delta])
    got = B3S.germ_apply(Germ(b3("ab"), delta, chi))
    assert got == B3S.left_multiply(b3("ab"), B3S.infinite([], [delta]))


def test_germ_outside_domain():
    with pytest.raises(DomainError):
        FREES.germ_apply(Germ(fw("a"), fw("b"), FREES.infinite([], [fw("a")])))


def test_germ_equality_examples():
    a = fw("a")
    chi = FREES.infinite([a], [fw("b")])
    assert FREES.germ_eq(Germ(a, a, chi), FREES.unit(chi))
    g1 = Germ(a, fw("b"), FREES.infinite([], [fw("b")]))
    g2 = Germ(fw("b"), a, FREES.infinite([], [a]))
    assert not FREES.germ_eq(g1, g2)
    delta = b3("aba")
    chi = B3S.infinite([], [delta])
    assert not B3S.germ_eq(Germ(b3("a"), b3("b"), chi), Germ(b3("b"), b3("a"), chi))
    assert B3S.germ_eq(Germ(b3("ab"), b3("a"), chi), Germ(b3("abb"), b3("ab"), chi))


def test_groupoid_examples():
    a, one = fw("a"), FREE.identity("v")
    chi = FREES.infinite([], [fw("b")])
    g = Germ(a, one, chi)
    h = Germ(one, a, FREES.germ_apply(g))
    assert FREES.germ_eq(FREES.germ_compose(h, g), FREES.unit(chi))
    e, f, v = SQ.atom("e"), SQ.atom("f"), SQ.identity("v")
    chi = SQS.infinite([], [SQ.parse_word("ef")])
    gf = Germ(f, v, chi)
    ge = Germ(e, v, SQS.germ_apply(gf))
    assert SQS.germ_eq(SQS.germ_compose(ge, gf), Germ(SQ.parse_word("ef"), v, chi))


def _random_germ(space, chi, rng, radius=2):
    cat = space.cat
    ds = [d for d in cat.ball(chi.vertex, radius) if space.contains_cone(chi, d)]
    d = rng.choice(ds)
    c = rng.choice([x for x in cat.all_ball(radius) if x.src == d.src])
    return Germ(c, d, chi)


def test_inverse_law_on_random_b3_germs():
    rng = random.Random(0)
    chars = sample_characters(B3S, 4)
    for _ in range(50):
        g = _random_germ(B3S, rng.choice(chars), rng, radius=4)
        rng_chi = B3S.germ_apply(g)
        assert B3S.germ_eq(B3S.germ_compose(g, B3S.germ_inverse(g)), B3S.unit(rng_chi))


def test_omega_max_examples():
    delta = b3("aba")
    assert B3S.in_omega_max(B3S.infinite([], [delta]), 4).holds
    assert FREES.in_omega_max(FREES.vertex("v"), 4).fails
    assert FREES.in_omega_max(FREES.infinite([], [fw("a")]), 4).holds
    assert FREES.in_omega_max(FREES.finite(fw("ab")), 4).fails


def test_limits():
    e, ef = SQ.atom("e"), SQ.parse_word("ef")
    assert SQS.limit_of_letters([ef, ef]).value == ef
    assert SQS.limit_of_letters([e, ef, e, ef]).value == e
    a, b = fw("a"), fw("b")
    assert FREES.limit_of_letters([a, b]).value == FREE.identity("v")
