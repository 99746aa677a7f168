"""Brute-force oracles, written against the raw presentations.

They avoid the quotient, head and reversing code under test: divisibility is
decided by searching for a cofactor (or, for Artin-Tits monoids, by
comparing word classes found through breadth-first search).
"""

from __future__ import annotations

import itertools

from garcat.artin import ArtinTits
from garcat.core import Morphism


def artin_class(cat: ArtinTits, word) -> frozenset:
    return cat.word_class(tuple(word))


def artin_equal(cat: ArtinTits, u, v) -> bool:
    return tuple(v) in artin_class(cat, u)


def divides(cat, a: Morphism, b: Morphism, radius: int | None = None) -> bool:
    if a.dst != b.dst:
        return False
    if cat.backend == "graphpath":
        # paths factor uniquely, so divisibility is the prefix order on words
        return b.word[:len(a.word)] == a.word
    if isinstance(cat, ArtinTits):
        n = len(a.word)
        ca = artin_class(cat, a.word)
        return any(w[:n] in ca for w in artin_class(cat, b.word))
    if radius is None:
        radius = max(1, len(b.word) - len(a.word))
    return any(cat.compose(a, x) == b for x in cat.ball(a.src, radius))


def cofactor(cat, a: Morphism, b: Morphism, radius: int | None = None):
    if cat.backend == "graphpath":
        return cat.morphism(b.word[len(a.word):], at=a.src) if divides(cat, a, b) else None
    if radius is None:
        radius = max(1, len(b.word) - len(a.word))
    for x in cat.ball(a.src, radius):
        if cat.compose(a, x) == b:
            return x
    return None


def head(family, x: Morphism) -> Morphism | None:
    cat = family.category
    cands = [s for s in family.letters if divides(cat, s, x)]
    top = [s for s in cands if all(divides(cat, t, s) for t in cands)]
    return top[0] if len(top) == 1 else None


def peel(family, x: Morphism) -> tuple[Morphism, ...]:
    """Maximal S-divisor peeling."""
    cat = family.category
    out = []
    while not cat.is_unit(x):
        h = head(family, x)
        out.append(h)
        x = cofactor(cat, h, x)
    return tuple(out)


class DivisorTable:
    """Left divisors of every element of a ball, found by multiplying out."""

    def __init__(self, cat, radius: int):
        self.cat = cat
        self.divs: dict[Morphism, set] = {}
        for a in cat.all_ball(radius):
            for x in cat.ball(a.src, radius - len(a.word)):
                z = cat.compose(a, x)
                if len(z.word) <= radius:
                    self.divs.setdefault(z, set()).add(a)

    def divides(self, a, b) -> bool:
        return a in self.divs.get(b, ())

    def mcm(self, a, b) -> set:
        common = [z for z, ds in self.divs.items() if a in ds and b in ds]
        return {z for z in common if not any(y != z and y in self.divs[z] for y in common)}


def mcm(cat, a: Morphism, b: Morphism, radius: int) -> set:
    return DivisorTable(cat, radius).mcm(a, b)


def words(alphabet, max_len, min_len=0):
    for n in range(min_len, max_len + 1):
        yield from itertools.product(alphabet, repeat=n)


def letter_paths(family, max_len):
    """All composable sequences of letters of length 1..max_len."""
    frontier = [(s,) for s in family.letters]
    for _ in range(max_len):
        yield from frontier
        frontier = [p + (t,) for p in frontier for t in family.letters if p[-1].src == t.dst]
