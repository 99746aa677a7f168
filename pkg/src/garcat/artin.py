"""Artin-Tits monoids: word equivalence, right reversing, Garside families.

Elements are canonical words: the shortlex-least word (atoms ordered as
declared) among all words equivalent under the braid relations.  The relations
preserve length, so equivalence classes are finite and are enumerated by
breadth-first search.
"""

from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass
from typing import Sequence

from .core import (
    Category,
    CompositionError,
    FuelExhausted,
    Morphism,
    StructuralError,
    UnsupportedClass,
    Verdict,
    sort_key,
)
from .garside import GarsideFamily

VERTEX = "*"
INF = None


def alternating(a: str, b: str, m: int) -> tuple[str, ...]:
    return tuple(a if i % 2 == 0 else b for i in range(m))


@dataclass(frozen=True)
class CoxeterData:
    atoms: tuple[str, ...]
    m: dict  # frozenset({a, b}) -> int, or None for infinity

    def entry(self, a: str, b: str):
        if a == b:
            return 1
        return self.m.get(frozenset((a, b)), INF)

    @property
    def irreducible(self) -> bool:
        if not self.atoms:
            return True
        seen = {self.atoms[0]}
        queue = deque(seen)
        while queue:
            a = queue.popleft()
            for b in self.atoms:
                if b not in seen and self.entry(a, b) != 2:
                    seen.add(b)
                    queue.append(b)
        return len(seen) == len(self.atoms)

    @property
    def right_angled(self) -> bool:
        return all(self.entry(a, b) in (2, INF) for a, b in itertools.combinations(self.atoms, 2))


@dataclass(frozen=True)
class Complement:
    u_prime: tuple[str, ...]
    v_prime: tuple[str, ...]


@dataclass(frozen=True)
class Empty:
    clash: tuple[str, str]


@dataclass(frozen=True)
class OutOfFuel:
    fuel: int
    state: tuple


class ArtinTits(Category):
    backend = "artin"
    group_embeddable = True

    def __init__(self, data: CoxeterData, fuel: int | None = None):
        if not data.atoms:
            raise StructuralError("atoms", "the empty category is not allowed")
        if len(set(data.atoms)) != len(data.atoms):
            raise StructuralError("atoms", "duplicate atom")
        for key, v in data.m.items():
            if len(key) != 2 or not key <= set(data.atoms):
                raise StructuralError("m", f"entry for {sorted(key)} refers to unknown atoms")
            if v is not INF and v < 2:
                raise StructuralError("m", f"entry {v} is below 2")
        self.data = data
        self.objects = (VERTEX,)
        self.atoms = tuple(Morphism((a,), VERTEX, VERTEX) for a in data.atoms)
        self._rank = {a: i for i, a in enumerate(data.atoms)}
        self._rels = []
        for a, b in itertools.permutations(data.atoms, 2):
            m = data.entry(a, b)
            if m is not INF:
                self._rels.append((alternating(a, b, m), alternating(b, a, m)))
        finite = [data.entry(a, b) for a, b in itertools.combinations(data.atoms, 2)]
        self.max_m = max([x for x in finite if x is not INF], default=2)
        self.fuel = fuel
        self._class: dict[tuple, frozenset] = {}
        self._canon: dict[tuple, tuple] = {}
        self._div: dict = {}

    # -- word problem --------------------------------------------------------
    def word_class(self, word: tuple[str, ...]) -> frozenset:
        hit = self._class.get(word)
        if hit is not None:
            return hit
        seen = {word}
        queue = deque([word])
        while queue:
            w = queue.popleft()
            for lhs, rhs in self._rels:
                n = len(lhs)
                for i in range(len(w) - n + 1):
                    if w[i:i + n] == lhs:
                        x = w[:i] + rhs + w[i + n:]
                        if x not in seen:
                            seen.add(x)
                            queue.append(x)
        cls = frozenset(seen)
        best = min(cls, key=lambda w: [self._rank[a] for a in w])
        for w in cls:
            self._class[w] = cls
            self._canon[w] = best
        return cls

    def canonical(self, word: Sequence[str]) -> tuple[str, ...]:
        """Shortlex-least equivalent word.

        Its first letter is the least atom dividing the element on the left,
        so the form is built greedily.
        """
        word = tuple(word)
        hit = self._canon.get(word)
        if hit is not None:
            return hit
        out = []
        rest = word
        while rest:
            for a in self.data.atoms:
                q = self._divide_atom(a, rest)
                if q is not None:
                    out.append(a)
                    rest = q
                    break
        best = tuple(out)
        self._canon[word] = best
        return best

    def _divide_atom(self, a: str, w: tuple[str, ...]):
        """The word a \\ w, or None when a does not left-divide w.

        a divides w1 w' iff lcm(a, w1) = w1 y divides w1 w', iff y divides w'
        (cancel w1).  No lcm means no common multiple at all.
        """
        if not w:
            return None
        if w[0] == a:
            return w[1:]
        key = (a, w)
        if key in self._div:
            return self._div[key]
        m = self.data.entry(a, w[0])
        out = None
        if m is not INF:
            q = self._divide(alternating(a, w[0], m - 1), w[1:])
            if q is not None:
                out = alternating(w[0], a, m - 1) + q
        self._div[key] = out
        return out

    def _divide(self, u: Sequence[str], w: tuple[str, ...]):
        for a in u:
            w = self._divide_atom(a, w)
            if w is None:
                return None
        return w

    def morphism(self, word, at=None):
        word = tuple(word)
        for a in word:
            if a not in self._rank:
                raise CompositionError(f"unknown atom {a!r}")
        return Morphism(self.canonical(word), VERTEX, VERTEX)

    def left_quotient(self, a, b):
        q = self._divide(a.word, b.word)
        return None if q is None else self.morphism(q)

    def right_quotient(self, a, b):
        # the relations are stable under reading words backwards
        q = self._divide(a.word[::-1], b.word[::-1])
        return None if q is None else self.morphism(q[::-1])

    def default_fuel(self, u, v) -> int:
        if self.fuel is not None:
            return self.fuel
        return max(64, 8 * (len(u) + len(v) + 1) ** 2 * self.max_m)

    def mcm_set(self, a, b):
        res = reverse(self, a.word, b.word, self.default_fuel(a.word, b.word))
        if isinstance(res, Empty):
            return ()
        if isinstance(res, OutOfFuel):
            raise FuelExhausted(res.fuel, res.state)
        return (self.morphism(a.word + res.v_prime),)

    def lcm(self, a: Morphism, b: Morphism) -> Morphism | None:
        ms = self.mcm_set(a, b)
        return ms[0] if ms else None


def _complement(data: CoxeterData, a: str, b: str):
    """Right complement: words (x, y) with a x = b y minimal; None if m = inf."""
    if a == b:
        return (), ()
    m = data.entry(a, b)
    if m is INF:
        return None
    # a . alt(b,a,m-1) = alt(a,b,m) = alt(b,a,m) = b . alt(a,b,m-1)
    return alternating(b, a, m - 1), alternating(a, b, m - 1)


def reverse(cat: ArtinTits, u: Sequence[str], v: Sequence[str], fuel: int):
    """Right reversing of u^-1 v.

    Returns Complement(u', v') with u v' = v u' = lcm(u, v), Empty when the
    cones are disjoint, or OutOfFuel.
    """
    data = cat.data
    word = [(x, -1) for x in reversed(tuple(u))] + [(x, 1) for x in v]
    steps = 0
    start = 0
    while True:
        # letters left of the last rewrite hold no negative-positive pair
        i = next((j for j in range(start, len(word) - 1) if word[j][1] < 0 and word[j + 1][1] > 0), None)
        if i is None:
            break
        if steps >= fuel:
            return OutOfFuel(fuel, tuple(word))
        steps += 1
        a, b = word[i][0], word[i + 1][0]
        comp = _complement(data, a, b)
        if comp is None:
            return Empty((a, b))
        x, y = comp
        # a^-1 b = x y^-1
        word[i:i + 2] = [(c, 1) for c in x] + [(c, -1) for c in reversed(y)]
        start = max(i - 1, 0)
    pos = tuple(x for x, s in word if s > 0)
    neg = tuple(x for x, s in reversed(word) if s < 0)
    return Complement(neg, pos)


def spherical_probe(cat: ArtinTits, fuel: int = 10_000) -> Verdict:
    cache = cat.__dict__.setdefault("_spherical", {})
    if fuel not in cache:
        cache[fuel] = _spherical_probe(cat, fuel)
    return cache[fuel]


def _spherical_probe(cat, fuel):
    delta = (cat.data.atoms[0],)
    for a in cat.data.atoms[1:]:
        res = reverse(cat, delta, (a,), fuel)
        if isinstance(res, Empty):
            return Verdict.fail({"pair": (cat.morphism(delta), cat.atom(a)), "reason": "empty lcm"})
        if isinstance(res, OutOfFuel):
            return Verdict.unknown(fuel, {"pair": (cat.morphism(delta), cat.atom(a))},
                                   note="reversing did not terminate")
        delta = cat.canonical(delta + res.v_prime)
    return Verdict.ok({"delta": cat.morphism(delta)}, structural=True)


def left_reversibility_probe(cat: ArtinTits, fuel: int = 10_000) -> Verdict:
    sph = spherical_probe(cat, fuel)
    if sph.holds:
        return Verdict.ok({"reason": "spherical", "delta": sph.certificate["delta"]}, structural=True)
    for a, b in itertools.combinations(cat.data.atoms, 2):
        if cat.data.entry(a, b) is INF:
            return Verdict.fail({"pair": (cat.atom(a), cat.atom(b))}, structural=True)
    if sph.fails:
        return Verdict.fail(sph.certificate, structural=True)
    return Verdict.unknown(fuel, note="no disjoint pair found and sphericity undecided")


def garside_family(cat: ArtinTits, fuel: int = 10_000) -> GarsideFamily:
    sph = spherical_probe(cat, fuel)
    if sph.holds:
        delta = sph.certificate["delta"]
        divisors = [x for x in cat.ball(VERTEX, len(delta.word))
                    if not x.is_identity and cat.left_divides(x, delta)]
        return GarsideFamily(cat, divisors, certificate=f"divisors of Delta = {delta}")
    if cat.data.right_angled:
        atoms = cat.data.atoms
        letters = []
        for r in range(1, len(atoms) + 1):
            for clique in itertools.combinations(atoms, r):
                if all(cat.data.entry(a, b) == 2 for a, b in itertools.combinations(clique, 2)):
                    letters.append(cat.morphism(clique))
        return GarsideFamily(cat, letters, certificate="products over cliques of the commutation graph")
    raise UnsupportedClass("finite Garside families for non-spherical, non-right-angled monoids "
                           "(the low-elements construction) are out of scope")


def lr_sets(cat: ArtinTits, x: Morphism) -> tuple[frozenset, frozenset]:
    L = frozenset(a for a in cat.atoms if cat.left_divides(a, x))
    R = frozenset(a for a in cat.atoms if cat.right_divides(a, x))
    return L, R


def at_classification_regression(cat: ArtinTits, family: GarsideFamily | None = None,
                                 fuel: int = 10_000) -> dict:
    """Predicted lattice of closed invariant subspaces for irreducible monoids."""
    from .invariants import InvariantPair, closure

    if not cat.data.irreducible:
        raise UnsupportedClass("the classification targets cover irreducible monoids only")
    family = family or garside_family(cat, fuel)
    S = frozenset(family.letters)
    v = frozenset({VERTEX})
    sph = spherical_probe(cat, fuel)
    if sph.holds:
        delta = sph.certificate["delta"]
        chain = [InvariantPair(frozenset(), frozenset()), InvariantPair(frozenset({delta}), frozenset()),
                 InvariantPair(S, frozenset()), InvariantPair(S, v)]
        seen = []
        for p in chain:
            if p not in seen:
                seen.append(p)
        return {"spherical": True, "pairs": seen, "boundary": InvariantPair(frozenset({delta}), frozenset())}
    mechanism = {}
    for t in family.letters:
        mechanism[t] = closure(family, InvariantPair(frozenset({t}), frozenset()))
    pairs = [InvariantPair(frozenset(), frozenset()), InvariantPair(S, frozenset()), InvariantPair(S, v)]
    return {"spherical": False, "pairs": pairs, "boundary": InvariantPair(S, frozenset()),
            "mechanism": mechanism,
            "mechanism_holds": all(p == InvariantPair(S, frozenset()) for p in mechanism.values())}
