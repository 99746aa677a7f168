"""Garside families: heads, normality, greedy normal decompositions."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Sequence

from .core import (
    Category,
    CheckResult,
    CompositionError,
    DomainError,
    GarcatError,
    Morphism,
    ValidationReport,
    Verdict,
    sort_key,
)


class GarsideError(GarcatError):
    """The letters do not behave like a Garside family on some input."""


@dataclass(frozen=True)
class NormalityCheck:
    ok: bool
    junction: int | None = None
    witness: Morphism | None = None

    def __bool__(self) -> bool:
        return self.ok


@dataclass(frozen=True)
class NormalWord:
    letters: tuple[Morphism, ...]
    valid: bool = True

    def __len__(self) -> int:
        return len(self.letters)

    def __iter__(self):
        return iter(self.letters)

    def render(self) -> str:
        return ".".join(str(s) for s in self.letters) if self.letters else "1"


class GarsideFamily:
    """An indexed set of letters in a category with the greedy services.

    The letters must be non-units and pairwise not =*-equivalent.  Heads are
    memoized per canonical morphism; the memo is written by one thread only in
    this library and results never depend on evaluation order.
    """

    def __init__(self, category: Category, letters: Iterable[Morphism], locally_finite: bool = True,
                 certificate: str = ""):
        self.category = category
        letters = sorted(set(letters), key=sort_key)
        if not letters:
            raise DomainError("a Garside family needs at least one letter")
        for s in letters:
            if category.is_unit(s):
                raise DomainError(f"letter {s} is invertible")
        self.letters: tuple[Morphism, ...] = tuple(letters)
        self.index = {s: i for i, s in enumerate(self.letters)}
        self.locally_finite = locally_finite
        self.certificate = certificate
        self._into: dict[str, tuple[Morphism, ...]] = {}
        for v in category.objects:
            self._into[v] = tuple(s for s in self.letters if s.dst == v)
        self._head: dict[Morphism, Morphism] = {}
        self._normal_pair: dict[tuple[Morphism, Morphism], NormalityCheck] = {}

    def __contains__(self, m: Morphism) -> bool:
        return m in self.index

    def __len__(self) -> int:
        return len(self.letters)

    def letters_into(self, v: str) -> tuple[Morphism, ...]:
        return self._into.get(v, ())

    def letters_from(self, v: str) -> tuple[Morphism, ...]:
        return tuple(s for s in self.letters if s.src == v)

    def in_sharp(self, x: Morphism) -> bool:
        """Membership in S C* together with the units."""
        cat = self.category
        if cat.is_unit(x):
            return True
        if cat.units_trivial:
            return x in self.index
        return any(cat.left_divides(s, x) and cat.is_unit(cat.left_quotient(s, x))
                   for s in self.letters_into(x.dst))

    # -- heads -----------------------------------------------------------------
    def head(self, a: Morphism) -> Morphism:
        """The maximal left divisor of ``a`` lying in the family."""
        h = self._head.get(a)
        if h is not None:
            return h
        cat = self.category
        if cat.is_unit(a):
            raise DomainError(f"{a} is invertible and has no head")
        best = None
        divisors = []
        for s in self.letters_into(a.dst):
            if cat.left_divides(s, a):
                divisors.append(s)
                if best is None or cat.left_divides(best, s):
                    best = s
        if best is None or not all(cat.left_divides(r, best) for r in divisors):
            raise GarsideError(f"no unique maximal letter divides {a}")
        self._head[a] = best
        return best

    def head_incremental(self, prefix: Sequence[Morphism], r1: Morphism) -> Morphism:
        """H(a_1 ... a_n r_1) by the nested formula H(a_1 H(a_2 ... H(a_n r_1)))."""
        cat = self.category
        items = list(prefix)
        if not items:
            return self.head(r1)
        for x, y in zip(items + [r1], items[1:] + [r1]):
            if x is not y and x.src != y.dst:
                raise CompositionError(f"{x} and {y} are not composable")
        h = r1
        for a in reversed(items):
            h = self.head(cat.compose(a, h))
        return h

    # -- normality -----------------------------------------------------------
    def junction_ok(self, s: Morphism, t: Morphism) -> NormalityCheck:
        key = (s, t)
        hit = self._normal_pair.get(key)
        if hit is not None:
            return hit
        cat = self.category
        st = cat.compose(s, t)
        res = NormalityCheck(True)
        for r in self.letters_into(s.dst):
            if cat.left_divides(r, st) and not cat.left_divides(r, s):
                res = NormalityCheck(False, 0, r)
                break
        self._normal_pair[key] = res
        return res

    def is_normal(self, path: Sequence[Morphism]) -> NormalityCheck:
        path = list(path)
        for k, (s, t) in enumerate(zip(path, path[1:])):
            if s.src != t.dst:
                raise CompositionError(f"{s} and {t} are not composable")
        for k, (s, t) in enumerate(zip(path, path[1:])):
            res = self.junction_ok(s, t)
            if not res.ok:
                return NormalityCheck(False, k, res.witness)
        return NormalityCheck(True)

    def normal_successors(self, s: Morphism) -> tuple[Morphism, ...]:
        return tuple(t for t in self.letters_into(s.src) if self.junction_ok(s, t).ok)

    # -- decompositions ----------------------------------------------------------
    def normal_decompose(self, a: Morphism) -> NormalWord:
        cat = self.category
        out = []
        rest = a
        while not cat.is_unit(rest):
            h = self.head(rest)
            out.append(h)
            rest = cat.left_quotient(h, rest)
            if len(out) > 10 * (cat.length(a) + 1) + 10:
                raise GarsideError(f"greedy peeling of {a} does not terminate")
        if out and not rest.is_identity:
            out[-1] = cat.compose(out[-1], rest)
        return NormalWord(tuple(out))

    def norm(self, a: Morphism) -> int:
        return len(self.normal_decompose(a))

    def product(self, letters: Sequence[Morphism], at: str | None = None) -> Morphism:
        if not letters:
            if at is None:
                raise CompositionError("empty product needs an object")
            return self.category.identity(at)
        return self.category.product(letters)

    def push(self, s: Morphism, word: Sequence[Morphism]) -> tuple[Morphism, ...]:
        """Normal form of s times a normal word, by the carry (domino) rule."""
        cat = self.category
        out = []
        carry = s
        for r in word:
            if cat.is_unit(carry):
                if not carry.is_identity:
                    r = cat.compose(carry, r)
                    carry = cat.identity(r.src)
                    out.append(r)
                    continue
                out.append(r)
                continue
            m = cat.compose(carry, r)
            t = self.head(m)
            out.append(t)
            carry = cat.left_quotient(t, m)
        if not cat.is_unit(carry):
            out.extend(self.normal_decompose(carry).letters)
        elif not carry.is_identity and out:
            out[-1] = cat.compose(out[-1], carry)
        return tuple(out)

    def to_json(self) -> dict:
        return {"letters": [s.to_json() for s in self.letters], "locally_finite": self.locally_finite}


def validate_family(cat: Category, letters: Sequence[Morphism], depth: int) -> ValidationReport:
    """Check the Garside axioms for ``letters`` on balls of radius ``depth``."""
    for s in letters:
        if cat.is_unit(s):
            raise DomainError(f"letter {s} is invertible")
    letters = sorted(set(letters), key=sort_key)
    index = set(letters)
    checks = []

    def sharp(x):
        if cat.is_unit(x) or x in index:
            return True
        return any(cat.left_divides(s, x) and cat.is_unit(cat.left_quotient(s, x)) for s in letters)

    # generation: every ball element is a product of letters and units
    bad = None
    for v in cat.objects:
        reach = {cat.identity(v)}
        frontier = [cat.identity(v)]
        for _ in range(depth):
            nxt = []
            for x in frontier:
                for s in letters:
                    if s.dst == x.src:
                        y = cat.star_rep(cat.compose(x, s))
                        if y not in reach:
                            reach.add(y)
                            nxt.append(y)
            frontier = nxt
        for x in cat.ball(v, depth):
            if cat.star_rep(x) not in reach:
                bad = x
                break
        if bad:
            break
    checks.append(CheckResult("generation", Verdict.fail(bad, depth) if bad else Verdict.ok(depth=depth)))

    bad = None
    for s, t in itertools.combinations(letters, 2):
        if cat.left_divides(s, t) and cat.left_divides(t, s):
            bad = (s, t)
            break
    checks.append(CheckResult("transversality", Verdict.fail(bad) if bad else Verdict.ok(structural=True)))

    # right divisors of letters stay in S#
    bad = None
    for s in letters:
        for y in cat.ball(s.dst, cat.length(s)):
            x = cat.left_quotient(y, s)
            if x is not None and not sharp(x):
                bad = (s, y, x)
                break
        if bad:
            break
    checks.append(CheckResult("right-divisor closure", Verdict.fail(bad) if bad else Verdict.ok(depth=depth)))

    # closure under mcms of letter pairs
    bad = None
    for r, s in itertools.combinations_with_replacement(letters, 2):
        if r.dst != s.dst:
            continue
        for m in cat.mcm_set(r, s):
            if not sharp(m):
                bad = {"letters": (r, s), "mcm": m}
                break
        if bad:
            break
    checks.append(CheckResult("right-comultiple closure",
                              Verdict.fail(bad) if bad else Verdict.ok(structural=True)))
    checks.append(CheckResult("local boundedness",
                              Verdict.ok({"reason": "finitely many letters per vertex"}, structural=True)))
    return ValidationReport(checks)
