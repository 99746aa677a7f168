"""Characters of the constructible ideals, represented by normal words.

A character is one of
  * ``Vertex(v)``: the character of the identity at v,
  * ``Finite(x)``: the principal character of a morphism x,
  * ``Infinite(pre, per)``: the character of the eventually periodic infinite
    normal word pre per per per ...

Germs ``[c d^-1, chi]`` act on characters by replacing a prefix d with c.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .core import CompositionError, DomainError, GarcatError, Morphism, Verdict, sort_key
from .garside import GarsideFamily

PUSH_HORIZON = 100_000


class NonPeriodic(GarcatError):
    """Re-normalization found no repeating state within the horizon."""


@dataclass(frozen=True)
class Character:
    kind: str  # "vertex", "finite" or "infinite"
    vertex: str
    morphism: Morphism | None = None
    preperiod: tuple[Morphism, ...] = ()
    period: tuple[Morphism, ...] = ()

    def __str__(self) -> str:
        if self.kind == "vertex":
            return f"chi_{self.vertex}"
        if self.kind == "finite":
            return f"chi_{self.morphism}"
        pre = ".".join(str(s) for s in self.preperiod)
        per = ".".join(str(s) for s in self.period)
        return f"chi_{pre}({per})^w" if pre else f"chi_({per})^w"

    def to_json(self) -> dict:
        out = {"kind": self.kind, "vertex": self.vertex}
        if self.kind == "finite":
            out["morphism"] = self.morphism.to_json()
        if self.kind == "infinite":
            out["preperiod"] = [list(s.word) for s in self.preperiod]
            out["period"] = [list(s.word) for s in self.period]
        return out


@dataclass(frozen=True)
class IdealExpr:
    positive: tuple[Morphism, ...]
    negative: tuple[Morphism, ...] = ()
    form: str = "union"

    def __post_init__(self):
        roots = {m.dst for m in self.positive + self.negative}
        if len(roots) > 1:
            raise DomainError("all cone roots must share a target vertex")
        if self.form == "union" and self.negative:
            raise DomainError("a union of cones has no negative part")
        if self.form == "relative" and len(self.positive) != 1:
            raise DomainError("a relative ideal has exactly one positive cone")


def cone(x: Morphism) -> IdealExpr:
    return IdealExpr((x,))


def union(*xs: Morphism) -> IdealExpr:
    return IdealExpr(tuple(xs))


def relative(x: Morphism, ys: Iterable[Morphism]) -> IdealExpr:
    return IdealExpr((x,), tuple(ys), "relative")


@dataclass(frozen=True)
class Germ:
    c: Morphism
    d: Morphism
    base: Character

    def __post_init__(self):
        if self.c.src != self.d.src:
            raise CompositionError(f"germ needs a common domain for {self.c} and {self.d}")


@dataclass(frozen=True)
class LimitResult:
    value: Morphism | None
    exact: bool
    window: int
    maximal: tuple[Morphism, ...] = ()

    @property
    def known(self) -> bool:
        return self.value is not None


class CharacterSpace:
    """Arithmetic on characters relative to a Garside family."""

    def __init__(self, family: GarsideFamily):
        self.family = family
        self.cat = family.category

    # -- constructors ------------------------------------------------------------
    def vertex(self, v: str) -> Character:
        self.cat.identity(v)
        return Character("vertex", v)

    def finite(self, x: Morphism) -> Character:
        if self.cat.is_unit(x):
            return Character("vertex", x.dst)
        return Character("finite", x.dst, morphism=self.cat.star_rep(x))

    def infinite(self, pre: Sequence[Morphism], per: Sequence[Morphism]) -> Character:
        pre, per = tuple(pre), tuple(per)
        if not per:
            raise DomainError("the period of an infinite word is nonempty")
        if per[0].dst != per[-1].src:
            raise DomainError("the period must be a closed path")
        path = pre + per + per
        for s in path:
            if s not in self.family:
                raise DomainError(f"{s} is not a letter of the family")
        if not self.family.is_normal(path):
            raise DomainError("the word is not normal")
        return self._canon(pre, per)

    def _canon(self, pre, per) -> Character:
        n = len(per)
        for d in range(1, n + 1):
            if n % d == 0 and per == per[:d] * (n // d):
                per = per[:d]
                break
        while pre and pre[-1] == per[-1]:
            per = (per[-1],) + per[:-1]
            pre = pre[:-1]
        v = pre[0].dst if pre else per[0].dst
        return Character("infinite", v, preperiod=pre, period=per)

    # -- letters and prefixes ----------------------------------------------------
    def letters(self, chi: Character, n: int) -> tuple[Morphism, ...]:
        """The first n letters (all letters for finite characters)."""
        if chi.kind == "vertex":
            return ()
        if chi.kind == "finite":
            return self.family.normal_decompose(chi.morphism).letters[:n]
        out = list(chi.preperiod[:n])
        i = 0
        while len(out) < n:
            out.append(chi.period[i % len(chi.period)])
            i += 1
        return tuple(out)

    def prefix(self, chi: Character, n: int) -> Morphism:
        if chi.kind == "vertex":
            return self.cat.identity(chi.vertex)
        if chi.kind == "finite":
            word = self.family.normal_decompose(chi.morphism).letters
            if n >= len(word):
                return chi.morphism
            return self.family.product(word[:n], at=chi.vertex)
        return self.family.product(self.letters(chi, n), at=chi.vertex)

    def _bound(self, chi: Character, x: Morphism) -> int:
        return self.family.norm(x) + len(chi.preperiod) + len(chi.period)

    def shift(self, chi: Character, n: int) -> Character:
        """The infinite word with its first n letters removed."""
        pre, per = chi.preperiod, chi.period
        if n <= len(pre):
            return self._canon(pre[n:], per)
        k = (n - len(pre)) % len(per)
        return self._canon((), per[k:] + per[:k])

    # -- evaluation --------------------------------------------------------------
    def contains_cone(self, chi: Character, x: Morphism) -> bool:
        """chi(x C) = 1."""
        cat = self.cat
        if x.dst != chi.vertex:
            return False
        if chi.kind == "vertex":
            return cat.is_unit(x)
        if chi.kind == "finite":
            return cat.left_divides(x, chi.morphism)
        return cat.left_divides(x, self.prefix(chi, self._bound(chi, x)))

    def meets(self, chi: Character, x: Morphism, y: Morphism) -> bool:
        """chi(x C cap y C) = 1."""
        if x.dst != y.dst:
            return False
        return any(self.contains_cone(chi, m) for m in self.cat.mcm_set(x, y))

    def eval(self, chi: Character, e: IdealExpr) -> int:
        if e.form == "union":
            return int(any(self.contains_cone(chi, x) for x in e.positive))
        x = e.positive[0]
        if not self.contains_cone(chi, x):
            return 0
        return int(not any(self.meets(chi, x, y) for y in e.negative))

    # -- left multiplication -----------------------------------------------------
    def _push_finite(self, s: Morphism, word: tuple[Morphism, ...]) -> tuple[Morphism, ...]:
        return self.family.push(s, word)

    def _push_infinite(self, s: Morphism, pre, per) -> tuple[tuple, tuple]:
        cat, fam = self.cat, self.family
        out = []
        carry = s
        seen = {}
        i = 0
        L = len(per)
        while True:
            if i >= len(pre):
                key = (carry, (i - len(pre)) % L)
                if key in seen:
                    j = seen[key]
                    return tuple(out[:j]), tuple(out[j:])
                seen[key] = len(out)
            if i > PUSH_HORIZON:
                raise NonPeriodic(f"no repetition after {PUSH_HORIZON} letters")
            r = pre[i] if i < len(pre) else per[(i - len(pre)) % L]
            if carry.is_identity:
                out.append(r)
            else:
                m = cat.compose(carry, r)
                t = fam.head(m)
                out.append(t)
                carry = cat.left_quotient(t, m)
            i += 1

    def left_multiply(self, x: Morphism, chi: Character) -> Character:
        """The character of x w, where chi is the character of w."""
        if x.src != chi.vertex:
            raise CompositionError(f"{x} cannot be prefixed to a character at {chi.vertex}")
        if chi.kind in ("vertex", "finite"):
            base = chi.morphism if chi.kind == "finite" else self.cat.identity(chi.vertex)
            return self.finite(self.cat.compose(x, base))
        pre, per = chi.preperiod, chi.period
        for s in reversed(self.family.normal_decompose(x).letters):
            pre, per = self._push_infinite(s, pre, per)
        return self._canon(pre, per)

    # -- germs ---------------------------------------------------------------------
    def _cut(self, chi: Character, d: Morphism) -> tuple[Morphism, Character]:
        """Write chi = d . rest; returns (d-quotient data, rest-character)."""
        cat = self.cat
        if not self.contains_cone(chi, d):
            raise DomainError(f"germ with d = {d} is not defined at {chi}")
        if chi.kind in ("vertex", "finite"):
            base = chi.morphism if chi.kind == "finite" else cat.identity(chi.vertex)
            x = cat.left_quotient(d, base)
            return x, self.vertex(x.src)
        n = self.family.norm(d)
        while not cat.left_divides(d, self.prefix(chi, n)):
            n += 1
        x = cat.left_quotient(d, self.prefix(chi, n))
        return x, self.shift(chi, n)

    def germ_apply(self, g: Germ) -> Character:
        x, rest = self._cut(g.base, g.d)
        return self.left_multiply(self.cat.compose(g.c, x), rest)

    def unit(self, chi: Character) -> Germ:
        v = self.cat.identity(chi.vertex)
        return Germ(v, v, chi)

    def germ_inverse(self, g: Germ) -> Germ:
        return Germ(g.d, g.c, self.germ_apply(g))

    def germ_compose(self, g1: Germ, g2: Germ) -> Germ:
        """g1 after g2; requires g2's range to be g1's base."""
        cat = self.cat
        if self.germ_apply(g2) != g1.base:
            raise DomainError("germs are not composable")
        chi = g2.base
        for m in cat.mcm_set(g1.d, g2.c):
            d = cat.compose(g2.d, cat.left_quotient(g2.c, m))
            if self.contains_cone(chi, d):
                c = cat.compose(g1.c, cat.left_quotient(g1.d, m))
                return Germ(c, d, chi)
        raise AssertionError("no branch of the product contains the base character")

    def germ_eq(self, g1: Germ, g2: Germ) -> bool:
        if g1.base != g2.base:
            return False
        chi = g1.base
        cat = self.cat
        if g1.c.dst != g2.c.dst:
            return False
        if chi.kind in ("vertex", "finite"):
            zs = [chi.morphism if chi.kind == "finite" else cat.identity(chi.vertex)]
        else:
            n = max(self.family.norm(g1.d), self.family.norm(g2.d)) + len(chi.preperiod) + len(chi.period)
            zs = [self.prefix(chi, n), self.prefix(chi, n + len(chi.period))]
        for z in zs:
            x1, x2 = cat.left_quotient(g1.d, z), cat.left_quotient(g2.d, z)
            if x1 is None or x2 is None:
                raise DomainError("germ is not defined at its base")
            if cat.compose(g1.c, x1) == cat.compose(g2.c, x2):
                return True
        return False

    # -- maximality and limits -----------------------------------------------------
    def in_omega_max(self, chi: Character, fuel: int) -> Verdict:
        cat = self.cat
        if chi.kind != "infinite":
            # chi_f is maximal iff f has no proper right multiple
            f = chi.morphism if chi.kind == "finite" else cat.identity(chi.vertex)
            ext = next((y for y in cat.ball(f.src, 1) if not cat.is_unit(y)), None)
            if ext is None:
                return Verdict.ok({"reason": f"no non-unit ends at {f.src}"}, structural=True)
            return Verdict.fail({"cone": cat.compose(f, ext), "prefix": f}, structural=True)
        # cones rooted at the end of the preperiod reach past it; left
        # cancellation reduces these to the periodic tail
        p = self.prefix(chi, len(chi.preperiod))
        cands = list(cat.ball(chi.vertex, fuel))
        if not p.is_identity:
            cands += [cat.compose(p, y) for y in cat.ball(p.src, fuel) if not y.is_identity]
        for x in cands:
            if self.contains_cone(chi, x):
                continue
            n = cat.length(x) + len(chi.preperiod) + 2 * len(chi.period) + 1
            f = self.prefix(chi, n)
            if cat.mcm_set(x, f):
                return Verdict.fail({"cone": x, "prefix": f}, depth=fuel)
        return Verdict.ok(depth=fuel)

    def limit_of_letters(self, seq: Sequence[Morphism]) -> LimitResult:
        """Maximal r in S or the identities dividing almost every letter.

        A finite input is read as repeating forever, so "almost every" means
        every letter of the input.
        """
        seq = list(seq)
        if not seq:
            raise ValueError("limit of an empty sequence")
        v = seq[0].dst
        if any(s.dst != v for s in seq):
            raise DomainError("letters must share a target vertex")
        cat = self.cat
        cands = [cat.identity(v)] + list(self.family.letters_into(v))
        common = [r for r in cands if all(cat.left_divides(r, s) for s in seq)]
        maximal = tuple(r for r in common
                        if not any(r != q and cat.left_divides(r, q) for q in common))
        value = maximal[0] if len(maximal) == 1 else None
        return LimitResult(value, self.family.locally_finite and value is not None, len(seq), maximal)


def periodic_characters(space: CharacterSpace, max_pre: int, max_per: int) -> list[Character]:
    """All infinite characters with preperiod and period within the bounds."""
    fam = space.family
    out = set()
    paths = {0: [()]}
    # normal paths of length n
    for n in range(1, max_pre + max_per + 1):
        nxt = []
        for p in paths[n - 1]:
            if not p:
                nxt.extend((s,) for s in fam.letters)
            else:
                nxt.extend(p + (t,) for t in fam.normal_successors(p[-1]))
        paths[n] = nxt
    for L in range(1, max_per + 1):
        for per in paths[L]:
            if per[0].dst != per[-1].src or not fam.junction_ok(per[-1], per[0]).ok:
                continue
            for k in range(max_pre + 1):
                for pre in paths[k]:
                    if pre and (pre[-1].src != per[0].dst or not fam.junction_ok(pre[-1], per[0]).ok):
                        continue
                    out.add(space._canon(pre, per))
    return sorted(out, key=_char_key)


def _char_key(chi: Character):
    kinds = {"vertex": 0, "finite": 1, "infinite": 2}
    m = chi.morphism
    return (kinds[chi.kind], chi.vertex, sort_key(m) if m else (),
            [sort_key(s) for s in chi.preperiod], [sort_key(s) for s in chi.period])


def sample_characters(space: CharacterSpace, depth: int) -> list[Character]:
    """Vertex, finite (ball of radius depth) and short periodic characters."""
    cat = space.cat
    out = {space.vertex(v) for v in cat.objects}
    for x in cat.all_ball(depth):
        out.add(space.finite(x))
    out.update(periodic_characters(space, min(depth, 2), min(depth, 2)))
    return sorted(out, key=_char_key)
