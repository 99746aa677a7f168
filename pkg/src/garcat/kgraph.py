"""Higher-rank graphs: canonical factorizations, the S_P family, (A)/(I)/(C).

Edges carry a color in 1..k.  A square ``x y = y' x'`` identifies two
bi-colored paths; canonical words list edges sorted by color (color 1 first),
which by unique factorization represents each morphism exactly once.
"""

from __future__ import annotations

import itertools
from collections import deque
from typing import Iterable, Sequence

from .core import (
    Category,
    CheckResult,
    CompositionError,
    DomainError,
    Edge,
    Morphism,
    StructuralError,
    ValidationReport,
    Verdict,
    sort_key,
)
from .garside import GarsideFamily


class KGraph(Category):
    backend = "kgraph"

    def __init__(self, vertices: Sequence[str], edges: Sequence[Edge],
                 squares: Iterable[tuple[tuple[str, str], tuple[str, str]]], k: int | None = None):
        if not vertices:
            raise StructuralError("vertex", "the empty category is not allowed")
        if len(set(vertices)) != len(vertices):
            raise StructuralError("vertex", "duplicate vertex label")
        self.objects = tuple(vertices)
        self.edges = tuple(edges)
        self._edge = {}
        for e in edges:
            if e.id in self._edge or e.id in self.objects:
                raise StructuralError("edge", f"duplicate label {e.id}")
            for end in (e.src, e.dst):
                if end not in self.objects:
                    raise StructuralError("edge", f"edge {e.id} refers to unknown vertex {end!r}")
            if e.color < 1:
                raise StructuralError("color", f"edge {e.id} has color {e.color}")
            self._edge[e.id] = e
        self.k = k if k is not None else max((e.color for e in edges), default=1)
        if any(e.color > self.k for e in edges):
            raise StructuralError("color", "edge color exceeds the rank")
        self.squares: dict[tuple[str, str], tuple[str, str]] = {}
        self.square_list = []
        for lhs, rhs in squares:
            self._add_square(lhs, rhs)
        self.atoms = tuple(Morphism((e.id,), e.src, e.dst) for e in edges)
        self.row_finite = True
        self._mcm: dict = {}
        self.group_embeddable = (len(self.objects) == 1
                                 and all(sum(1 for e in edges if e.color == c) == 1 for c in range(1, self.k + 1)))

    def _add_square(self, lhs, rhs):
        (x, y), (y2, x2) = lhs, rhs
        for n in (x, y, y2, x2):
            if n not in self._edge:
                raise StructuralError("square", f"unknown edge {n!r}")
        ex, ey, ey2, ex2 = (self._edge[n] for n in (x, y, y2, x2))
        if ex.color == ey.color or ey2.color != ey.color or ex2.color != ex.color:
            raise StructuralError("square", f"{x}{y} = {y2}{x2} is not a bi-colored square")
        if ex.src != ey.dst or ey2.src != ex2.dst:
            raise StructuralError("square", f"{x}{y} = {y2}{x2} has non-composable sides")
        if ex.dst != ey2.dst or ey.src != ex2.src:
            raise StructuralError("square", f"{x}{y} = {y2}{x2} has mismatched endpoints")
        for a, b in (((x, y), (y2, x2)), ((y2, x2), (x, y))):
            if a in self.squares and self.squares[a] != b:
                raise StructuralError("square", f"path {a[0]}{a[1]} lies in two squares")
            self.squares[a] = b
        self.square_list.append(((x, y), (y2, x2)))

    def color(self, e: str) -> int:
        return self._edge[e].color

    def degree(self, m: Morphism) -> tuple[int, ...]:
        d = [0] * self.k
        for e in m.word:
            d[self._edge[e].color - 1] += 1
        return tuple(d)

    # -- canonical forms -------------------------------------------------------
    def _sort(self, word: list[str], keys: list) -> tuple[list[str], list]:
        word = list(word)
        keys = list(keys)
        changed = True
        while changed:
            changed = False
            for i in range(len(word) - 1):
                if keys[i] > keys[i + 1]:
                    pair = (word[i], word[i + 1])
                    if pair not in self.squares:
                        raise StructuralError("square", f"no square completes {pair[0]}{pair[1]}")
                    word[i], word[i + 1] = self.squares[pair]
                    keys[i], keys[i + 1] = keys[i + 1], keys[i]
                    changed = True
        return word, keys

    def morphism(self, word, at=None):
        word = tuple(word)
        if not word:
            if at is None:
                raise CompositionError("identity needs an object")
            return self.identity(at)
        try:
            es = [self._edge[w] for w in word]
        except KeyError as exc:
            raise CompositionError(f"unknown edge {exc.args[0]!r}") from None
        for x, y in zip(es, es[1:]):
            if x.src != y.dst:
                raise CompositionError(f"edges {x.id} and {y.id} are not composable")
        sorted_word, _ = self._sort(list(word), [e.color for e in es])
        return Morphism(tuple(sorted_word), es[-1].src, es[0].dst)

    def factor(self, m: Morphism, p: Sequence[int]) -> tuple[Morphism, Morphism]:
        """The unique m = x y with degree(x) = p."""
        d = self.degree(m)
        if any(a > b for a, b in zip(p, d)):
            raise DomainError(f"degree {tuple(p)} exceeds degree {d} of {m}")
        counts = [0] * self.k
        keys = []
        for e in m.word:
            c = self.color(e) - 1
            keys.append((0 if counts[c] < p[c] else 1, c))
            counts[c] += 1
        word, _ = self._sort(list(m.word), keys)
        n = sum(p)
        head = self.morphism(word[:n], at=m.dst)
        tail = self.morphism(word[n:], at=m.src if n == len(word) else None) if n < len(word) else self.identity(m.src)
        return head, tail

    def left_quotient(self, a, b):
        if a.dst != b.dst:
            return None
        da, db = self.degree(a), self.degree(b)
        if any(x > y for x, y in zip(da, db)):
            return None
        x, y = self.factor(b, da)
        return y if x == a else None

    def right_quotient(self, a, b):
        if a.src != b.src:
            return None
        da, db = self.degree(a), self.degree(b)
        if any(x > y for x, y in zip(da, db)):
            return None
        x, y = self.factor(b, tuple(q - p for p, q in zip(da, db)))
        return x if y == a else None

    def paths_of_degree(self, v: str, p: Sequence[int]) -> list[Morphism]:
        """All morphisms with target v and degree p."""
        colors = []
        for c, n in enumerate(p):
            colors.extend([c + 1] * n)
        out = [self.identity(v)]
        for c in colors:
            nxt = []
            for x in out:
                for e in self.atoms_into(x.src):
                    if self.color(e.word[0]) == c:
                        nxt.append(Morphism(x.word + e.word, e.src, v))
            out = nxt
        return out

    def mcm_set(self, a, b):
        if a.dst != b.dst:
            raise CompositionError("mcm needs a common target")
        hit = self._mcm.get((a, b))
        if hit is not None:
            return hit
        da, db = self.degree(a), self.degree(b)
        colors = []
        for c, (x, y) in enumerate(zip(da, db)):
            colors.extend([c + 1] * max(0, y - x))
        # extend a one edge at a time, pruning branches whose prefix of
        # degree min(deg, db) already disagrees with b
        frontier = [a]
        for c in colors:
            nxt = []
            for z in frontier:
                for e in self.atoms_into(z.src):
                    if self.color(e.word[0]) != c:
                        continue
                    z2 = self.compose(z, e)
                    m = tuple(min(x, y) for x, y in zip(self.degree(z2), db))
                    if self.factor(z2, m)[0] == self.factor(b, m)[0]:
                        nxt.append(z2)
            frontier = nxt
        out = tuple(sorted({z for z in frontier if self.left_divides(b, z)}, key=sort_key))
        self._mcm[(a, b)] = out
        return out

    # -- validation ------------------------------------------------------------
    def validate(self) -> ValidationReport:
        checks = []
        bad = None
        for x in self.edges:
            for y in self.edges:
                if x.src == y.dst and x.color != y.color and (x.id, y.id) not in self.squares:
                    bad = (x.id, y.id)
                    break
            if bad:
                break
        checks.append(CheckResult("unique squares", Verdict.fail({"path": bad}) if bad else Verdict.ok(structural=True)))
        bad = None
        if self.k >= 3 and not checks[0].verdict.fails:
            for x, y, z in itertools.product(self.edges, repeat=3):
                if x.src != y.dst or y.src != z.dst or len({x.color, y.color, z.color}) != 3:
                    continue
                if self._shuffle(x.id, y.id, z.id, left_first=True) != self._shuffle(x.id, y.id, z.id, left_first=False):
                    bad = (x.id, y.id, z.id)
                    break
        checks.append(CheckResult("cube condition", Verdict.fail({"path": bad}) if bad else Verdict.ok(structural=True)))
        return ValidationReport(checks)

    def _shuffle(self, x, y, z, left_first):
        """Reverse a tri-colored path by two different sequences of squares."""
        w = [x, y, z]
        order = [0, 1, 0] if left_first else [1, 0, 1]
        for i in order:
            w[i], w[i + 1] = self.squares[(w[i], w[i + 1])]
        return tuple(w)


def build_garside_family(kg: KGraph) -> GarsideFamily:
    """The letters of degree in {0,1}^k minus 0."""
    letters = []
    for v in kg.objects:
        for p in itertools.product((0, 1), repeat=kg.k):
            if any(p):
                letters.extend(kg.paths_of_degree(v, p))
    return GarsideFamily(kg, letters, locally_finite=kg.row_finite,
                         certificate="degree-bounded letters; row-finite skeleton")


def _leq(p, q):
    return all(a <= b for a, b in zip(p, q))


def check_conditions(family: GarsideFamily, pair) -> dict[str, Verdict]:
    """Conditions (A), (I) and (C) for a pair over a k-graph family."""
    kg: KGraph = family.category
    T, D = pair.T, pair.D
    out = {}
    bad = None
    for t in sorted(T, key=sort_key):
        if t.src in D:
            continue
        dt = kg.degree(t)
        if not any(u.dst == t.src and _leq(kg.degree(u), dt) for u in T):
            bad = t
            break
    out["A"] = Verdict.fail({"letter": bad}) if bad else Verdict.ok(structural=True)
    bad = None
    items = [(t, kg.degree(t)) for t in sorted(T, key=sort_key)] + \
            [(kg.identity(v), (0,) * kg.k) for v in sorted(D)]
    for t, dt in items:
        for a in (a for a in kg.atoms if a.src == t.dst):
            da = kg.degree(a)
            if not _leq(da, dt):
                need = kg.compose(a, t)
            else:
                r, _ = kg.factor(t, tuple(x - y for x, y in zip(dt, da)))
                need = kg.compose(a, r)
            if need not in T:
                bad = {"atom": a, "letter": t, "missing": need}
                break
        if bad:
            break
    out["I"] = Verdict.fail(bad) if bad else Verdict.ok(structural=True)
    if family.locally_finite:
        out["C"] = Verdict.ok(structural=True, note="vacuous for a locally finite family")
    else:
        out["C"] = _condition_c_window(family, pair)
    return out


def _condition_c_window(family, pair):
    # window reading: two letters a z_1, a z_2 in T of the same degree with
    # different degree-1 prefixes of z stand in for an infinite sequence
    kg = family.category
    T, D = pair.T, pair.D
    roots = list(family.letters) + [kg.identity(v) for v in kg.objects]
    for a in roots:
        if a in T or (a.is_identity and a.src in D):
            continue
        ext = {}
        for t in T:
            z = kg.left_quotient(a, t)
            if z is not None and not z.is_identity:
                ext.setdefault(kg.degree(z), []).append(z)
        for d, zs in ext.items():
            for z1, z2 in itertools.combinations(zs, 2):
                if all(kg.factor(z1, e)[0] != kg.factor(z2, e)[0]
                       for e in _unit_degrees(d)):
                    return Verdict.fail({"root": a, "letters": (kg.compose(a, z1), kg.compose(a, z2))})
    return Verdict.ok(note="window probe over pairs of letters")


def _unit_degrees(d):
    out = []
    for i, x in enumerate(d):
        if x:
            out.append(tuple(1 if j == i else 0 for j in range(len(d))))
    return out


# ---------------------------------------------------------------------------
# Hereditary and saturated vertex sets


def _sources(kg: KGraph) -> list[str]:
    """Vertices missing incoming edges of some color (no e with target v)."""
    out = []
    for v in kg.objects:
        colors = {kg.color(a.word[0]) for a in kg.atoms_into(v)}
        if len(colors) < kg.k:
            out.append(v)
    return out


def is_hereditary(kg: KGraph, H: frozenset) -> bool:
    return all(a.src in H for a in kg.atoms if a.dst in H)


def is_saturated(kg: KGraph, H: frozenset) -> bool:
    for v in kg.objects:
        if v in H:
            continue
        for c in range(1, kg.k + 1):
            es = [a for a in kg.atoms_into(v) if kg.color(a.word[0]) == c]
            if es and all(a.src in H for a in es):
                return False
    return True


def covered_by_paths(kg: KGraph, H: frozenset, depth: int) -> frozenset:
    """Vertices from which every path of length ``depth`` meets H."""
    out = set()
    for v in kg.objects:
        frontier = {v}
        ok = v in H
        for _ in range(depth):
            if ok:
                break
            frontier = {a.src for u in frontier if u not in H for a in kg.atoms_into(u)}
            frontier -= set(H)
            if not frontier:
                ok = True
        if ok or all(u in H for u in frontier):
            out.add(v)
    return frozenset(out)


def hereditary_saturated_enumerate(kg: KGraph) -> list[frozenset]:
    if _sources(kg):
        raise DomainError(f"skeleton has sources {_sources(kg)}; saturation needs a sourceless skeleton")
    out = []
    for r in range(len(kg.objects) + 1):
        for H in itertools.combinations(kg.objects, r):
            H = frozenset(H)
            if is_hereditary(kg, H) and is_saturated(kg, H):
                out.append(H)
    return out


def pair_to_hereditary(family: GarsideFamily, pair, boundary) -> frozenset:
    """Vertices whose boundary characters all avoid X(pair)."""
    from .invariants import pair_leq

    if not pair_leq(pair, boundary):
        raise DomainError("pair is not contained in the boundary pair")
    # letters of T that start an infinite normal path in T, or a finite one ending in D
    live = _live_letters(family, pair.T, pair.D)
    kg = family.category
    return frozenset(v for v in kg.objects
                     if v not in pair.D and not any(t.dst == v for t in live))


def _live_letters(family, T, D):
    live = {t for t in T if t.src in D}
    alive = set(T)
    changed = True
    while changed:
        changed = False
        for t in list(alive):
            if t.src in D:
                continue
            if not any(u in alive for u in family.normal_successors(t) if u in T):
                alive.discard(t)
                changed = True
    return live | alive


def hereditary_to_pair(family: GarsideFamily, H: frozenset, boundary):
    """The pair of the complement of the orbit of the boundary over H."""
    from .invariants import InvariantPair

    kg = family.category
    # a boundary path leaves the complement exactly when some letter reaches H
    T = frozenset(t for t in boundary.T if t.src not in H and t.dst not in H)
    D = frozenset(v for v in boundary.D if v not in H)
    T = frozenset(_live_letters(family, T, D)) & T
    return InvariantPair(T, D)
