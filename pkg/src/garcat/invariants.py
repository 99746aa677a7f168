"""Pairs (T, D) of letters and vertices classifying closed invariant subspaces.

A pair is valid when it is admissible (every letter of T has a normal
successor in T or ends in D), H-invariant (heads H(a x) of x in T or D stay in
T) and closed under limits of letter sequences.  For locally finite families
the last condition is vacuous.
"""

from __future__ import annotations

import itertools
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .chars import Character, CharacterSpace, periodic_characters
from .core import CapacityError, Morphism, Verdict, sort_key
from .garside import GarsideFamily

ENUMERATION_CAP_BITS = 20


@dataclass(frozen=True)
class InvariantPair:
    T: frozenset
    D: frozenset
    flags: dict | None = field(default=None, compare=False, hash=False)

    def __le__(self, other: "InvariantPair") -> bool:
        return self.T <= other.T and self.D <= other.D

    def key(self):
        return (len(self.T) + len(self.D), sorted(sort_key(t) for t in self.T), sorted(self.D))

    def describe(self) -> str:
        T = "{" + ",".join(str(t) for t in sorted(self.T, key=sort_key)) + "}"
        D = "{" + ",".join(sorted(self.D)) + "}"
        return f"({T}, {D})"

    def to_json(self) -> dict:
        out = {"T": [list(t.word) for t in sorted(self.T, key=sort_key)], "D": sorted(self.D)}
        if self.flags:
            out["flags"] = {k: v.to_json() for k, v in sorted(self.flags.items())}
        return out


def pair_leq(p: InvariantPair, q: InvariantPair) -> bool:
    return p.T <= q.T and p.D <= q.D


def make_pair(T: Iterable[Morphism] = (), D: Iterable[str] = ()) -> InvariantPair:
    return InvariantPair(frozenset(T), frozenset(D))


# ---------------------------------------------------------------------------
# the three predicates


def is_admissible(family: GarsideFamily, pair: InvariantPair) -> Verdict:
    witnesses = {}
    for t in sorted(pair.T, key=sort_key):
        if t.src in pair.D:
            witnesses[t] = t.src
            continue
        nxt = next((u for u in family.normal_successors(t) if u in pair.T), None)
        if nxt is None:
            return Verdict.fail({"letter": t}, structural=True)
        witnesses[t] = nxt
    return Verdict.ok({"successors": witnesses}, structural=True)


def _head_targets(family: GarsideFamily, x: Morphism) -> list[tuple[Morphism, Morphism]]:
    cat = family.category
    return [(s, family.head(cat.compose(s, x))) for s in family.letters if s.src == x.dst]


def is_h_invariant(family: GarsideFamily, pair: InvariantPair, depth: int | None = None) -> Verdict:
    """H(a x) in T for every non-unit a and x in T or D.

    With trivial units the nested-head formula reduces the quantifier over a to
    single letters, which makes the check exact.  Passing ``depth`` instead
    quantifies over the ball of that radius.
    """
    cat = family.category
    items = sorted(pair.T, key=sort_key) + [cat.identity(v) for v in sorted(pair.D)]
    if depth is None and cat.units_trivial:
        for x in items:
            for s, h in _head_targets(family, x):
                if h not in pair.T:
                    return Verdict.fail({"a": s, "x": x, "head": h}, structural=True)
        return Verdict.ok({"reduction": "single letters"}, structural=True)
    depth = depth if depth is not None else 2
    ball = cat.all_ball(depth)
    for x in items:
        for a in ball:
            if a.src != x.dst or cat.is_unit(a):
                continue
            h = family.head(cat.compose(a, x))
            if h not in pair.T:
                return Verdict.fail({"a": a, "x": x, "head": h}, depth=depth)
    return Verdict.ok(depth=depth)


def is_max_closed(family: GarsideFamily, pair: InvariantPair) -> Verdict:
    if family.locally_finite:
        return Verdict.ok(structural=True, note="vacuous for a locally finite family")
    return _max_closed_window(family, pair)


def _limit_candidates(family, pair):
    """Roots r outside T and D that are the meet of two letters of T."""
    cat = family.category
    graded = hasattr(cat, "degree")
    roots = list(family.letters) + [cat.identity(v) for v in cat.objects]
    for r in roots:
        if r in pair.T or (r.is_identity and r.src in pair.D):
            continue
        above = [t for t in sorted(pair.T, key=sort_key) if t != r and cat.left_divides(r, t)]
        for t1, t2 in itertools.combinations(above, 2):
            # a convergent sequence in a k-graph has a subsequence of constant degree
            if graded and cat.degree(t1) != cat.degree(t2):
                continue
            common = [q for q in roots if q.dst == r.dst
                      and cat.left_divides(q, t1) and cat.left_divides(q, t2)]
            if all(cat.left_divides(q, r) for q in common):
                yield r, (t1, t2)


def _max_closed_window(family, pair):
    # window reading: two letters of T whose greatest common divisor is r
    # stand in for an infinite sequence with limit r
    for r, witness in _limit_candidates(family, pair):
        return Verdict.fail({"limit": r, "letters": witness}, note="window of two letters")
    return Verdict.ok(note="window of two letters")


def validate_pair(family: GarsideFamily, pair: InvariantPair) -> InvariantPair:
    flags = {"admissible": is_admissible(family, pair), "h_invariant": is_h_invariant(family, pair),
             "max_closed": is_max_closed(family, pair)}
    return InvariantPair(pair.T, pair.D, flags)


def is_valid(family: GarsideFamily, pair: InvariantPair) -> bool:
    return (is_admissible(family, pair).holds and is_h_invariant(family, pair).holds
            and is_max_closed(family, pair).holds)


# ---------------------------------------------------------------------------
# closure and interior


def closure(family: GarsideFamily, pair: InvariantPair, depth: int | None = None) -> InvariantPair:
    """Smallest H-invariant, limit-closed pair containing ``pair``."""
    cat = family.category
    T, D = set(pair.T), set(pair.D)
    while True:
        todo = sorted(T, key=sort_key) + [cat.identity(v) for v in sorted(D)]
        seen = set()
        while todo:
            x = todo.pop()
            if x in seen:
                continue
            seen.add(x)
            for _, h in _head_targets(family, x):
                if h not in T:
                    T.add(h)
                    todo.append(h)
        if family.locally_finite:
            break
        extra = [r for r, _ in _limit_candidates(family, InvariantPair(frozenset(T), frozenset(D)))]
        if not extra:
            break
        for r in extra:
            if r.is_identity:
                D.add(r.src)
            else:
                T.add(r)
    return InvariantPair(frozenset(T), frozenset(D))


def interior(family: GarsideFamily, pair: InvariantPair) -> InvariantPair:
    """Largest admissible pair inside ``pair``."""
    T, D = set(pair.T), set(pair.D)
    changed = True
    while changed:
        changed = False
        for t in sorted(T, key=sort_key):
            if t.src in D:
                continue
            if not any(u in T for u in family.normal_successors(t)):
                T.discard(t)
                changed = True
    return InvariantPair(frozenset(T), frozenset(D))


# ---------------------------------------------------------------------------
# subspaces


def x_membership(space: CharacterSpace, pair: InvariantPair, chi: Character) -> bool:
    if chi.kind == "vertex":
        return chi.vertex in pair.D
    if chi.kind == "finite":
        word = space.family.normal_decompose(chi.morphism).letters
        return all(s in pair.T for s in word) and chi.morphism.src in pair.D
    return all(s in pair.T for s in chi.preperiod + chi.period)


def pair_of_subspace(space: CharacterSpace, sample: Iterable[Character]) -> InvariantPair:
    T, D = set(), set()
    for chi in sample:
        if chi.kind == "vertex":
            D.add(chi.vertex)
        elif chi.kind == "finite":
            T.update(space.family.normal_decompose(chi.morphism).letters)
            D.add(chi.morphism.src)
        else:
            T.update(chi.preperiod)
            T.update(chi.period)
    return InvariantPair(frozenset(T), frozenset(D))


# ---------------------------------------------------------------------------
# enumeration


@dataclass
class SubspaceLattice:
    pairs: list
    order: list  # covering edges (i, j): pairs[i] is covered by pairs[j]
    boundary_index: list
    boundary: InvariantPair | None = None

    def to_json(self) -> dict:
        return {"pairs": [p.to_json() for p in self.pairs],
                "hasse": [list(e) for e in self.order],
                "boundary_index": list(self.boundary_index),
                "boundary": self.boundary.to_json() if self.boundary else None}


@dataclass(frozen=True)
class _Masks:
    n: int
    m: int
    succ: tuple
    dom: tuple
    head_letter: tuple
    head_vertex: tuple


def _masks(family: GarsideFamily) -> _Masks:
    cat = family.category
    letters = family.letters
    idx = family.index
    vidx = {v: i for i, v in enumerate(cat.objects)}
    succ = []
    head_letter = []
    for t in letters:
        mask = 0
        for u in family.normal_successors(t):
            mask |= 1 << idx[u]
        succ.append(mask)
        hm = 0
        for _, h in _head_targets(family, t):
            hm |= 1 << idx[h]
        head_letter.append(hm)
    head_vertex = []
    for v in cat.objects:
        hm = 0
        for _, h in _head_targets(family, cat.identity(v)):
            hm |= 1 << idx[h]
        head_vertex.append(hm)
    return _Masks(len(letters), len(cat.objects), tuple(succ), tuple(vidx[t.src] for t in letters),
                  tuple(head_letter), tuple(head_vertex))


def _valid_masks(M: _Masks, tmask: int, dmask: int) -> bool:
    for i in range(M.n):
        if tmask >> i & 1:
            if not (dmask >> M.dom[i] & 1) and not (M.succ[i] & tmask):
                return False
            if M.head_letter[i] & ~tmask:
                return False
    return True


def _submasks(mask: int):
    sub = mask
    while True:
        yield sub
        if sub == 0:
            return
        sub = (sub - 1) & mask


def _scan(args):
    M, dmasks, allowed_t = args
    found = []
    for dmask in dmasks:
        base = 0
        ok = True
        for v in range(M.m):
            if dmask >> v & 1:
                base |= M.head_vertex[v]
        if base & ~allowed_t:
            continue
        for sub in _submasks(allowed_t & ~base):
            tmask = sub | base
            if _valid_masks(M, tmask, dmask):
                found.append((tmask, dmask))
    return found


def enumerate_pairs(family: GarsideFamily, within: InvariantPair | None = None,
                    cap_bits: int = ENUMERATION_CAP_BITS, jobs: int = 1,
                    boundary: InvariantPair | None = None) -> SubspaceLattice:
    """All valid pairs, optionally restricted to those inside ``within``."""
    cat = family.category
    letters = family.letters
    if within is None:
        allowed_t = (1 << len(letters)) - 1
        allowed_d = list(range(len(cat.objects)))
    else:
        allowed_t = sum(1 << family.index[t] for t in within.T)
        allowed_d = [i for i, v in enumerate(cat.objects) if v in within.D]
    bits = bin(allowed_t).count("1") + len(allowed_d)
    if bits > cap_bits:
        raise CapacityError(f"{bits} candidate bits exceed the cap of {cap_bits}; "
                            "use closure from seed pairs instead")
    if not family.locally_finite:
        return _enumerate_slow(family, allowed_t, allowed_d, boundary)
    M = _masks(family)
    dmasks = []
    for r in range(len(allowed_d) + 1):
        for combo in itertools.combinations(allowed_d, r):
            dmasks.append(sum(1 << i for i in combo))
    if jobs > 1 and len(dmasks) > 1:
        chunks = [dmasks[i::jobs] for i in range(jobs)]
        with ProcessPoolExecutor(max_workers=jobs) as ex:
            found = [x for part in ex.map(_scan, [(M, c, allowed_t) for c in chunks]) for x in part]
    else:
        found = _scan((M, dmasks, allowed_t))
    pairs = []
    for tmask, dmask in found:
        T = frozenset(letters[i] for i in range(M.n) if tmask >> i & 1)
        D = frozenset(cat.objects[i] for i in range(M.m) if dmask >> i & 1)
        pairs.append(InvariantPair(T, D))
    return _lattice(family, pairs, boundary)


def _enumerate_slow(family, allowed_t, allowed_d, boundary):
    cat = family.category
    letters = family.letters
    pairs = []
    tl = [i for i in range(len(letters)) if allowed_t >> i & 1]
    for r in range(len(allowed_d) + 1):
        for dcombo in itertools.combinations(allowed_d, r):
            D = frozenset(cat.objects[i] for i in dcombo)
            for k in range(len(tl) + 1):
                for tcombo in itertools.combinations(tl, k):
                    p = InvariantPair(frozenset(letters[i] for i in tcombo), D)
                    if is_valid(family, p):
                        pairs.append(p)
    return _lattice(family, pairs, boundary)


def _lattice(family, pairs, boundary):
    pairs = sorted(set(pairs), key=InvariantPair.key)
    pairs = [validate_pair(family, p) for p in pairs]
    order = []
    for j, q in enumerate(pairs):
        below = [i for i, p in enumerate(pairs) if i != j and pair_leq(p, q)]
        below.sort(key=lambda i: -(len(pairs[i].T) + len(pairs[i].D)))
        maximal = []
        for i in below:
            if not any(pair_leq(pairs[i], pairs[k]) for k in maximal):
                maximal.append(i)
        order.extend((i, j) for i in sorted(maximal))
    order.sort()
    bidx = [i for i, p in enumerate(pairs) if boundary is not None and pair_leq(p, boundary)]
    return SubspaceLattice(pairs, order, bidx, boundary)


# ---------------------------------------------------------------------------
# the boundary


def d_max(family: GarsideFamily) -> frozenset:
    cat = family.category
    return frozenset(v for v in cat.objects
                     if all(cat.is_unit(x) for x in cat.ball(v, 1)))


def t_max(family: GarsideFamily, depth: int = 4) -> tuple[frozenset, dict]:
    """Letters of maximal characters, with a witness per letter."""
    cat = family.category
    dm = d_max(family)
    out = {}
    for t in family.letters:
        F = [u for u in family.letters_into(t.src) if cat.compose(t, u) in family]
        if not F:
            out[t] = "no extension inside the family"
            continue
        for x in cat.ball(t.src, depth):
            if all(not cat.mcm_set(x, u) for u in F):
                out[t] = {"disjoint": x}
                break
    # letters on finite normal paths ending in a vertex of D_max
    reach = {t for t in family.letters if t.src in dm}
    changed = True
    while changed:
        changed = False
        for t in family.letters:
            if t not in reach and any(u in reach for u in family.normal_successors(t)):
                reach.add(t)
                changed = True
    for t in reach:
        out.setdefault(t, "finite normal path into D_max")
    return frozenset(out), out


def boundary_pair(family: GarsideFamily, depth: int = 4) -> InvariantPair:
    T, _ = t_max(family, depth)
    return closure(family, InvariantPair(T, d_max(family)))


# ---------------------------------------------------------------------------
# Garside-level probes for relative subspaces X_2 \ X_1


def normal_paths(family: GarsideFamily, max_len: int, letters: Iterable[Morphism] | None = None,
                 min_len: int = 1) -> list[tuple[Morphism, ...]]:
    allowed = set(family.letters if letters is None else letters)
    out = []
    level = [(s,) for s in sorted(allowed, key=sort_key)]
    for n in range(1, max_len + 1):
        if n >= min_len:
            out.extend(level)
        if n == max_len:
            break
        level = [p + (u,) for p in level for u in family.normal_successors(p[-1]) if u in allowed]
    return out


def garside_topfree_probe(family: GarsideFamily, pair1: InvariantPair, pair2: InvariantPair,
                          depth: int) -> Verdict:
    cat = family.category
    for v in sorted(pair2.D - pair1.D):
        units = [x for x in cat.ball(v, 1) if x.src == v and cat.is_unit(x) and not x.is_identity]
        if units:
            return Verdict.fail({"vertex": v, "unit": units[0], "reason": "nontrivial unit loop"})
    rel = sorted(pair2.T - pair1.T, key=sort_key)
    paths = normal_paths(family, depth)
    products = {p: cat.product(p) for p in paths}
    checked = 0
    for a, b in itertools.combinations(paths, 2):
        pa, pb = products[a], products[b]
        if pa.dst != pb.dst or pa.src != pb.src or a[0] == b[0]:
            continue
        for s in rel:
            if s.src != pa.src:
                continue
            checked += 1
            found = None
            for t in rel:
                if t.dst == s.src and family.junction_ok(s, t).ok:
                    if family.head(cat.compose(pa, t)) != family.head(cat.compose(pb, t)):
                        found = t
                        break
            if found is None:
                return Verdict.fail({"a": a, "b": b, "s": s}, depth=depth)
    return Verdict.ok({"instances": checked}, depth=depth)


def _prefix_comparable(p, q):
    n = min(len(p), len(q))
    return p[:n] == q[:n]


def garside_loccontr_probe(family: GarsideFamily, pair1: InvariantPair, pair2: InvariantPair,
                           depth: int) -> Verdict:
    cat = family.category
    rel = set(pair2.T - pair1.T)
    # every intermediate valid pair leaves an infinite normal path in T2 \ T
    if family.locally_finite and len(pair2.T) + len(pair2.D) <= ENUMERATION_CAP_BITS:
        for p in enumerate_pairs(family, within=pair2).pairs:
            if pair_leq(pair1, p) and p != InvariantPair(pair2.T, pair2.D):
                if not _has_cycle(family, set(pair2.T - p.T)):
                    return Verdict.fail({"intermediate": p, "reason": "no infinite normal path"})
    maximal = [s for s in sorted(rel, key=sort_key)
               if not any(r != s and cat.left_divides(s, r) for r in rel)]
    qpaths = normal_paths(family, depth)
    witnesses = {}
    for c in _live_prefixes(family, rel, depth):
        found = None
        for s in maximal:
            qs = [q for q in qpaths if _composable((s,) + q + c) and family.is_normal((s,) + q + c).ok]
            pair = next(((q1, q2) for q1, q2 in itertools.combinations(qs, 2)
                         if not _prefix_comparable(q1, q2)), None)
            if pair is None:
                continue
            for p in [()] + qpaths:
                path = c + p + (s,)
                if _composable(path) and family.is_normal(path).ok:
                    found = {"s": s, "p": p, "q": pair}
                    break
            if found:
                break
        if found is None:
            return Verdict.fail({"c": c}, depth=depth)
        witnesses[c] = found
    return Verdict.ok({"witnesses": len(witnesses)}, depth=depth)


def _live_prefixes(family, rel, depth):
    """Normal paths in rel of length <= depth that start a maximal periodic word in rel.

    Only such prefixes c = v_L of infinite words v in the subspace enter the
    contraction argument; a path that cannot be continued inside the
    subspace is never met there.
    """
    space = CharacterSpace(family)
    live = set()
    for chi in periodic_characters(space, depth, 2):
        word = chi.preperiod + chi.period
        if not set(word) <= rel or space.in_omega_max(chi, 2).fails:
            continue
        letters = space.letters(chi, depth)
        live.update(letters[:n] for n in range(1, depth + 1))
    return sorted(live, key=lambda c: (len(c), [sort_key(s) for s in c]))


def _composable(path):
    return all(x.src == y.dst for x, y in zip(path, path[1:]))


def _has_cycle(family, letters):
    """Is there an infinite normal path using only ``letters``?"""
    letters = set(letters)
    alive = set(letters)
    changed = True
    while changed:
        changed = False
        for t in list(alive):
            if not any(u in alive for u in family.normal_successors(t)):
                alive.discard(t)
                changed = True
    return bool(alive)
