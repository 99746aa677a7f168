"""Left-cancellative small categories behind one interface.

A morphism is stored as a canonical word over atom identifiers together with
its domain ``src`` and target ``dst``.  Products follow the categorical
convention: ``a * b`` is defined when ``src(a) == dst(b)``, so the word of a
product is the word of ``a`` followed by the word of ``b``.

Four backends exist: :class:`ExplicitFinite` (composition tables),
:class:`GraphPath` (free path categories), and the k-graph and Artin-Tits
backends in :mod:`garcat.kgraph` and :mod:`garcat.artin`.
"""

from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Iterable, Sequence


class GarcatError(Exception):
    """Base class for errors raised by the library."""


class ParseError(GarcatError):
    def __init__(self, message: str, line: int = 0, column: int = 0):
        self.line = line
        self.column = column
        super().__init__(f"line {line}, column {column}: {message}" if line else message)


class StructuralError(GarcatError):
    """Malformed category data; ``field`` names the offending part."""

    def __init__(self, field_name: str, message: str):
        self.field = field_name
        super().__init__(f"{field_name}: {message}")


class CompositionError(GarcatError):
    pass


class DomainError(GarcatError):
    pass


class CapacityError(GarcatError):
    pass


class UnsupportedClass(GarcatError):
    pass


class FuelExhausted(GarcatError):
    def __init__(self, fuel: int, state: Any = None):
        self.fuel = fuel
        self.state = state
        super().__init__(f"reversing did not terminate within fuel {fuel}")


@dataclass(frozen=True, order=True)
class Morphism:
    """An element of the category: canonical word plus domain and target."""

    word: tuple[str, ...]
    src: str
    dst: str
    canonical: bool = field(default=True, compare=False)

    @property
    def is_identity(self) -> bool:
        return not self.word

    def __len__(self) -> int:
        return len(self.word)

    def render(self, sep: str = "") -> str:
        if not self.word:
            return "1" if self.src == "*" else f"1_{self.src}"
        return sep.join(self.word)

    def __str__(self) -> str:
        sep = "" if all(len(a) == 1 for a in self.word) else " "
        return self.render(sep)

    def to_json(self) -> dict:
        return {"word": list(self.word), "src": self.src, "dst": self.dst}


def sort_key(m: Morphism):
    return (len(m.word), m.word, m.dst, m.src)


class Status(str, Enum):
    HOLDS = "Holds"
    FAILS = "Fails"
    UNKNOWN = "Unknown"


@dataclass(frozen=True)
class Verdict:
    """Outcome of a bounded decision.

    ``structural`` marks verdicts that follow from a proof-level argument rather
    than from exhausting a search range; ``depth`` records the range searched.
    """

    status: Status
    certificate: Any = None
    depth: int | None = None
    structural: bool = False
    note: str = ""

    @property
    def holds(self) -> bool:
        return self.status is Status.HOLDS

    @property
    def fails(self) -> bool:
        return self.status is Status.FAILS

    @classmethod
    def ok(cls, certificate=None, depth=None, structural=False, note=""):
        return cls(Status.HOLDS, certificate, depth, structural, note)

    @classmethod
    def fail(cls, certificate, depth=None, structural=False, note=""):
        return cls(Status.FAILS, certificate, depth, structural, note)

    @classmethod
    def unknown(cls, depth, certificate=None, note=""):
        return cls(Status.UNKNOWN, certificate, depth, False, note)

    def to_json(self) -> dict:
        out = {"status": self.status.value, "certificate": to_jsonable(self.certificate)}
        if self.depth is not None:
            out["depth"] = self.depth
        if self.structural:
            out["structural"] = True
        if self.note:
            out["note"] = self.note
        return out


def to_jsonable(obj: Any) -> Any:
    """Convert certificates (morphisms, tuples, sets, dataclasses) to JSON data."""
    if obj is None or isinstance(obj, (bool, int, float, str)):
        return obj
    if isinstance(obj, Enum):
        return obj.value
    if hasattr(obj, "to_json"):
        return obj.to_json()
    if isinstance(obj, dict):
        return {str(k): to_jsonable(v) for k, v in sorted(obj.items(), key=lambda kv: str(kv[0]))}
    if isinstance(obj, (frozenset, set)):
        items = [to_jsonable(x) for x in obj]
        return sorted(items, key=lambda x: repr(x))
    if isinstance(obj, (list, tuple)):
        return [to_jsonable(x) for x in obj]
    return repr(obj)


@dataclass
class CheckResult:
    name: str
    verdict: Verdict


@dataclass
class ValidationReport:
    checks: list[CheckResult]

    @property
    def valid(self) -> bool:
        return all(c.verdict.status is not Status.FAILS for c in self.checks)

    def get(self, name: str) -> Verdict:
        for c in self.checks:
            if c.name == name:
                return c.verdict
        raise KeyError(name)

    def to_json(self) -> dict:
        return {"valid": self.valid, "checks": [{"name": c.name, **c.verdict.to_json()} for c in self.checks]}


class Category:
    """Common interface of all backends.

    Subclasses provide ``objects``, ``atoms``, ``morphism`` (canonicalize a
    word), ``left_quotient`` and ``mcm_set``; everything else has a default.
    """

    backend: str = "abstract"
    units_trivial: bool = True
    right_cancellative: bool = True
    group_embeddable: bool = False

    objects: tuple[str, ...] = ()
    atoms: tuple[Morphism, ...] = ()

    # -- element construction -------------------------------------------------
    def identity(self, v: str) -> Morphism:
        if v not in self._object_set:
            raise StructuralError("object", f"unknown object {v!r}")
        return Morphism((), v, v)

    @property
    def _object_set(self) -> frozenset:
        s = self.__dict__.get("_objset")
        if s is None:
            s = frozenset(self.objects)
            self.__dict__["_objset"] = s
        return s

    def atom(self, name: str) -> Morphism:
        for a in self.atoms:
            if a.word == (name,):
                return a
        raise CompositionError(f"unknown atom {name!r}")

    def morphism(self, word: Sequence[str], at: str | None = None) -> Morphism:
        raise NotImplementedError

    def parse_word(self, text: str, at: str | None = None) -> Morphism:
        """Read a word such as ``abab``, ``a.b``, ``e1 f2`` or ``1``."""
        text = text.strip()
        names = [a.word[0] for a in self.atoms]
        if text in ("", "1", "ε") or text.startswith("1_"):
            v = text[2:] if text.startswith("1_") else at
            if v is None:
                if len(self.objects) != 1:
                    raise CompositionError("identity needs an object, write 1_<object>")
                v = self.objects[0]
            return self.identity(v)
        tokens = [t for t in text.replace(".", " ").split() if t]
        if len(tokens) == 1 and tokens[0] not in names:
            tokens = _split_word(tokens[0], names)
        for t in tokens:
            if t not in names:
                raise CompositionError(f"unknown atom {t!r} in {text!r}")
        return self.morphism(tuple(tokens), at)

    # -- algebra ---------------------------------------------------------------
    def compose(self, a: Morphism, b: Morphism) -> Morphism:
        if a.src != b.dst:
            raise CompositionError(f"cannot compose {a} ({a.src}) with {b} (target {b.dst})")
        if not b.word:
            return a
        if not a.word:
            return b
        return self.morphism(a.word + b.word)

    def product(self, items: Iterable[Morphism]) -> Morphism:
        items = list(items)
        if not items:
            raise CompositionError("empty product")
        out = items[-1]
        for x in reversed(items[:-1]):
            out = self.compose(x, out)
        return out

    def left_quotient(self, a: Morphism, b: Morphism) -> Morphism | None:
        """Return x with a x = b, or None when a does not left-divide b."""
        raise NotImplementedError

    def left_divides(self, a: Morphism, b: Morphism) -> bool:
        if a.dst != b.dst:
            return False
        return self.left_quotient(a, b) is not None

    def right_quotient(self, a: Morphism, b: Morphism) -> Morphism | None:
        """Return x with x a = b, or None."""
        raise NotImplementedError

    def mcm_set(self, a: Morphism, b: Morphism) -> tuple[Morphism, ...]:
        raise NotImplementedError

    def is_unit(self, a: Morphism) -> bool:
        return a.is_identity

    def star_rep(self, a: Morphism) -> Morphism:
        """Chosen representative of the class a C* (trivial for presented backends)."""
        return a

    def length(self, a: Morphism) -> int:
        return len(a.word)

    # -- enumeration -----------------------------------------------------------
    def atoms_into(self, v: str) -> tuple[Morphism, ...]:
        """Atoms a with target v."""
        cache = self.__dict__.setdefault("_atoms_into", {})
        if v not in cache:
            cache[v] = tuple(a for a in self.atoms if a.dst == v)
        return cache[v]

    def ball(self, v: str, radius: int, family=None) -> list[Morphism]:
        """All morphisms with target v of length at most ``radius``.

        Length is the atom length, or the S-length when a Garside family is
        given (products of at most ``radius`` letters).
        """
        if radius < 0:
            raise ValueError("radius must be nonnegative")
        gens = (lambda u: family.letters_into(u)) if family is not None else self.atoms_into
        seen = {self.identity(v)}
        frontier = [self.identity(v)]
        for _ in range(radius):
            nxt = []
            for x in frontier:
                for g in gens(x.src):
                    y = self.compose(x, g)
                    if y not in seen:
                        seen.add(y)
                        nxt.append(y)
            frontier = nxt
            if len(seen) > BALL_CAP:
                raise CapacityError(f"ball at {v} exceeds {BALL_CAP} elements at radius {radius}")
        return sorted(seen, key=sort_key)

    def all_ball(self, radius: int, family=None) -> list[Morphism]:
        out = []
        for v in self.objects:
            out.extend(self.ball(v, radius, family))
        return out

    def reaches(self, w: str, v: str) -> bool:
        """True iff some morphism has target w and domain v (w C v nonempty)."""
        return v in self.reachable_from(w)

    def reachable_from(self, w: str) -> frozenset:
        cache = self.__dict__.setdefault("_reach", {})
        if w not in cache:
            seen = {w}
            queue = deque([w])
            while queue:
                u = queue.popleft()
                for a in self.atoms_into(u):
                    if a.src not in seen:
                        seen.add(a.src)
                        queue.append(a.src)
            cache[w] = frozenset(seen)
        return cache[w]

    def right_divides(self, a: Morphism, b: Morphism) -> bool:
        if a.src != b.src:
            return False
        return self.right_quotient(a, b) is not None

    def describe(self) -> dict:
        return {"backend": self.backend, "objects": list(self.objects), "atoms": [a.word[0] for a in self.atoms]}

    def validate(self) -> ValidationReport:
        return ValidationReport([CheckResult("construction", Verdict.ok(structural=True))])


BALL_CAP = 200_000


def _split_word(token: str, names: Sequence[str]) -> list[str]:
    """Split a juxtaposed word into atom names, longest match first."""
    by_len = sorted(set(names), key=len, reverse=True)
    out = []
    i = 0
    while i < len(token):
        for n in by_len:
            if token.startswith(n, i):
                out.append(n)
                i += len(n)
                break
        else:
            raise CompositionError(f"cannot read {token!r} as a word over {sorted(names)}")
    return out


# ---------------------------------------------------------------------------
# Path categories of directed graphs


@dataclass(frozen=True)
class Edge:
    id: str
    src: str
    dst: str
    color: int = 1


class GraphPath(Category):
    """The free category on a directed graph (a 1-graph)."""

    backend = "graphpath"

    def __init__(self, vertices: Sequence[str], edges: Sequence[Edge]):
        if not vertices:
            raise StructuralError("vertex", "the empty category is not allowed")
        if len(set(vertices)) != len(vertices):
            raise StructuralError("vertex", "duplicate vertex label")
        self.objects = tuple(vertices)
        ids = [e.id for e in edges]
        if len(set(ids)) != len(ids):
            raise StructuralError("edge", "duplicate edge label")
        for e in edges:
            for end in (e.src, e.dst):
                if end not in self.objects:
                    raise StructuralError("edge", f"edge {e.id} refers to unknown vertex {end!r}")
            if e.id in self.objects:
                raise StructuralError("edge", f"edge {e.id} reuses a vertex label")
        self.edges = tuple(edges)
        self._edge = {e.id: e for e in edges}
        self.atoms = tuple(Morphism((e.id,), e.src, e.dst) for e in edges)
        self.group_embeddable = len(self.objects) == 1

    def morphism(self, word: Sequence[str], at: str | None = None) -> Morphism:
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
        return Morphism(word, es[-1].src, es[0].dst)

    def left_quotient(self, a, b):
        if a.dst != b.dst or len(a.word) > len(b.word) or b.word[: len(a.word)] != a.word:
            return None
        rest = b.word[len(a.word):]
        return Morphism(rest, b.src, a.src) if rest else self.identity(a.src)

    def right_quotient(self, a, b):
        if a.src != b.src or len(a.word) > len(b.word):
            return None
        k = len(b.word) - len(a.word)
        if b.word[k:] != a.word:
            return None
        return Morphism(b.word[:k], a.dst, b.dst) if k else self.identity(a.dst)

    def mcm_set(self, a, b):
        if a.dst != b.dst:
            raise CompositionError("mcm needs a common target")
        if self.left_divides(a, b):
            return (b,)
        if self.left_divides(b, a):
            return (a,)
        return ()


# ---------------------------------------------------------------------------
# Explicit finite categories


class ExplicitFinite(Category):
    """A finite category given by its non-identity morphisms and products.

    ``table[(f, g)] = h`` records f g = h for composable non-identities; an
    object name stands for its identity.
    """

    backend = "explicit"

    def __init__(self, objects: Sequence[str], morphisms: Sequence[tuple[str, str, str]],
                 table: dict[tuple[str, str], str]):
        if not objects:
            raise StructuralError("object", "the empty category is not allowed")
        self.objects = tuple(objects)
        self._ends: dict[str, tuple[str, str]] = {v: (v, v) for v in objects}
        for name, s, t in morphisms:
            if name in self._ends:
                raise StructuralError("mor", f"duplicate name {name!r}")
            for end in (s, t):
                if end not in self.objects:
                    raise StructuralError("mor", f"morphism {name} refers to unknown object {end!r}")
            self._ends[name] = (s, t)
        self.names = tuple(m[0] for m in morphisms)
        self.table = dict(table)
        for (f, g), h in self.table.items():
            for n in (f, g, h):
                if n not in self._ends:
                    raise StructuralError("comp", f"unknown morphism {n!r}")
        self.atoms = tuple(Morphism((n,), *self._ends[n]) for n in self.names)
        self._elem = {n: self._as_morphism(n) for n in self._ends}
        missing = [(f, g) for f in self.names for g in self.names
                   if self._ends[f][0] == self._ends[g][1] and (f, g) not in self.table]
        if missing:
            f, g = missing[0]
            raise StructuralError("comp", f"missing product {f} {g}")
        self._units = frozenset(self._find_units())
        self.units_trivial = not self._units
        self.right_cancellative = self._check_right_cancellative()

    def _as_morphism(self, name: str) -> Morphism:
        s, t = self._ends[name]
        if name in self.objects:
            return Morphism((), s, t)
        return Morphism((name,), s, t)

    def _name(self, m: Morphism) -> str:
        return m.word[0] if m.word else m.src

    def _mul(self, f: str, g: str) -> str:
        if self._ends[f][0] != self._ends[g][1]:
            raise CompositionError(f"cannot compose {f} with {g}")
        if f in self.objects:
            return g
        if g in self.objects:
            return f
        return self.table[(f, g)]

    def elements(self) -> list[Morphism]:
        return sorted(self._elem.values(), key=sort_key)

    def morphism(self, word, at=None):
        word = tuple(word)
        if not word:
            if at is None:
                raise CompositionError("identity needs an object")
            return self.identity(at)
        for w in word:
            if w not in self._ends or w in self.objects:
                raise CompositionError(f"unknown morphism {w!r}")
        acc = word[-1]
        for f in reversed(word[:-1]):
            acc = self._mul(f, acc)
        return self._elem[acc]

    def compose(self, a, b):
        if a.src != b.dst:
            raise CompositionError(f"cannot compose {a} with {b}")
        return self._elem[self._mul(self._name(a), self._name(b))]

    def _find_units(self):
        units = set()
        for f in self.names:
            s, t = self._ends[f]
            for g in self.names:
                if self._ends[g] == (t, s) and self._mul(f, g) == t and self._mul(g, f) == s:
                    units.add(f)
        return units

    def is_unit(self, a):
        return a.is_identity or a.word[0] in self._units

    def _check_right_cancellative(self) -> bool:
        for x in self._ends:
            for y in self._ends:
                if x >= y or self._ends[x] != self._ends[y]:
                    continue
                for c in self._ends:
                    if self._ends[c][1] == self._ends[x][0] and self._mul(x, c) == self._mul(y, c):
                        return False
        return True

    def with_target(self, v: str) -> list[Morphism]:
        return [m for m in self.elements() if m.dst == v]

    def with_source(self, v: str) -> list[Morphism]:
        return [m for m in self.elements() if m.src == v]

    def left_quotient(self, a, b):
        if a.dst != b.dst:
            return None
        for x in self.with_target(a.src):
            if self.compose(a, x) == b:
                return x
        return None

    def right_quotient(self, a, b):
        if a.src != b.src:
            return None
        for x in self.with_source(a.dst):
            if self.compose(x, a) == b:
                return x
        return None

    def star_rep(self, a):
        cls = [self.compose(a, u) for u in self.with_target(a.src) if self.is_unit(u)]
        return min(cls, key=sort_key)

    def mcm_set(self, a, b):
        if a.dst != b.dst:
            raise CompositionError("mcm needs a common target")
        common = [z for z in self.with_target(a.dst) if self.left_divides(a, z) and self.left_divides(b, z)]
        minimal = [z for z in common
                   if not any(self.left_divides(y, z) and not self.left_divides(z, y) for y in common)]
        return tuple(sorted({self.star_rep(z) for z in minimal}, key=sort_key))

    def ball(self, v, radius, family=None):
        if family is not None:
            return super().ball(v, radius, family)
        return [m for m in self.with_target(v) if radius >= 1 or m.is_identity]

    def reachable_from(self, w):
        return frozenset(m.src for m in self.with_target(w))

    def validate(self) -> ValidationReport:
        names = list(self._ends)
        checks = []
        bad = None
        for f, g, h in itertools.product(names, repeat=3):
            if self._ends[f][0] == self._ends[g][1] and self._ends[g][0] == self._ends[h][1]:
                if self._mul(self._mul(f, g), h) != self._mul(f, self._mul(g, h)):
                    bad = (f, g, h)
                    break
        checks.append(CheckResult("associativity", Verdict.fail(bad) if bad else Verdict.ok(structural=True)))
        bad = None
        for f, g in self.table:
            if self._ends[self.table[(f, g)]] != (self._ends[g][0], self._ends[f][1]):
                bad = (f, g, self.table[(f, g)])
                break
        checks.append(CheckResult("endpoints", Verdict.fail(bad) if bad else Verdict.ok(structural=True)))
        checks.append(CheckResult("identities", Verdict.ok(structural=True, note="identities are implicit")))
        bad = None
        for c in names:
            for x, y in itertools.combinations(names, 2):
                if (self._ends[x][1] == self._ends[c][0] == self._ends[y][1]
                        and self._mul(c, x) == self._mul(c, y)):
                    bad = (c, x, y)
                    break
            if bad:
                break
        checks.append(CheckResult("left cancellation", Verdict.fail(bad) if bad else Verdict.ok(structural=True)))
        return ValidationReport(checks)


def validate_category(cat: Category) -> ValidationReport:
    return cat.validate()


def finite_alignment_probe(cat: Category, depth: int, verify: bool = False) -> Verdict:
    """Check that cones intersect in finitely many principal cones.

    Presented backends are finitely aligned for structural reasons; with
    ``verify`` the bounded check also runs: for every pair up to ``depth`` the
    mcm set consists of common multiples and covers every common multiple in
    the ball of radius ``2 * depth``.
    """
    reasons = {
        "graphpath": "two paths have a common extension only when one extends the other",
        "kgraph": "finite skeleton: mcms are the finitely many extensions to the degree join",
        "artin": "the presentation is complete for right reversing; lcms are unique",
        "explicit": "finite category",
    }
    structural = cat.backend in reasons and (cat.backend != "kgraph" or getattr(cat, "row_finite", True))
    if structural and not verify:
        return Verdict.ok({"reason": reasons[cat.backend]}, depth=depth, structural=True)
    for v in cat.objects:
        small = cat.ball(v, depth)
        big = cat.ball(v, 2 * depth)
        for a, b in itertools.combinations_with_replacement(small, 2):
            try:
                ms = cat.mcm_set(a, b)
            except FuelExhausted as exc:
                return Verdict.unknown(depth, {"pair": (a, b), "fuel": exc.fuel})
            for m in ms:
                if not (cat.left_divides(a, m) and cat.left_divides(b, m)):
                    return Verdict.fail({"pair": (a, b), "not_common_multiple": m}, depth)
            for z in big:
                if cat.left_divides(a, z) and cat.left_divides(b, z):
                    if not any(cat.left_divides(m, z) for m in ms):
                        return Verdict.fail({"pair": (a, b), "uncovered": z}, depth)
    return Verdict.ok({"reason": reasons.get(cat.backend, "bounded check")}, depth=depth, structural=structural)
