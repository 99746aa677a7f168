"""Bounded deciders for the groupoid criteria of finitely aligned categories.

Every probe returns a :class:`CriterionReport`.  Fails verdicts carry a
counterexample that :func:`replay` re-checks through public operations.
Holds verdicts are either structural or valid up to the recorded depth.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .core import (
    Category,
    DomainError,
    FuelExhausted,
    Morphism,
    UnsupportedClass,
    Verdict,
    sort_key,
)

CRITERIA = ("Hausdorff", "BoundaryHausdorff", "TopFree", "Effective", "BoundaryMinimal",
            "BoundaryLocContr", "BoundaryTopFree", "BoundaryEffective", "Cofinal",
            "PureInfWitness", "GcTrivial")


@dataclass(frozen=True)
class CriterionReport:
    criterion: str
    verdict: Verdict
    depth: int | None = None

    def to_json(self) -> dict:
        return {"criterion": self.criterion, "depth": self.depth, **self.verdict.to_json()}


def _report(name, verdict, depth):
    return CriterionReport(name, verdict, depth)


def _parallel_pairs(cat: Category, radius: int):
    """Ordered pairs c != d of morphisms with equal domain and target."""
    elems = cat.all_ball(radius)
    for c in elems:
        for d in elems:
            if c != d and c.src == d.src and c.dst == d.dst:
                yield c, d


def _equalizer(cat, c, d, radius):
    return [x for x in cat.ball(c.src, radius) if cat.compose(c, x) == cat.compose(d, x)]


# ---------------------------------------------------------------------------
# Hausdorff properties


def hausdorff_probe(cat: Category, depth: int) -> CriterionReport:
    if cat.right_cancellative:
        return _report("Hausdorff", Verdict.ok({"reason": "finitely aligned and right cancellative"},
                                               structural=True), depth)
    covers = {}
    for c, d in _parallel_pairs(cat, depth):
        eq = _equalizer(cat, c, d, 2 * depth)
        gens = [x for x in eq if not any(y != x and cat.left_divides(y, x) and not cat.left_divides(x, y)
                                         for y in eq)]
        bad = next((x for x in eq if not any(cat.left_divides(g, x) for g in gens)), None)
        if bad is not None:
            return _report("Hausdorff", Verdict.fail({"c": c, "d": d, "uncovered": bad}, depth), depth)
        covers[(c, d)] = gens
    exact = cat.backend == "explicit"
    return _report("Hausdorff", Verdict.ok({"covers": len(covers)}, depth=depth, structural=exact), depth)


def boundary_hausdorff_probe(cat: Category, depth: int) -> CriterionReport:
    if cat.right_cancellative:
        return _report("BoundaryHausdorff", Verdict.ok({"reason": "finitely aligned and right cancellative"},
                                                       structural=True), depth)
    for c, d in _parallel_pairs(cat, depth):
        eq = _equalizer(cat, c, d, 2 * depth)
        gens = [x for x in eq if not any(y != x and cat.left_divides(y, x) for y in eq)] or eq
        for x in eq:
            if not any(cat.mcm_set(x, g) for g in gens):
                return _report("BoundaryHausdorff", Verdict.fail({"c": c, "d": d, "x": x}, depth), depth)
    return _report("BoundaryHausdorff", Verdict.ok(depth=depth, structural=cat.backend == "explicit"), depth)


# ---------------------------------------------------------------------------
# topological freeness and effectiveness of the full groupoid


def _unit_loops(cat, v, depth):
    return [u for u in cat.ball(v, max(depth, 1)) if u.src == v and cat.is_unit(u) and not u.is_identity]


def _cone_families(cat, v, depth, max_size=3):
    nonunits = [x for x in cat.ball(v, depth) if not cat.is_unit(x)]
    for r in range(0, min(max_size, len(nonunits)) + 1):
        yield from itertools.combinations(nonunits, r)


def _unit_probe(cat, depth, pointwise):
    name = "Effective" if pointwise else "TopFree"
    if cat.units_trivial:
        return _report(name, Verdict.ok({"reason": "the only unit loops are identities"}, structural=True), depth)
    for v in cat.objects:
        for u in _unit_loops(cat, v, depth):
            for cs in _cone_families(cat, v, depth):
                rest = [x for x in cat.ball(v, depth) if not any(cat.left_divides(c, x) for c in cs)]
                hyp = all(_fixes_cone(cat, u, z) for z in rest)
                if not hyp:
                    continue
                fixed = [x for x in rest if cat.compose(u, x) == x]
                ok = len(fixed) == len(rest) if pointwise else bool(fixed)
                if not ok:
                    return _report(name, Verdict.fail({"vertex": v, "unit": u, "cones": list(cs)}, depth,
                                                      structural=cat.backend == "explicit"), depth)
    return _report(name, Verdict.ok(depth=depth, structural=cat.backend == "explicit"), depth)


def _fixes_cone(cat, u, z):
    q = cat.left_quotient(z, cat.compose(u, z))
    return q is not None and cat.is_unit(q)


def topfree_probe(cat: Category, depth: int) -> CriterionReport:
    return _unit_probe(cat, depth, pointwise=False)


def effective_probe(cat: Category, depth: int) -> CriterionReport:
    return _unit_probe(cat, depth, pointwise=True)


# ---------------------------------------------------------------------------
# the boundary groupoid


def boundary_minimal_probe(cat: Category, depth: int) -> CriterionReport:
    certs = {}
    for v in cat.objects:
        for w in cat.objects:
            targets = [x for x in cat.ball(v, depth) if cat.reaches(w, x.src)]
            if not targets:
                if not any(cat.reaches(w, u) for u in cat.reachable_from(v)):
                    return _report("BoundaryMinimal",
                                   Verdict.fail({"v": v, "w": w, "reason": "no vertex below v reaches w"},
                                                structural=True), depth)
                return _report("BoundaryMinimal", Verdict.unknown(depth, {"v": v, "w": w}), depth)
            ball = cat.ball(v, 2 * depth)
            chosen = []
            for x in ball:
                if any(cat.mcm_set(x, y) for y in chosen):
                    continue
                y = next((t for t in targets if cat.mcm_set(x, t)), None)
                if y is None:
                    return _report("BoundaryMinimal", Verdict.unknown(depth, {"v": v, "w": w, "x": x}), depth)
                chosen.append(y)
            certs[(v, w)] = chosen
    structural = all(len(c) == 1 and c[0].is_identity for c in certs.values())
    return _report("BoundaryMinimal", Verdict.ok({"covers": certs}, depth=depth, structural=structural), depth)


def _loccontr_witness(cat, x, depth, radius):
    ext = cat.ball(x.src, radius)
    for p, q in itertools.product(ext, repeat=2):
        d, c = cat.compose(x, p), cat.compose(x, q)
        if c.src != d.src:
            continue
        ys = cat.ball(c.src, radius)
        for y0 in ys:
            dy0 = cat.compose(d, y0)
            if cat.mcm_set(dy0, cat.compose(c, y0)):
                continue
            for y1 in ys:
                cy1, dy1 = cat.compose(c, y1), cat.compose(d, y1)
                if not (cat.left_divides(x, dy0) and cat.left_divides(x, dy1)):
                    continue
                if cat.mcm_set(dy0, cy1):
                    continue
                zs = [cat.compose(cy1, w) for w in cat.ball(cy1.src, depth)]
                if all(cat.mcm_set(z, dy0) or cat.mcm_set(z, dy1) for z in zs):
                    return {"c": c, "d": d, "y": (y0, y1)}
    return None


def boundary_loccontr_probe(cat: Category, depth: int, radius: int = 1) -> CriterionReport:
    witnesses = {}
    for x in cat.all_ball(depth):
        w = _loccontr_witness(cat, x, depth, radius)
        if w is None:
            return _report("BoundaryLocContr", Verdict.unknown(depth, {"x": x, "search_radius": radius}), depth)
        witnesses[x] = w
    return _report("BoundaryLocContr", Verdict.ok({"witnesses": len(witnesses)}, depth=depth), depth)


def boundary_topfree_probe(cat: Category, depth: int, family=None) -> CriterionReport:
    """Search c != d whose partial map d y -> c y is fixed-point free on its domain.

    The hypothesis (every x in the domain has c x C meeting d x C) is checked on
    the ball of radius 2 * depth + 1; the missing equalizer is structural for
    right cancellative categories.
    """
    hyp_radius = 2 * depth + 1
    found = None
    for c, d in _parallel_pairs(cat, depth):
        dom = [x for x in cat.ball(c.src, hyp_radius) if cat.left_divides(d, cat.compose(c, x))]
        if not dom:
            continue
        if not all(cat.mcm_set(cat.compose(c, x), cat.compose(d, x)) for x in dom):
            continue
        y = dom[0]
        eq = [z for z in (cat.compose(y, w) for w in cat.ball(y.src, depth))
              if cat.compose(c, z) == cat.compose(d, z)]
        if not eq:
            found = {"c": c, "d": d, "y": y, "hypothesis_radius": hyp_radius,
                     "no_equalizer": "right cancellative" if cat.right_cancellative else f"radius {depth}"}
            break
    if found:
        verdict = Verdict.fail(found, depth)
    else:
        verdict = Verdict.ok(depth=depth)
    if family is not None:
        from .invariants import boundary_pair, garside_topfree_probe, make_pair

        g = garside_topfree_probe(family, make_pair(), boundary_pair(family), min(depth, 3))
        verdict = Verdict(verdict.status, verdict.certificate, verdict.depth, verdict.structural,
                          f"garside-level probe on the boundary pair: {g.status.value}")
    return _report("BoundaryTopFree", verdict, depth)


def boundary_effective_probe(cat: Category, depth: int, family=None) -> CriterionReport:
    if cat.right_cancellative:
        rep = boundary_topfree_probe(cat, depth, family)
        v = rep.verdict
        note = "boundary groupoid is Hausdorff, so effective and topologically free agree"
        return _report("BoundaryEffective", Verdict(v.status, v.certificate, v.depth, v.structural, note), depth)
    for c, d in _parallel_pairs(cat, depth):
        for a in cat.ball(c.src, depth):
            delta = [cat.compose(a, w) for w in cat.ball(a.src, depth)]
            if not all(cat.left_divides(d, cat.compose(c, x)) and cat.mcm_set(cat.compose(c, x), cat.compose(d, x))
                       for x in delta):
                continue
            eq = [b for b in delta if cat.compose(c, b) == cat.compose(d, b)]
            for z in delta:
                if not any(cat.mcm_set(z, b) for b in eq):
                    return _report("BoundaryEffective", Verdict.fail({"c": c, "d": d, "a": a, "z": z}, depth), depth)
    return _report("BoundaryEffective", Verdict.ok(depth=depth), depth)


# ---------------------------------------------------------------------------
# cofinality, pure infiniteness, G^c


def cofinality_check(cat: Category) -> CriterionReport:
    for v in cat.objects:
        for w in cat.objects:
            if not cat.reaches(w, v):
                return _report("Cofinal", Verdict.fail({"w": w, "v": v}, structural=True), None)
    return _report("Cofinal", Verdict.ok({"reason": "every vertex pair is connected"}, structural=True), None)


def _cones_nested_everywhere(cat, v) -> bool | None:
    """True when all cones at v intersect, for backends where this is decidable."""
    if cat.backend == "graphpath":
        return all(len(cat.atoms_into(u)) <= 1 for u in cat.reachable_from(v))
    if cat.backend == "artin":
        from .artin import left_reversibility_probe

        lr = left_reversibility_probe(cat)
        return True if lr.holds else (False if lr.fails else None)
    if cat.backend == "kgraph" and cat.group_embeddable:
        return True
    return None


def pure_inf_witness(cat: Category, depth: int) -> CriterionReport:
    witnesses = {}
    for v in cat.objects:
        ball = cat.ball(v, depth)
        pair = None
        for a, b in itertools.combinations(ball, 2):
            try:
                if not cat.mcm_set(a, b):
                    pair = (a, b)
                    break
            except FuelExhausted:
                continue
        if pair is None:
            if _cones_nested_everywhere(cat, v):
                return _report("PureInfWitness",
                               Verdict.fail({"vertex": v, "reason": "all cones intersect"}, structural=True), depth)
            return _report("PureInfWitness", Verdict.unknown(depth, {"vertex": v}), depth)
        witnesses[v] = pair
    return _report("PureInfWitness", Verdict.ok(witnesses, structural=True), depth)


def _check_gc_backend(cat):
    if len(cat.objects) != 1 or not cat.group_embeddable:
        raise UnsupportedClass(f"backend {cat.backend} does not declare an embedding into a group")
    if cat.backend == "artin":
        from .artin import spherical_probe

        if not (cat.data.right_angled or spherical_probe(cat).holds):
            raise UnsupportedClass("fraction clearing is only declared for spherical and right-angled monoids")


def is_reduced(cat: Category, u: Morphism, v: Morphism) -> bool:
    return not any(cat.right_divides(a, u) and cat.right_divides(a, v) for a in cat.atoms)


def translates_meet(cat: Category, u: Morphism, v: Morphism, p: Morphism) -> bool:
    """Does p P meet g p P for g = u v^-1?

    For a reduced fraction, g y lies in P exactly when v left-divides y, so
    the question becomes: is there n in mcm(p, v) with u (v \\ n) P meeting p P.
    """
    for n in cat.mcm_set(p, v):
        q = cat.compose(u, cat.left_quotient(v, n))
        if cat.mcm_set(q, p):
            return True
    return False


def gc_probe(cat: Category, u: Morphism, v: Morphism, depth: int) -> CriterionReport:
    _check_gc_backend(cat)
    if not is_reduced(cat, u, v):
        raise DomainError(f"fraction {u}/{v} is not reduced")
    vertex = cat.objects[0]
    for p in cat.ball(vertex, depth):
        if not translates_meet(cat, u, v, p):
            return _report("GcTrivial", Verdict.fail({"g": (u, v), "separator": p}, depth, structural=True), depth)
    return _report("GcTrivial", Verdict.unknown(depth, {"g": (u, v), "no_separator": True}), depth)


def reduced_fractions(cat: Category, depth: int) -> list[tuple[Morphism, Morphism]]:
    vertex = cat.objects[0]
    ball = cat.ball(vertex, depth)
    out = []
    for u in ball:
        for v in ball:
            if 0 < len(u) + len(v) <= depth and is_reduced(cat, u, v):
                out.append((u, v))
    return out


def gc_aggregate(cat: Category, depth: int) -> CriterionReport:
    """Separators for every reduced fraction g != 1 of length at most depth."""
    _check_gc_backend(cat)
    seps = {}
    for u, v in reduced_fractions(cat, depth):
        rep = gc_probe(cat, u, v, depth)
        if not rep.verdict.fails:
            return _report("GcTrivial", Verdict.unknown(depth, {"g": (u, v), "no_separator": True}), depth)
        seps[f"{u}/{v}"] = rep.verdict.certificate["separator"]
    return _report("GcTrivial", Verdict.ok({"separators": seps}, depth=depth), depth)


# ---------------------------------------------------------------------------


def check_all(cat: Category, depth: int, family=None) -> list[CriterionReport]:
    out = [hausdorff_probe(cat, depth), boundary_hausdorff_probe(cat, depth), topfree_probe(cat, depth),
           effective_probe(cat, depth), boundary_minimal_probe(cat, depth),
           boundary_loccontr_probe(cat, depth), boundary_topfree_probe(cat, depth, family),
           boundary_effective_probe(cat, depth, family), cofinality_check(cat), pure_inf_witness(cat, depth)]
    try:
        out.append(gc_aggregate(cat, depth))
    except UnsupportedClass as exc:
        out.append(_report("GcTrivial", Verdict.unknown(depth, note=f"not applicable: {exc}"), depth))
    return out


def run_criterion(cat: Category, name: str, depth: int, family=None) -> CriterionReport:
    table = {
        "Hausdorff": lambda: hausdorff_probe(cat, depth),
        "BoundaryHausdorff": lambda: boundary_hausdorff_probe(cat, depth),
        "TopFree": lambda: topfree_probe(cat, depth),
        "Effective": lambda: effective_probe(cat, depth),
        "BoundaryMinimal": lambda: boundary_minimal_probe(cat, depth),
        "BoundaryLocContr": lambda: boundary_loccontr_probe(cat, depth),
        "BoundaryTopFree": lambda: boundary_topfree_probe(cat, depth, family),
        "BoundaryEffective": lambda: boundary_effective_probe(cat, depth, family),
        "Cofinal": lambda: cofinality_check(cat),
        "PureInfWitness": lambda: pure_inf_witness(cat, depth),
        "GcTrivial": lambda: gc_aggregate(cat, depth),
    }
    lookup = {k.lower(): k for k in table}
    key = lookup.get(name.lower().replace("-", "").replace("_", ""))
    if key is None:
        raise DomainError(f"unknown criterion {name!r}; choose from {', '.join(CRITERIA)}")
    return table[key]()


# ---------------------------------------------------------------------------
# replaying counterexamples


def replay(cat: Category, report: CriterionReport) -> bool:
    """Re-derive a Fails verdict from its certificate; True when it stands."""
    v = report.verdict
    if not v.fails:
        raise DomainError("only Fails verdicts carry counterexamples")
    cert = v.certificate
    name = report.criterion
    if name == "BoundaryEffective" and "a" in cert:
        c, d, a, z = cert["c"], cert["d"], cert["a"], cert["z"]
        delta = [cat.compose(a, w) for w in cat.ball(a.src, report.depth)]
        if z not in delta or not all(cat.left_divides(d, cat.compose(c, x))
                                     and cat.mcm_set(cat.compose(c, x), cat.compose(d, x)) for x in delta):
            return False
        eq = [b for b in delta if cat.compose(c, b) == cat.compose(d, b)]
        return not any(cat.mcm_set(z, b) for b in eq)
    if name in ("BoundaryTopFree", "BoundaryEffective"):
        c, d, y = cert["c"], cert["d"], cert["y"]
        if c == d or c.src != d.src or c.dst != d.dst:
            return False
        if not cat.left_divides(d, cat.compose(c, y)):
            return False
        dom = [x for x in cat.ball(c.src, cert["hypothesis_radius"]) if cat.left_divides(d, cat.compose(c, x))]
        if not all(cat.mcm_set(cat.compose(c, x), cat.compose(d, x)) for x in dom):
            return False
        if cat.right_cancellative:
            return True
        return not any(cat.compose(c, cat.compose(y, w)) == cat.compose(d, cat.compose(y, w))
                       for w in cat.ball(y.src, report.depth))
    if name in ("TopFree", "Effective"):
        u, cs, vert = cert["unit"], cert["cones"], cert["vertex"]
        if not cat.is_unit(u) or u.is_identity or u.src != vert or u.dst != vert:
            return False
        rest = [x for x in cat.ball(vert, report.depth) if not any(cat.left_divides(c, x) for c in cs)]
        if not all(_fixes_cone(cat, u, z) for z in rest):
            return False
        fixed = [x for x in rest if cat.compose(u, x) == x]
        return len(fixed) < len(rest) if name == "Effective" else not fixed
    if name == "Cofinal":
        return not cat.reaches(cert["w"], cert["v"])
    if name == "BoundaryMinimal":
        return not any(cat.reaches(cert["w"], u) for u in cat.reachable_from(cert["v"]))
    if name == "GcTrivial":
        u, vv = cert["g"]
        return not translates_meet(cat, u, vv, cert["separator"])
    if name == "Hausdorff":
        c, d, x = cert["c"], cert["d"], cert["uncovered"]
        return cat.compose(c, x) == cat.compose(d, x)
    if name == "PureInfWitness":
        return bool(_cones_nested_everywhere(cat, cert["vertex"]))
    raise DomainError(f"no replayer for {name}")
