"""The twelve acceptance criteria, one test each.

Every test prints a single ``ACCEPTANCE <n> PASS|FAIL <title>`` line.  Run
``pytest tests/test_acceptance.py -v``.
"""

import itertools
import random
import subprocess
import sys
from pathlib import Path

import pytest

from garcat import fixtures as F
from garcat import gpd
from garcat.artin import garside_family
from garcat.chars import CharacterSpace, Germ, sample_characters
from garcat.core import Edge
from garcat.garside import GarsideFamily
from garcat.invariants import (
    boundary_pair,
    closure,
    enumerate_pairs,
    is_admissible,
    is_h_invariant,
    is_max_closed,
    make_pair,
)
from garcat.kgraph import (
    KGraph,
    build_garside_family,
    check_conditions,
    hereditary_saturated_enumerate,
    hereditary_to_pair,
    pair_to_hereditary,
)

from . import oracles

ROOT = Path(__file__).resolve().parent.parent
SPECS = ROOT / "specs"


@pytest.fixture
def verdict(capsys, request):
    """Call with (number, title, ok); prints the line, then asserts ok."""
    def report(n, title, ok, detail=""):
        with capsys.disabled():
            line = f"ACCEPTANCE {n:>2} {'PASS' if ok else 'FAIL'} {title}"
            print(("\n" if request.config.getoption("verbose") > 0 else "") + line + (f" ({detail})" if detail else ""))
        assert ok, detail
    return report


def test_01_normal_form_oracle(verdict):
    b3, free = F.braid3(), F.free_monoid()
    checked, bad = 0, []
    for cat, fam, n in [(b3, garside_family(b3), 8), (free, GarsideFamily(free, free.atoms), 10)]:
        for w in oracles.words("ab", n, 1):
            x = cat.morphism(w, at=cat.objects[0])
            nf = fam.normal_decompose(x).letters
            checked += 1
            if nf != oracles.peel(fam, x):
                bad.append((cat.backend, "".join(w)))
        # is_normal accepts exactly the oracle's outputs
        for path in oracles.letter_paths(fam, 4 if cat is b3 else 10):
            ok = fam.is_normal(path).ok
            checked += 1
            if ok != (oracles.peel(fam, fam.product(path)) == path):
                bad.append((cat.backend, path))
    verdict(1, "normal forms match maximal-divisor peeling", not bad, f"{checked} checks, {len(bad)} mismatches")


def test_02_incremental_head(verdict):
    cases = [("b3", garside_family(F.braid3())), ("square", build_garside_family(F.square_2graph())),
             ("ra_abc", garside_family(F.right_angled_abc()))]
    checked, bad = 0, []
    for name, fam in cases:
        for path in oracles.letter_paths(fam, 5):
            prefix, r1 = path[:-1], path[-1]
            if len(prefix) > 4:
                continue
            checked += 1
            if fam.head_incremental(prefix, r1) != fam.head(fam.product(path)):
                bad.append((name, path))
    verdict(2, "head_incremental equals head of the product", not bad, f"{checked} prefixes")


def test_03_free_monoid_classification(verdict):
    cat = F.free_monoid()
    fam = GarsideFamily(cat, cat.atoms)
    a, b = cat.atoms
    lat = enumerate_pairs(fam)
    ok = lat.pairs == [make_pair(), make_pair([a, b]), make_pair([a, b], ["v"])]
    ok &= boundary_pair(fam) == make_pair([a, b])
    verdict(3, "free monoid: three pairs, boundary ({a,b}, {})", ok)


def test_04_b3_classification(verdict):
    cat = F.braid3()
    fam = garside_family(cat)
    S, delta = fam.letters, cat.parse_word("aba")
    chain = [make_pair(), make_pair([delta]), make_pair(S), make_pair(S, ["*"])]
    lat = enumerate_pairs(fam)
    ok = lat.pairs == chain and all(chain[i] <= chain[i + 1] for i in range(3))
    ok &= boundary_pair(fam) == make_pair([delta])
    verdict(4, "B3: chain of four pairs, boundary ({aba}, {})", ok)


def test_05_square_classification(verdict):
    cat = F.square_2graph()
    fam = build_garside_family(cat)
    over_infinite = {p for p in enumerate_pairs(fam).pairs if not p.D}
    # >=-closed subsets of S_P = {(1,0), (0,1), (1,1)}, pulled back along the degree
    degrees = sorted({cat.degree(s) for s in fam.letters})
    closed = []
    for r in range(len(degrees) + 1):
        for U in itertools.combinations(degrees, r):
            if all(d in U for u in U for d in degrees if all(x >= y for x, y in zip(d, u))):
                closed.append(make_pair([s for s in fam.letters if cat.degree(s) in U]))
    ok = len(over_infinite) == 5 and over_infinite == set(closed)
    verdict(5, "single-square 2-graph: five pairs = the >=-closed subsets", ok, f"{len(over_infinite)} pairs")


def test_06_conditions_vs_predicates(verdict):
    fams = [build_garside_family(mk()) for mk in (F.square_2graph, F.flip_2graph, F.grid_2graph)]
    # the fans exercise (C) and max-closedness through non locally finite windows
    for mk in (F.fan_1graph, F.fan_2graph):
        kg = build_garside_family(mk())
        fams.append(GarsideFamily(kg.category, kg.letters, locally_finite=False))
    checked, bad = 0, []
    for fam in fams:
        assert len(fam.letters) <= 8
        objs = fam.category.objects
        for r in range(len(fam.letters) + 1):
            for T in itertools.combinations(fam.letters, r):
                for D in ([], list(objs)):
                    pair = make_pair(T, D)
                    res = check_conditions(fam, pair)
                    checked += 1
                    if (res["A"].holds, res["I"].holds, res["C"].holds) != (
                            is_admissible(fam, pair).holds, is_h_invariant(fam, pair).holds,
                            is_max_closed(fam, pair).holds):
                        bad.append(pair)
    verdict(6, "(A)/(I)/(C) agree with the three predicates", not bad, f"{checked} pairs over {len(fams)} families")


def _sourceless_graphs(max_vertices=4, max_edges=6):
    """Sourceless directed multigraphs up to isomorphism."""
    seen = set()
    for n in range(1, max_vertices + 1):
        slots = [(s, d) for s in range(n) for d in range(n)]
        perms = list(itertools.permutations(range(n)))
        for m in range(1, max_edges + 1):
            for edges in itertools.combinations_with_replacement(slots, m):
                if {d for _, d in edges} != set(range(n)):
                    continue
                key = min(tuple(sorted((p[s], p[d]) for s, d in edges)) for p in perms)
                if (n, key) not in seen:
                    seen.add((n, key))
                    yield n, key


def test_07_hereditary_bijection(verdict):
    count, bad = 0, []
    for n, edges in _sourceless_graphs():
        kg = KGraph([f"v{i}" for i in range(n)],
                    [Edge(f"e{j}", f"v{s}", f"v{d}") for j, (s, d) in enumerate(edges)], [])
        fam = build_garside_family(kg)
        bp = boundary_pair(fam)
        hs = hereditary_saturated_enumerate(kg)
        pairs = enumerate_pairs(fam, within=bp).pairs
        ok = len(hs) == len(pairs)
        ok &= all(pair_to_hereditary(fam, hereditary_to_pair(fam, H, bp), bp) == H for H in hs)
        ok &= all(hereditary_to_pair(fam, pair_to_hereditary(fam, p, bp), bp) == p for p in pairs)
        count += 1
        if not ok:
            bad.append((n, edges))
    verdict(7, "boundary pairs biject with hereditary saturated sets", not bad and count > 1000,
            f"{count} graphs")


def test_08_right_angled_mechanism(verdict):
    fam = garside_family(F.right_angled_abc())
    full = make_pair(fam.letters)
    bad = [t for t in fam.letters if closure(fam, make_pair([t])) != full]
    verdict(8, "right-angled: closure of any single letter is (S, {})", not bad, f"{len(fam.letters)} letters")


def test_09_boundary_topfree(verdict):
    ok = True
    for cat in (F.square_2graph(), F.braid3()):
        rep = gpd.boundary_topfree_probe(cat, 3)
        ok &= rep.verdict.fails and gpd.replay(cat, rep)
    ok &= gpd.boundary_topfree_probe(F.free_monoid(), 3).verdict.holds
    verdict(9, "boundary topological freeness: Fails on square and B3, Holds on free", ok)


def test_10_gc_suite(verdict):
    free = F.free_monoid()
    ok = True
    fractions = gpd.reduced_fractions(free, 3)
    for u, v in fractions:
        rep = gpd.gc_probe(free, u, v, 3)
        ok &= rep.verdict.fails and len(rep.verdict.certificate["separator"]) <= 3 and gpd.replay(free, rep)
    ok &= gpd.gc_aggregate(free, 3).verdict.holds
    for cat in (F.naturals(), F.braid3()):
        for u, v in gpd.reduced_fractions(cat, 3):
            ok &= not gpd.gc_probe(cat, u, v, 3).verdict.fails
    verdict(10, "G^c: separators on the free monoid, none on N and B3", ok, f"{len(fractions)} free fractions")


def _random_germ(space, chi, rng, radius=2):
    cat = space.cat
    ds = [d for d in cat.ball(chi.vertex, radius) if space.contains_cone(chi, d)]
    d = rng.choice(ds)
    return Germ(rng.choice([c for c in cat.all_ball(radius) if c.src == d.src]), d, chi)


def test_11_groupoid_laws(verdict):
    cases = [("free", GarsideFamily(F.free_monoid(), F.free_monoid().atoms)), ("b3", garside_family(F.braid3())),
             ("square", build_garside_family(F.square_2graph())), ("flip", build_garside_family(F.flip_2graph())),
             ("ra_abc", garside_family(F.right_angled_abc()))]
    bad = []
    for name, fam in cases:
        space = CharacterSpace(fam)
        rng = random.Random(0)
        chars = sample_characters(space, 2)
        for _ in range(200):
            chi = rng.choice(chars)
            g3 = _random_germ(space, chi, rng)
            g2 = _random_germ(space, space.germ_apply(g3), rng)
            g1 = _random_germ(space, space.germ_apply(g2), rng)
            left = space.germ_compose(space.germ_compose(g1, g2), g3)
            right = space.germ_compose(g1, space.germ_compose(g2, g3))
            ok = space.germ_eq(left, right) and space.germ_apply(left) == space.germ_apply(right)
            ok &= space.germ_eq(space.germ_compose(space.germ_inverse(g1), g1), space.unit(g1.base))
            ok &= space.germ_eq(space.germ_compose(g1, space.unit(g1.base)), g1)
            ok &= space.in_omega_max(chi, 3).holds == space.in_omega_max(space.germ_apply(g3), 3).holds
            if not ok:
                bad.append((name, g1, g2, g3))
    verdict(11, "germ associativity, inverse and unit laws; Omega_max invariance", not bad,
            f"{200 * len(cases)} triples")


def _cli(*args):
    proc = subprocess.run([sys.executable, "-m", "garcat", *args], capture_output=True, cwd=ROOT)
    return proc.returncode, proc.stdout, proc.stderr


def test_12_determinism(verdict):
    cmds = [cmd for spec in sorted(SPECS.glob("*.cat"))
            for cmd in (["check", str(spec), "all", "--depth", "2"], ["classify", str(spec)])]
    bad = [c for c in cmds if _cli(*c) != _cli(*c)]
    verdict(12, "check all and classify are byte-identical across runs", not bad, f"{2 * len(cmds)} runs")
