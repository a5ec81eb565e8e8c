"""Acceptance criteria 1-8, each printing one pass/fail line.

Run with ``pytest tests/test_acceptance.py -v``; the lines appear even
when output capture is on.
"""

import time

import pytest

from costacks.complexes import (
    CATALOG, annulus, cycle, disk, projective_plane, random_cover, tetrahedron_boundary, theta,
    three_arc_cover, torus_one_vertex, two_arc_cover, wedge,
)
from costacks.core import ConcreteFunctor, ConcreteGroupoid, is_full_and_faithful
from costacks.cosheaf import (
    PASS, check_cosheaf_sets, check_sh, check_st, check_vankampen, pi0_cosheaf, terminal_cosheaf_map,
)
from costacks.deformation import deform, postcondition_failures
from costacks.diagrams import delta_comparison, diagram_colim, diagram_tc, span
from costacks.equivalence import Verdict, equivalence_fingerprint
from costacks.functor_groupoid import functor_groupoid
from costacks.limits import gamma_embedding
from costacks.space import build_nerve, edge_cover, union

from oracles import candidate_count, functor_groupoid_counts
from randgen import (
    make_rng, random_chain, random_diagram, random_injective_span, random_pieces, random_presentation,
    random_square, synthetic_cosheaves,
)


@pytest.fixture
def report(capsys):
    def emit(number, title, ok, detail):
        with capsys.disabled():
            print(f"\ncriterion {number} {'PASS' if ok else 'FAIL'}: {title} ({detail})")
        return ok
    return emit


def to_point(g):
    pt = ConcreteGroupoid.point()
    return ConcreteFunctor(g, pt, {x: "*" for x in g.objects}, {f: ("*", "*") for f in g.morphisms})


def infinite_cyclic(fp):
    inv = fp.per_component[0] if fp.per_component else None
    return (fp.component_count == 1 and inv.abelian.free_rank == 1 and not inv.abelian.torsion)


def test_criterion_1_circle_from_a_span(report):
    start = time.perf_counter()
    pair, two = ConcreteGroupoid.discrete("pq"), ConcreteGroupoid.banal([0, 1])
    inc = ConcreteFunctor(pair, two, {"p": 0, "q": 1}, {("p", "p"): (0, 0), ("q", "q"): (1, 1)})
    d = span(pair, two, ConcreteGroupoid.point(), inc, to_point(pair))
    tc, colim = diagram_tc(d), diagram_colim(d)
    objects = len(tc.groupoid.vertices)
    ok_tc = infinite_cyclic(equivalence_fingerprint(tc.groupoid))
    ok_colim = infinite_cyclic(equivalence_fingerprint(colim.groupoid))
    elapsed = time.perf_counter() - start
    ok = report(1, "colim and tc of the circle span", objects == 5 and ok_tc and ok_colim and elapsed < 1,
                f"tc objects {objects}, tc Z {ok_tc}, colim Z {ok_colim}, {elapsed:.2f}s")
    assert ok


def two_member_covers(c, wanted=2):
    covers, seen, seed = [], set(), 0
    while len(covers) < wanted:
        cover = random_cover(c, 2, make_rng(seed))
        seed += 1
        key = frozenset(u.key() for u in cover)
        if key not in seen:
            seen.add(key)
            covers.append((c, cover))
        assert seed < 200, f"no distinct covers for {c.name}"
    return covers


def test_criterion_2_van_kampen(report):
    start = time.perf_counter()
    cases = 0
    bad = []
    for name in sorted(CATALOG):
        c = CATALOG[name]()
        covers = two_member_covers(c)
        if name.startswith("cycle"):
            covers.append(two_arc_cover(len(c.vertices)))
        for x, (u, v) in covers:
            r = check_vankampen(x, u, v)
            cases += 1
            same = r.fingerprints["colim"] == r.fingerprints["tc"] == r.fingerprints["pi1"]
            if (r.pushout, r.two_pushout) != (Verdict.YES, Verdict.YES) or not same:
                bad.append((name, r.pushout, r.two_pushout))
    elapsed = time.perf_counter() - start
    ok = report(2, "Van Kampen on two-member covers", not bad and len(CATALOG) >= 20 and elapsed < 60,
                f"{len(CATALOG)} complexes, {cases} covers, {len(bad)} failures, {elapsed:.1f}s")
    assert ok, bad


def yes(verdicts):
    return sum(v == Verdict.YES for v in verdicts)


def test_criterion_3_delta_dichotomy(report):
    chains = [delta_comparison(random_chain(make_rng(s))).verdict for s in range(12)]
    spans = [delta_comparison(random_injective_span(make_rng(s))).verdict for s in range(12)]
    pair = ConcreteGroupoid.discrete("pq")
    pt = ConcreteGroupoid.point()
    collapse = delta_comparison(span(pair, pt, pt, to_point(pair), to_point(pair)))
    tc_z = infinite_cyclic(equivalence_fingerprint(collapse.tc.groupoid))
    colim_trivial = equivalence_fingerprint(collapse.colim.groupoid).per_component[0].abelian.is_trivial()
    ok = (yes(chains) == len(chains) and yes(spans) == len(spans) and collapse.verdict == Verdict.NO
          and tc_z and colim_trivial)
    ok = report(3, "delta on chains, injective spans and the collapsing span", ok,
                f"chains {yes(chains)}/{len(chains)} Yes, spans {yes(spans)}/{len(spans)} Yes, "
                f"collapse {collapse.verdict.value}")
    assert ok


def test_criterion_4_deformation(report):
    start = time.perf_counter()
    failures, oversize = [], 0
    n = 120
    for seed in range(n):
        i1, i2, j1, j2, lam = random_square(make_rng(seed), identity_lambda=seed % 5 == 0)
        for g in (i1.domain, i1.codomain, i2.codomain, j1.codomain):
            if len(g.objects) > 5 or len(g.morphisms) > 40:
                oversize += 1
        bad = postcondition_failures(i1, i2, j1, j2, lam, deform(i1, i2, j1, j2, lam))
        if bad:
            failures.append((seed, bad[0]))
    elapsed = time.perf_counter() - start
    ok = report(4, "deformation postconditions", not failures and not oversize and elapsed < 30,
                f"{n} squares, {len(failures)} failures, {oversize} oversize groupoids, {elapsed:.1f}s")
    assert ok, failures


def test_criterion_5_gamma_full_and_faithful(report):
    n, bad = 60, []
    for seed in range(n):
        d = random_diagram(make_rng(seed))
        assert len(d.poset.elements) <= 4
        g = gamma_embedding(d)
        if g.check() or not is_full_and_faithful(g):
            bad.append(seed)
    ok = report(5, "gamma full and faithful", not bad, f"{n} diagrams, {len(bad)} failures")
    assert ok, bad


def three_member_covers():
    c6 = cycle(6)
    c9, arcs9 = three_arc_cover(9)
    d4, d6 = disk(4), disk(6)
    tet, tor, rp2, th = tetrahedron_boundary(), torus_one_vertex(), projective_plane(), theta()
    w, ann = wedge(3, 3), annulus(3)
    return {
        "cycle6": (c6, edge_cover(c6, [["e0", "e1"], ["e2", "e3"], ["e4", "e5"]])),
        "cycle9": (c9, arcs9),
        "cycle6 overlapping": (c6, edge_cover(c6, [["e0", "e1", "e2"], ["e2", "e3", "e4"], ["e4", "e5", "e0"]])),
        "disk4": (d4, edge_cover(d4, [["D"], ["e0", "e1"], ["e2", "e3"]])),
        "disk6": (d6, edge_cover(d6, [["D"], ["e0", "e1", "e2"], ["e3", "e4", "e5"]])),
        "tetrahedron": (tet, edge_cover(tet, [["f012", "f013"], ["f023"], ["f123"]])),
        "theta": (th, edge_cover(th, [["Nx", "xS"], ["Ny", "yS"], ["Nz", "zS"]])),
        "torus1": (tor, edge_cover(tor, [["T"], ["a"], ["b"]])),
        "rp2": (rp2, edge_cover(rp2, [["P"], ["a"], ["b"]])),
        "wedge3,3": (w, edge_cover(w, [["ae0", "ae1", "ae2"], ["be0", "be1"], ["be2", "be0"]])),
        "annulus3": (ann, edge_cover(ann, [["q0"], ["q1"], ["q2"]])),
    }


def test_criterion_6_pi0_terminal_cosheaf(report):
    f = pi0_cosheaf()
    checked, bad = 0, []
    covers = [(name, CATALOG[name](), seed, members) for name in sorted(CATALOG)
              for seed in range(5) for members in (1, 2, 3, 4)]
    for name, c, seed, members in covers:
        cover = random_cover(c, members, make_rng(seed))
        checked += 1
        if check_cosheaf_sets(f, c.whole(), cover).verdict != PASS:
            bad.append((name, seed, members))
    for name, (c, cover) in three_member_covers().items():
        checked += 1
        if check_cosheaf_sets(f, c.whole(), cover).verdict != PASS:
            bad.append((name, "3-cover"))
    maps = 0
    for label, g in synthetic_cosheaves().items():
        for name in ("two_triangles", "theta", "disk4", "cycle5"):
            # raises if the two constructions disagree or the map is not unique
            terminal_cosheaf_map(g, CATALOG[name]().whole())
            maps += 1
    ok = report(6, "pi0 cosheaf and unique maps to pi0", not bad and len(synthetic_cosheaves()) >= 10,
                f"{checked} covers, {len(bad)} failures, {len(synthetic_cosheaves())} cosheaves, {maps} maps")
    assert ok, bad


def test_criterion_7_sh_st_escalation(report):
    z2 = ConcreteGroupoid.cyclic(2)
    counter, vacuous, rows = [], 0, 0
    for name, (c, cover) in three_member_covers().items():
        pair_ok = {"sh": True, "st": True}
        for a in range(3):
            for b in range(a + 1, 3):
                sub = [cover[a], cover[b]]
                n2 = build_nerve(sub, space=union(*sub))
                pair_ok["sh"] &= check_sh(n2, z2).verdict == PASS
                pair_ok["st"] &= check_st(n2, z2).verdict == PASS
        n3 = build_nerve(cover, space=c)
        full = {"sh": check_sh(n3, z2).verdict, "st": check_st(n3, z2).verdict}
        for cond in ("sh", "st"):
            rows += 1
            if not pair_ok[cond]:
                vacuous += 1
            elif full[cond] != PASS:
                counter.append((name, cond, full[cond]))
    complexes = len(three_member_covers())
    ok = report(7, "sh/st escalation from pairs to three-member covers",
                not counter and complexes >= 5 and vacuous < rows,
                f"{complexes} complexes, {rows} checks, {len(counter)} counterexamples, "
                f"{vacuous} with a failing pair")
    assert ok, counter


def test_criterion_8_functor_groupoid_oracle(report):
    pairs, bad, seed = 0, [], 0
    while pairs < 40:
        rng = make_rng(seed)
        seed += 1
        p = random_presentation(rng)
        g = random_pieces(rng, max_objects=3, max_morphisms=20).groupoid
        if candidate_count(p, g) > 10 ** 4:
            continue
        pairs += 1
        h = functor_groupoid(p, g)
        if (len(h.objects), len(h.morphisms)) != functor_groupoid_counts(p, g):
            bad.append(seed - 1)
    ok = report(8, "functor groupoid counts against brute force", not bad and pairs >= 30,
                f"{pairs} pairs, {len(bad)} mismatches")
    assert ok, bad
