import pytest
from hypothesis import given, settings, strategies as st

from costacks.core import ConcreteFunctor, ConcreteGroupoid
from costacks.diagrams import (
    COVARIANT, GroupoidDiagram, chain, delta_comparison, diagram_colim, diagram_tc, filtered_colim, span,
    tc_to_filtered,
)
from costacks.equivalence import Verdict, are_equivalent, equivalence_fingerprint
from costacks.errors import NotFilteredError, ShapeError
from costacks.poset import FinitePoset
from costacks.presentation import concretize

from randgen import make_rng, random_chain, random_injective_span

seeds = st.integers(0, 10 ** 6)


def to_point(g):
    pt = ConcreteGroupoid.point()
    return ConcreteFunctor(g, pt, {x: "*" for x in g.objects}, {f: ("*", "*") for f in g.morphisms})


def circle_span():
    pair, two = ConcreteGroupoid.discrete("pq"), ConcreteGroupoid.banal([0, 1])
    inc = ConcreteFunctor(pair, two, {"p": 0, "q": 1}, {("p", "p"): (0, 0), ("q", "q"): (1, 1)})
    return span(pair, two, ConcreteGroupoid.point(), inc, to_point(pair))


def free_rank_one(fp):
    return (fp.component_count == 1 and fp.per_component[0].abelian.free_rank == 1
            and not fp.per_component[0].abelian.torsion)


def test_circle_from_two_points_and_an_interval():
    d = circle_span()
    tc, colim = diagram_tc(d), diagram_colim(d)
    assert len(tc.groupoid.vertices) == 5
    assert len(colim.groupoid.vertices) == 1
    assert free_rank_one(equivalence_fingerprint(tc.groupoid))
    assert free_rank_one(equivalence_fingerprint(colim.groupoid))
    assert delta_comparison(d).verdict == Verdict.YES


def test_tc_relation_counts():
    tc = diagram_tc(circle_span())
    # two objects in the apex, two strict pairs, no chains
    assert tc.counts["lambda_generators"] == 4
    assert tc.counts["cocycle"] == 0
    assert set(tc.lam) == {(i, j, x) for i, j in (("W", "U"), ("W", "V")) for x in "pq"}


def test_collapsing_span_separates_colim_and_tc():
    pair = ConcreteGroupoid.discrete("pq")
    d = span(pair, ConcreteGroupoid.point(), ConcreteGroupoid.point(), to_point(pair), to_point(pair))
    r = delta_comparison(d)
    assert r.verdict == Verdict.NO
    assert equivalence_fingerprint(r.colim.groupoid).per_component[0].abelian.is_trivial()
    assert free_rank_one(equivalence_fingerprint(r.tc.groupoid))


def test_delta_is_a_functor_onto_colim_classes():
    r = delta_comparison(circle_span())
    assert not r.functor.check()
    assert set(r.functor.vertex_map.values()) == set(r.colim.groupoid.vertices)


def test_cocycle_relations_on_a_chain():
    z2 = ConcreteGroupoid.cyclic(2)
    ident = ConcreteFunctor.identity(z2)
    d = chain([z2, z2, z2], [ident, ident])
    tc = diagram_tc(d)
    assert tc.counts["cocycle"] == 1
    assert are_equivalent(tc.groupoid, z2) == Verdict.YES


def test_diagram_check_catches_non_strict_triangle():
    z2 = ConcreteGroupoid.cyclic(2)
    ident = ConcreteFunctor.identity(z2)
    triv = ConcreteFunctor(z2, z2, {"*": "*"}, {0: 0, 1: 0})
    p = FinitePoset.from_covers([0, 1, 2], [(0, 1), (1, 2), (0, 2)])
    d = GroupoidDiagram(p, {0: z2, 1: z2, 2: z2}, {(0, 1): ident, (1, 2): ident, (0, 2): triv}, COVARIANT)
    assert any("not strict" in m for m in d.check())


def test_colim_rejects_contravariant():
    d = circle_span()
    with pytest.raises(ShapeError):
        diagram_colim(GroupoidDiagram(d.poset, d.values, {}, "contravariant"))


def test_filtered_colim_needs_filtered_poset():
    with pytest.raises(NotFilteredError):
        filtered_colim(circle_span())


def test_filtered_colim_of_chain():
    z2, z4 = ConcreteGroupoid.cyclic(2), ConcreteGroupoid.cyclic(4)
    double = ConcreteFunctor(z2, z4, {"*": "*"}, {0: 0, 1: 2})
    d = chain([z2, z4], [double])
    fc = filtered_colim(d)
    assert len(fc.objects) == 1 and len(fc.morphisms) == 4
    tc = diagram_tc(d.presented())
    f = tc_to_filtered(tc, fc)
    assert not f.check()
    assert are_equivalent(tc.groupoid, fc) == Verdict.YES


@settings(max_examples=15, deadline=None)
@given(seeds)
def test_delta_yes_on_chains(seed):
    d = random_chain(make_rng(seed))
    r = delta_comparison(d)
    assert r.verdict == Verdict.YES
    fc = filtered_colim(d)
    assert are_equivalent(fc, r.colim.groupoid) == Verdict.YES


@settings(max_examples=15, deadline=None)
@given(seeds)
def test_delta_yes_on_injective_spans(seed):
    d = random_injective_span(make_rng(seed))
    assert delta_comparison(d).verdict == Verdict.YES


@settings(max_examples=15, deadline=None)
@given(seeds)
def test_concretized_tc_of_chain_has_filtered_colim_size(seed):
    d = random_chain(make_rng(seed), length=2, max_objects=3, max_morphisms=12)
    c = concretize(diagram_tc(d).groupoid)
    fc = filtered_colim(d)
    assert c
    assert len(c.groupoid.components()) == len(fc.components())
