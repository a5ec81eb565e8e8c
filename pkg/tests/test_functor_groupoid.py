import pytest
from hypothesis import given, settings, strategies as st

from costacks.core import ConcreteGroupoid, validate
from costacks.errors import ResourceLimitError
from costacks.functor_groupoid import (
    LazyFunctorGroupoid, enumerate_functors, functor_groupoid, inclusion_functor, restriction,
)
from costacks.presentation import PresentedGroupoid, Word

from oracles import brute_functors, candidate_count, functor_groupoid_counts
from randgen import make_rng, random_pieces, random_presentation


def circle(n):
    return PresentedGroupoid(range(n), {f"e{k}": (k, (k + 1) % n) for k in range(n)})


def test_circle_into_z3():
    # hom(pi1 S^1, Z/3): three objects up to the choice of path labels, each with Aut = Z/3
    g = functor_groupoid(circle(1), ConcreteGroupoid.cyclic(3))
    assert len(g.objects) == 3
    assert len(g.morphisms) == 9
    assert len(g.components()) == 3
    assert validate(g).ok


def test_relation_cuts_functors():
    p = PresentedGroupoid.one_vertex(["a"], [(("a", 1), ("a", 1))])
    s3 = ConcreteGroupoid.symmetric3()
    # elements of S3 squaring to 1: identity and three transpositions
    assert len(enumerate_functors(p, s3)) == 4


def test_empty_source_gives_point():
    g = functor_groupoid(PresentedGroupoid([], {}), ConcreteGroupoid.cyclic(2))
    assert len(g.objects) == 1 and len(g.morphisms) == 1


def test_enumeration_limit():
    with pytest.raises(ResourceLimitError):
        enumerate_functors(circle(3), ConcreteGroupoid.symmetric3(), limit=10)


def test_cap_on_materialization():
    with pytest.raises(ResourceLimitError):
        functor_groupoid(circle(2), ConcreteGroupoid.symmetric3(), cap=50)


def test_restriction_along_inclusion_is_functorial():
    big = PresentedGroupoid(range(3), {"a": (0, 1), "b": (1, 2)})
    small = PresentedGroupoid([0, 1], {"a": (0, 1)})
    z2 = ConcreteGroupoid.cyclic(2)
    hb, hs = functor_groupoid(big, z2), functor_groupoid(small, z2)
    r = restriction(hb, inclusion_functor(small, big), hs)
    assert not r.check()
    assert len({r.obj(F) for F in hb.objects}) == len(hs.objects)


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10 ** 6))
def test_lazy_agrees_with_eager(seed):
    rng = make_rng(seed)
    p = random_presentation(rng, max_vertices=2, max_edges=2)
    g = random_pieces(rng, max_objects=3, max_morphisms=20).groupoid
    if candidate_count(p, g) > 5000:
        return
    eager = functor_groupoid(p, g)
    lazy = LazyFunctorGroupoid(p, g)
    assert set(eager.objects) == set(lazy.objects)
    assert sorted(map(len, eager.components())) == sorted(map(len, lazy.components()))
    for F in lazy.objects:
        assert sorted(eager.out(F)) == sorted(lazy.out(F))
        assert lazy.out_count(F) == len(eager.out(F))
        assert len(lazy.aut(F)) == len(eager.hom(F, F))
        for f in lazy.out(F):
            assert lazy.tgt(f) == eager.tgt(f)


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10 ** 6))
def test_functor_counts_match_brute_force(seed):
    rng = make_rng(seed)
    p = random_presentation(rng)
    g = random_pieces(rng, max_objects=3, max_morphisms=20).groupoid
    if candidate_count(p, g) > 10 ** 4:
        return
    h = functor_groupoid(p, g)
    assert (len(h.objects), len(h.morphisms)) == functor_groupoid_counts(p, g)
    if len(h.morphisms) <= 100:
        # the associativity sweep is cubic in the morphism count
        assert validate(h).ok


def test_brute_force_oracle_sees_relation():
    z2 = ConcreteGroupoid.cyclic(2)
    p = PresentedGroupoid([0], {"a": (0, 0)}, [(Word(0, 0, (("a", 1),)), Word.empty(0))])
    assert len(brute_functors(p, z2)) == 1
