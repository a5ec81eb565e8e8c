from hypothesis import given, settings, strategies as st

from costacks.core import (
    ConcreteFunctor, ConcreteGroupoid, NatIso, cocycle_holds, is_equivalence, is_full_and_faithful,
    is_simply_connected, validate,
)
from costacks.errors import ShapeError

import pytest

from randgen import conjugate, make_rng, natural_isos, random_functor, random_pieces


def z2_table(override=None):
    table = {("e", "e"): "e", ("e", "s"): "s", ("s", "e"): "s", ("s", "s"): "e"}
    table.update(override or {})
    return ConcreteGroupoid.from_table(["*"], {"e": ("*", "*"), "s": ("*", "*")}, {"*": "e"}, table)


def test_standard_groupoids_are_valid():
    for g in (ConcreteGroupoid.cyclic(1), ConcreteGroupoid.cyclic(4), ConcreteGroupoid.symmetric3(),
              ConcreteGroupoid.banal("abc"), ConcreteGroupoid.point(), ConcreteGroupoid.empty(),
              ConcreteGroupoid.discrete("xy"), z2_table()):
        assert validate(g).ok, (g, validate(g).violations)


def test_composition_is_diagrammatic():
    s3 = ConcreteGroupoid.symmetric3()
    p, q = (1, 0, 2), (0, 2, 1)
    # first p, then q: i -> p[i] -> q[p[i]]
    assert s3.compose(p, q) == tuple(q[p[i]] for i in range(3))
    assert s3.compose(p, q) != s3.compose(q, p)


def test_broken_table_reports_associativity_and_inverse():
    report = validate(z2_table({("s", "s"): "s"}))
    assert not report.ok
    assert any("inverse" in v or "associativity" in v for v in report.violations)


def test_missing_composite_is_reported():
    g = z2_table()
    del g._compose[("s", "s")]
    assert any("undefined" in v for v in validate(g).violations)


def test_bad_endpoint_is_reported():
    g = ConcreteGroupoid(["a"], {"f": ("a", "b"), "1": ("a", "a")}, {"a": "1"}, {}, {})
    assert any("endpoint" in v for v in validate(g).violations)


def test_violation_limit_stops_early():
    g = z2_table({("s", "s"): "s", ("e", "s"): "e"})
    assert len(validate(g, limit=1).violations) == 1


def test_connected_and_disjoint_union():
    g = ConcreteGroupoid.connected("ab", ConcreteGroupoid.cyclic(3))
    assert len(g.objects) == 2 and len(g.morphisms) == 12
    assert validate(g).ok
    u = ConcreteGroupoid.disjoint_union([("L", g), ("R", ConcreteGroupoid.point())])
    assert validate(u).ok
    assert len(u.components()) == 2
    assert len(u.vertex_group(("L", "a")).morphisms) == 3


def test_simply_connected():
    assert is_simply_connected(ConcreteGroupoid.banal("abcd"))
    assert not is_simply_connected(ConcreteGroupoid.cyclic(2))
    assert not is_simply_connected(ConcreteGroupoid.discrete("ab"))


def test_functor_check_catches_non_functor():
    z2, z3 = ConcreteGroupoid.cyclic(2), ConcreteGroupoid.cyclic(3)
    bad = ConcreteFunctor(z2, z3, {"*": "*"}, {0: 0, 1: 1})
    assert bad.check()
    good = ConcreteFunctor(z2, z3, {"*": "*"}, {0: 0, 1: 0})
    assert not good.check()


def test_natiso_requires_parallel_functors():
    z2 = ConcreteGroupoid.cyclic(2)
    ident = ConcreteFunctor.identity(z2)
    other = ConcreteFunctor(z2, ConcreteGroupoid.cyclic(3), {"*": "*"}, {0: 0, 1: 0})
    with pytest.raises(ShapeError):
        NatIso(ident, other, {"*": 0})


def test_inclusion_of_banal_is_equivalence():
    two, one = ConcreteGroupoid.banal("ab"), ConcreteGroupoid.point()
    inc = ConcreteFunctor(one, two, {"*": "a"}, {("*", "*"): ("a", "a")})
    assert is_full_and_faithful(inc) and is_equivalence(inc)
    # missing a component
    d = ConcreteGroupoid.discrete("ab")
    inc2 = ConcreteFunctor(one, d, {"*": "a"}, {("*", "*"): ("a", "a")})
    assert is_full_and_faithful(inc2) and not is_equivalence(inc2)


def test_trivial_map_is_not_faithful():
    z2 = ConcreteGroupoid.cyclic(2)
    triv = ConcreteFunctor(z2, z2, {"*": "*"}, {0: 0, 1: 0})
    assert not is_full_and_faithful(triv)


def test_cocycle_check():
    z2 = ConcreteGroupoid.cyclic(2)
    f = ConcreteFunctor.identity(z2)
    lam = NatIso(f, f, {"*": 1})
    ident = NatIso.identity(f)
    assert cocycle_holds(ident, lam, lam, f)      # 1 + 1 = 0 in Z/2
    assert not cocycle_holds(lam, lam, lam, f)


seeds = st.integers(0, 10 ** 6)


@settings(max_examples=60, deadline=None)
@given(seeds)
def test_random_pieces_satisfy_axioms(seed):
    g = random_pieces(make_rng(seed)).groupoid
    assert validate(g).ok


@settings(max_examples=60, deadline=None)
@given(seeds)
def test_random_functors_are_functors_and_compose(seed):
    rng = make_rng(seed)
    a, b, c = (random_pieces(rng, prefix=p) for p in "abc")
    f, g = random_functor(rng, a, b), random_functor(rng, b, c)
    assert not f.check() and not g.check()
    fg = f.then(g)
    assert not fg.check()
    for m in a.groupoid.morphisms:
        assert fg.mor(m) == g.mor(f.mor(m))


@settings(max_examples=40, deadline=None)
@given(seeds)
def test_conjugate_functor_is_naturally_isomorphic(seed):
    rng = make_rng(seed)
    a, b = random_pieces(rng, max_objects=3, prefix="a"), random_pieces(rng, max_objects=3, prefix="b")
    f = random_functor(rng, a, b)
    g, theta = conjugate(rng, f)
    assert not g.check()
    lam = NatIso(f, g, theta)
    assert not lam.check()
    assert lam.then(lam.inverse()).is_identity()
    assert natural_isos(f, g)
