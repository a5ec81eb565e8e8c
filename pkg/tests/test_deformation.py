import pytest
from hypothesis import given, settings, strategies as st

from costacks.core import ConcreteFunctor, ConcreteGroupoid, NatIso
from costacks.deformation import deform, postcondition_failures
from costacks.errors import GroupoidError, ShapeError

from randgen import make_rng, random_square

seeds = st.integers(0, 10 ** 6)


def twisted_square():
    """Point -> Z/2 (both legs), j1 = j2 = id, lam the nontrivial element."""
    pt, z2 = ConcreteGroupoid.point(), ConcreteGroupoid.cyclic(2)
    inc = ConcreteFunctor(pt, z2, {"*": "*"}, {("*", "*"): 0})
    ident = ConcreteFunctor.identity(z2)
    lam = NatIso(inc.then(ident), inc.then(ident), {"*": 1})
    return inc, inc, ident, ident, lam


def test_twisted_square_keeps_the_functor_abelian_conjugation():
    i1, i2, j1, j2, lam = twisted_square()
    r = deform(i1, i2, j1, j2, lam)
    assert not postcondition_failures(i1, i2, j1, j2, lam, r)
    # conjugating an abelian group by 1 changes nothing
    assert r.functor.same_as(j1)
    assert r.kappa["*"] == 1
    assert set(r.cases.values()) == {2, 3}


def test_outside_objects_keep_their_image():
    # A = point into the banal groupoid on {0, 1}; object 1 is outside the image of i1
    pt, two = ConcreteGroupoid.point(), ConcreteGroupoid.banal([0, 1])
    z2 = ConcreteGroupoid.cyclic(2)
    i1 = ConcreteFunctor(pt, two, {"*": 0}, {("*", "*"): (0, 0)})
    j1 = ConcreteFunctor(two, z2, {0: "*", 1: "*"}, {f: 0 for f in two.morphisms})
    lam = NatIso(i1.then(j1), i1.then(j1), {"*": 1})
    r = deform(i1, i1, j1, j1, lam)
    assert not postcondition_failures(i1, i1, j1, j1, lam, r)
    assert r.cases[(1, 1)] == 5 and r.cases[(0, 1)] == 1 and r.cases[(1, 0)] == 4
    assert r.kappa[1] == 0


def test_requires_injective_i1():
    two, pt = ConcreteGroupoid.banal([0, 1]), ConcreteGroupoid.point()
    collapse = ConcreteFunctor(two, pt, {0: "*", 1: "*"}, {f: ("*", "*") for f in two.morphisms})
    ident = ConcreteFunctor.identity(pt)
    lam = NatIso.identity(collapse)
    with pytest.raises(GroupoidError):
        deform(collapse, collapse, ident, ident, lam)


def test_rejects_mismatched_square():
    i1, i2, j1, j2, lam = twisted_square()
    other = ConcreteFunctor.identity(ConcreteGroupoid.cyclic(2))
    with pytest.raises(ShapeError):
        deform(i1, i2, other, j2, lam)


@settings(max_examples=60, deadline=None)
@given(seeds)
def test_random_squares_meet_postconditions(seed):
    i1, i2, j1, j2, lam = random_square(make_rng(seed))
    r = deform(i1, i2, j1, j2, lam)
    assert postcondition_failures(i1, i2, j1, j2, lam, r) == []
    assert set(r.cases) == set(i1.codomain.morphisms)


@settings(max_examples=30, deadline=None)
@given(seeds)
def test_identity_lambda_gives_identity_kappa(seed):
    i1, i2, j1, j2, lam = random_square(make_rng(seed), identity_lambda=True)
    r = deform(i1, i2, j1, j2, lam)
    assert not postcondition_failures(i1, i2, j1, j2, lam, r)
    D = j1.codomain
    assert all(r.kappa[b] == D.identity(j1.obj(b)) for b in i1.codomain.objects)
    assert r.functor.same_as(j1)
