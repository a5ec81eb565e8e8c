from hypothesis import given, settings, strategies as st

from costacks.core import ConcreteGroupoid
from costacks.equivalence import (
    Verdict, are_equivalent, battery_invariant, equivalence_fingerprint, groups_isomorphic,
)
from costacks.presentation import PresentedGroupoid, as_presentation

from randgen import make_rng, random_pieces


def one_vertex(gens, *relators):
    return PresentedGroupoid.one_vertex(
        list(gens), [tuple((c.lower(), 1 if c.islower() else -1) for c in r) for r in relators])


def test_fingerprint_of_free_and_finite():
    fp = equivalence_fingerprint(one_vertex("a"))
    assert fp.component_count == 1 and fp.complete
    comp = fp.per_component[0]
    assert comp.abelian.free_rank == 1 and comp.order is None
    fp = equivalence_fingerprint(one_vertex("ab", "aa", "bbb", "abab"))
    assert fp.per_component[0].order == 6
    assert fp.per_component[0].abelian.torsion == (2,)


def test_fingerprint_ignores_size_of_components():
    big = ConcreteGroupoid.connected("abcd", ConcreteGroupoid.cyclic(3))
    assert equivalence_fingerprint(big) == equivalence_fingerprint(ConcreteGroupoid.cyclic(3))
    assert are_equivalent(big, ConcreteGroupoid.cyclic(3)) == Verdict.YES


def test_equivalent_presentations_of_same_group():
    a = one_vertex("ab", "aa", "bbb", "abab")
    b = as_presentation(ConcreteGroupoid.symmetric3())
    assert are_equivalent(a, b) == Verdict.YES


def test_not_equivalent_by_abelianization_or_components():
    assert are_equivalent(ConcreteGroupoid.cyclic(2), ConcreteGroupoid.cyclic(3)) == Verdict.NO
    assert are_equivalent(ConcreteGroupoid.discrete("ab"), ConcreteGroupoid.point()) == Verdict.NO
    assert are_equivalent(one_vertex("a"), one_vertex("ab")) == Verdict.NO


def test_same_abelianization_different_order():
    # S3 and Z/2 share the abelianization Z/2
    assert are_equivalent(ConcreteGroupoid.symmetric3(), ConcreteGroupoid.cyclic(2)) == Verdict.NO


def test_unknown_for_unmatched_presentations_of_same_group():
    # both present the trefoil group: aba = bab and x^2 = y^3
    a = one_vertex("ab", "abaBAB")
    b = one_vertex("xy", "xxYYY")
    assert are_equivalent(a, b) == Verdict.UNKNOWN


def test_groups_isomorphic_brute_force():
    z6 = ConcreteGroupoid.cyclic(6)
    z2z3 = ConcreteGroupoid.from_group([(a, b) for a in range(2) for b in range(3)],
                                       lambda x, y: ((x[0] + y[0]) % 2, (x[1] + y[1]) % 3))
    assert groups_isomorphic(z6, z2z3)
    assert not groups_isomorphic(z6, ConcreteGroupoid.symmetric3())


def test_battery_distinguishes_same_abelianization():
    s3, z2 = ConcreteGroupoid.symmetric3(), ConcreteGroupoid.cyclic(2)
    assert battery_invariant(s3) != battery_invariant(z2)


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10 ** 6))
def test_fingerprint_is_invariant_under_relabelling(seed):
    rng = make_rng(seed)
    pieces = random_pieces(rng, max_objects=4, max_morphisms=30)
    # the same pieces with every component shrunk to one object are equivalent
    shrunk = ConcreteGroupoid.disjoint_union(
        [(n, ConcreteGroupoid.connected(objs[:1], pieces.groupoid.vertex_group((n, objs[0]))))
         for n, (_, objs) in enumerate(pieces.pieces)])
    assert equivalence_fingerprint(pieces.groupoid) == equivalence_fingerprint(shrunk)
    assert are_equivalent(pieces.groupoid, shrunk) == Verdict.YES
    assert battery_invariant(pieces.groupoid) == battery_invariant(shrunk)
