"""Strictifying a square that commutes up to a natural isomorphism.

Given ``i1: A -> B``, ``i2: A -> C``, ``j1: B -> D``, ``j2: C -> D`` and
``lam: i1.then(j1) => i2.then(j2)`` with ``i1`` injective on objects,
``deform`` replaces ``j1`` by ``j1'`` with ``i1.then(j1') == i2.then(j2)``
on the nose, together with ``kappa: j1 => j1'`` whose whiskering along
``i1`` is ``lam``.
"""

from dataclasses import dataclass

from .core import ConcreteFunctor, NatIso
from .errors import GroupoidError, ShapeError


@dataclass
class Deformation:
    functor: ConcreteFunctor      # j1'
    kappa: NatIso                 # j1 => j1'
    cases: dict                   # morphism of B -> case number 1..5


def deform(i1, i2, j1, j2, lam):
    if not i1.is_injective_on_objects():
        raise GroupoidError("i1 must be injective on objects")
    A, B, D = i1.domain, i1.codomain, j1.codomain
    if i2.domain is not A or j1.domain is not B or j2.domain is not i2.codomain or j2.codomain is not D:
        raise ShapeError("functors do not form a square")
    if lam.domain is not A or lam.codomain is not D:
        raise ShapeError("lam is not a transformation between the square's composites")

    pre = {i1.obj(a): a for a in A.objects}
    pre_mor = {}
    for alpha in A.morphisms:
        pre_mor.setdefault(i1.mor(alpha), []).append(alpha)

    def j2i2(x):
        return j2.mor(i2.mor(x))

    obj = {}
    for b in B.objects:
        obj[b] = j2.obj(i2.obj(pre[b])) if b in pre else j1.obj(b)

    mor, cases = {}, {}
    for beta in B.morphisms:
        b1, b2 = B.ends(beta)
        img = j1.mor(beta)
        if b1 in pre and b2 in pre:
            a1, a2 = pre[b1], pre[b2]
            via_lam = D.then(D.inverse(lam[a1]), img, lam[a2])
            if beta in pre_mor:
                alphas = pre_mor[beta]
                value = j2i2(alphas[0])
                # independence of the chosen preimage, and agreement with the
                # conjugation formula, both follow from naturality of lam
                assert all(j2i2(al) == value for al in alphas), "preimage choice matters"
                assert value == via_lam, "lam is not natural"
                mor[beta], cases[beta] = value, 3
            else:
                mor[beta], cases[beta] = via_lam, 2
        elif b1 in pre:
            mor[beta], cases[beta] = D.compose(D.inverse(lam[pre[b1]]), img), 1
        elif b2 in pre:
            mor[beta], cases[beta] = D.compose(img, lam[pre[b2]]), 4
        else:
            mor[beta], cases[beta] = img, 5

    j1p = ConcreteFunctor(B, D, obj, mor, name="j1'")
    kappa = NatIso(j1, j1p, {b: lam[pre[b]] if b in pre else D.identity(j1.obj(b)) for b in B.objects})
    return Deformation(j1p, kappa, cases)


def postcondition_failures(i1, i2, j1, j2, lam, result):
    """Every failed postcondition of ``deform``, checked exhaustively."""
    bad = [f"j1' {m}" for m in result.functor.check()]
    bad += [f"kappa {m}" for m in result.kappa.check()]
    if not i1.then(result.functor).same_as(i2.then(j2)):
        bad.append("i1 then j1' differs from i2 then j2")
    whiskered = result.kappa.whisker(i1)
    if not all(whiskered[a] == lam[a] for a in i1.domain.objects):
        bad.append("kappa whiskered along i1 differs from lam")
    return bad
