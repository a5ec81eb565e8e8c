"""Equivalence-invariant fingerprints and the three-valued equivalence test.

Two groupoids are equivalent exactly when their components can be
matched so that matched vertex groups are isomorphic.  Vertex groups of
presented groupoids are only partly knowable, so ``are_equivalent``
answers Yes or No only with a proof in hand and Unknown otherwise.
"""

from collections import deque
from dataclasses import dataclass
from enum import Enum
from itertools import product

from .core import ConcreteGroupoid
from .functor_groupoid import functor_groupoid
from .presentation import (
    DEFAULT_BUDGET, AbelianInvariant, PresentedGroupoid, VertexGroupPresentation,
    abelian_invariants, collapse, finite_group,
)
from .tietze import free_factors, presentations_isomorphic, simplify


class Verdict(str, Enum):
    YES = "Yes"
    NO = "No"
    UNKNOWN = "Unknown"

    def __str__(self):
        return self.value


@dataclass(frozen=True)
class ComponentInvariant:
    abelian: AbelianInvariant
    order: int | None = None   # vertex-group order when finite and known

    def key(self):
        return (self.abelian.free_rank, self.abelian.torsion, -1 if self.order is None else self.order)


@dataclass(frozen=True)
class EquivalenceInvariant:
    """Component count plus one vertex-group summary per component (sorted)."""

    component_count: int
    per_component: tuple
    complete: bool = True   # False: some finite order could not be determined

    def as_dict(self):
        return {
            "component_count": self.component_count,
            "components": [
                {"free_rank": c.abelian.free_rank, "torsion": list(c.abelian.torsion), "order": c.order}
                for c in self.per_component],
            "complete": self.complete,
        }


@dataclass
class VertexGroup:
    """What is known about the vertex group of one component."""

    basepoint: object
    presentation: VertexGroupPresentation
    abelian: AbelianInvariant
    finite: ConcreteGroupoid | None = None

    @property
    def order(self):
        return None if self.finite is None else len(self.finite.morphisms)

    @property
    def infinite(self):
        return self.abelian.free_rank > 0

    @property
    def decided(self):
        return self.finite is not None or self.infinite

    def invariant(self):
        return ComponentInvariant(self.abelian, self.order)


# finite groups given as one-object concrete groupoids

def group_generators(group):
    """Greedy generating set, in declaration order."""
    unit = group.identity(group.objects[0])
    gens, reached = [], {unit}
    for x in group.morphisms:
        if x in reached:
            continue
        gens.append(x)
        reached = _closure(group, gens)
        if len(reached) == len(group.morphisms):
            break
    return gens


def _closure(group, gens):
    unit = group.identity(group.objects[0])
    seen = {unit}
    queue = deque([unit])
    while queue:
        x = queue.popleft()
        for s in gens:
            y = group.compose(x, s)
            if y not in seen:
                seen.add(y)
                queue.append(y)
    return seen


def _words(group, gens):
    unit = group.identity(group.objects[0])
    words = {unit: ()}
    queue = deque([unit])
    while queue:
        x = queue.popleft()
        for k, s in enumerate(gens):
            y = group.compose(x, s)
            if y not in words:
                words[y] = words[x] + (k,)
                queue.append(y)
    return words


def group_presentation(group):
    """Presentation ``<S | w(x) s w(xs)^-1>`` of a finite group from its table."""
    gens = group_generators(group)
    words = _words(group, gens)
    names = tuple(f"s{k}" for k in range(len(gens)))
    rels = []
    for x, wx in words.items():
        for k, s in enumerate(gens):
            wy = words[group.compose(x, s)]
            r = [(names[i], 1) for i in wx] + [(names[k], 1)] + [(names[i], -1) for i in reversed(wy)]
            rels.append(tuple(r))
    return VertexGroupPresentation(names, tuple(rels))


def element_order(group, x):
    unit = group.identity(group.objects[0])
    n, y = 1, x
    while y != unit:
        y = group.compose(y, x)
        n += 1
    return n


def groups_isomorphic(g, h):
    """Exhaustive isomorphism test between finite groups (one-object groupoids)."""
    if len(g.morphisms) != len(h.morphisms):
        return False
    gens = group_generators(g)
    words = _words(g, gens)
    h_unit = h.identity(h.objects[0])
    h_orders = {}
    for y in h.morphisms:
        h_orders.setdefault(element_order(h, y), []).append(y)
    options = [h_orders.get(element_order(g, s), []) for s in gens]
    for images in product(*options):
        phi = {}
        for x, w in words.items():
            y = h_unit
            for k in w:
                y = h.compose(y, images[k])
            phi[x] = y
        if len(set(phi.values())) != len(phi):
            continue
        if all(phi[g.compose(a, b)] == h.compose(phi[a], phi[b]) for a in g.morphisms for b in g.morphisms):
            return True
    return False


def _group_from_table(table):
    n = table.order
    return ConcreteGroupoid.from_group(range(n), lambda a, b: table.mul[a][b])


def vertex_groups(g, budget=DEFAULT_BUDGET):
    """One VertexGroup per component, ordered by least object."""
    out = []
    if isinstance(g, ConcreteGroupoid):
        for comp in g.components():
            grp = g.vertex_group(comp[0])
            pres = group_presentation(grp)
            out.append(VertexGroup(comp[0], pres, abelian_invariants(pres), grp))
        return out
    for comp in g.components():
        pres = collapse(g.restrict(comp), comp[0]).presentation
        ab = abelian_invariants(pres)
        grp = None
        if ab.free_rank == 0:
            table = finite_group(pres, budget)
            if table is not None:
                grp = _group_from_table(table)
        out.append(VertexGroup(comp[0], pres, ab, grp))
    return out


def equivalence_fingerprint(g, budget=DEFAULT_BUDGET):
    """Fingerprint that is invariant under equivalence of groupoids."""
    groups = vertex_groups(g, budget)
    per = tuple(sorted((vg.invariant() for vg in groups), key=ComponentInvariant.key))
    return EquivalenceInvariant(len(groups), per, all(vg.decided for vg in groups))


def _iso(a, b, budget=DEFAULT_BUDGET):
    """True / False / None (undecided) for two vertex groups."""
    if a.abelian != b.abelian:
        return False
    if a.finite is not None and b.finite is not None:
        return groups_isomorphic(a.finite, b.finite)
    if (a.finite is not None and b.infinite) or (b.finite is not None and a.infinite):
        return False
    sa, _ = simplify(a.presentation)
    sb, _ = simplify(b.presentation)
    if sa == sb:
        return True
    if presentations_isomorphic(sa, sb):
        return True
    return _factors_iso(sa, sb, budget)


@dataclass
class _Factor:
    presentation: VertexGroupPresentation
    abelian: AbelianInvariant
    finite: ConcreteGroupoid | None


def _factors(v, budget):
    out = []
    for f in free_factors(v):
        ab = abelian_invariants(f)
        grp = None
        if ab.free_rank == 0:
            table = finite_group(f, budget)
            if table is not None:
                if table.order == 1:
                    continue
                grp = _group_from_table(table)
        out.append(_Factor(f, ab, grp))
    return out


def _factor_iso(x, y):
    if x.abelian != y.abelian:
        return False
    if x.finite is not None and y.finite is not None:
        return groups_isomorphic(x.finite, y.finite)
    if x.presentation == y.presentation:
        return True
    return presentations_isomorphic(x.presentation, y.presentation)


def _factors_iso(a, b, budget):
    """True when both split into free factors that match by proven isomorphisms, else None."""
    fa, fb = _factors(a, budget), _factors(b, budget)
    if len(fa) != len(fb) or len(fa) < 2:
        return None
    rel = [[_factor_iso(x, y) for y in fb] for x in fa]
    return True if _has_perfect_matching(len(fa), lambda i, j: rel[i][j] is True) else None


def _has_perfect_matching(n, allowed):
    match = {}

    def augment(i, seen):
        for j in range(n):
            if allowed(i, j) and j not in seen:
                seen.add(j)
                if j not in match or augment(match[j], seen):
                    match[j] = i
                    return True
        return False

    return all(augment(i, set()) for i in range(n))


def are_equivalent(a, b, budget=DEFAULT_BUDGET):
    """Yes / No / Unknown; Yes and No are always correct."""
    ga, gb = vertex_groups(a, budget), vertex_groups(b, budget)
    if len(ga) != len(gb):
        return Verdict.NO
    if sorted(x.invariant().key()[:2] for x in ga) != sorted(x.invariant().key()[:2] for x in gb):
        return Verdict.NO
    n = len(ga)
    rel = [[_iso(ga[i], gb[j], budget) for j in range(n)] for i in range(n)]
    if _has_perfect_matching(n, lambda i, j: rel[i][j] is True):
        return Verdict.YES
    if not _has_perfect_matching(n, lambda i, j: rel[i][j] is not False):
        return Verdict.NO
    return Verdict.UNKNOWN


BATTERY = {
    "Z/2": ConcreteGroupoid.cyclic(2),
    "Z/3": ConcreteGroupoid.cyclic(3),
    "S3": ConcreteGroupoid.symmetric3(),
    "2": ConcreteGroupoid.banal(["0", "1"], name="2"),
}


def battery_invariant(g, battery=None, budget=DEFAULT_BUDGET):
    """Functor-count refinement of the fingerprint.

    For each battery groupoid ``B``, and each component of ``g``, the
    sorted automorphism-group orders over the components of
    ``hom(vertex group, B)``.  Computed on simplified vertex-group
    presentations, which present isomorphic groups, so the result is
    invariant under equivalence.
    """
    battery = BATTERY if battery is None else battery
    groups = vertex_groups(g, budget)
    out = {}
    for name, target in battery.items():
        per = []
        for vg in groups:
            small, _ = simplify(vg.presentation)
            hom = functor_groupoid(PresentedGroupoid.one_vertex(small.generators, small.relators), target)
            per.append(tuple(sorted(len(hom.hom(c[0], c[0])) for c in hom.components())))
        out[name] = tuple(sorted(per))
    return out
