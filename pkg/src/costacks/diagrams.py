"""Strict diagrams of groupoids over finite posets, and their colimits.

A covariant diagram has transitions ``psi[i, j]: G_i -> G_j`` for
``i < j``; a contravariant one has ``psi[i, j]: F_j -> F_i``.  Limits
(see ``limits``) take contravariant diagrams, colimits covariant ones.
Reflexive pairs always carry the identity and contribute no lambda data.
"""

from dataclasses import dataclass, field

from ._util import UnionFind
from .core import ConcreteFunctor, ConcreteGroupoid
from .equivalence import Verdict, are_equivalent
from .errors import NotFilteredError, ShapeError
from .poset import FinitePoset
from .presentation import (
    DEFAULT_BUDGET, PresFunctor, PresentedGroupoid, Word, as_presentation, functor_as_presented,
)

COVARIANT = "covariant"
CONTRAVARIANT = "contravariant"


def _identity(g):
    if isinstance(g, ConcreteGroupoid):
        return ConcreteFunctor.identity(g)
    return PresFunctor.identity(g)


class GroupoidDiagram:
    """A strict functor from a finite poset to groupoids.

    ``transitions`` must cover at least the covering pairs; missing strict
    pairs are filled in by composing along a chain through the poset.
    """

    def __init__(self, poset, values, transitions, variance=COVARIANT, name=None):
        if variance not in (COVARIANT, CONTRAVARIANT):
            raise ValueError(f"unknown variance {variance!r}")
        self.poset = poset
        self.values = dict(values)
        self._given = dict(transitions)
        self._psi = dict(transitions)
        self.variance = variance
        self.name = name

    def __repr__(self):
        return f"<GroupoidDiagram {self.variance} over {len(self.poset.elements)} elements>"

    @property
    def concrete(self):
        # duck-typed groupoids (lazy functor groupoids) count as concrete
        return not any(isinstance(g, PresentedGroupoid) for g in self.values.values())

    def value(self, i):
        return self.values[i]

    def psi(self, i, j):
        """Transition for ``i <= j`` (identity when ``i == j``)."""
        if i == j:
            return _identity(self.values[i])
        f = self._psi.get((i, j))
        if f is not None:
            return f
        if not self.poset.lt(i, j):
            raise ShapeError(f"{i!r} is not below {j!r}")
        mid = next((k for k in self.poset.elements
                    if self.poset.lt(i, k) and self.poset.lt(k, j) and (i, k) in self._given), None)
        if mid is None:
            raise ShapeError(f"no transition given for ({i!r}, {j!r})")
        a, b = self.psi(i, mid), self.psi(mid, j)
        f = a.then(b) if self.variance == COVARIANT else b.then(a)
        self._psi[(i, j)] = f
        return f

    def source_of(self, i, j):
        """Domain value of the transition for ``i < j``."""
        return self.values[i] if self.variance == COVARIANT else self.values[j]

    def target_of(self, i, j):
        return self.values[j] if self.variance == COVARIANT else self.values[i]

    def check(self):
        """Poset axioms, transition shapes and strict functoriality on chains."""
        bad = list(self.poset.check())
        for i in self.poset.elements:
            if i not in self.values:
                bad.append(f"no value at {i!r}")
        if bad:
            return bad
        for i, j in self.poset.strict_pairs():
            try:
                f = self.psi(i, j)
            except ShapeError as exc:
                bad.append(str(exc))
                continue
            if f.domain is not self.source_of(i, j) or f.codomain is not self.target_of(i, j):
                bad.append(f"transition ({i!r}, {j!r}) has the wrong domain or codomain")
                continue
            bad += [f"transition ({i!r}, {j!r}): {m}" for m in f.check()]
        if bad:
            return bad
        for i, j, k in self.poset.chains():
            a, b, c = self.psi(i, j), self.psi(j, k), self.psi(i, k)
            comp = a.then(b) if self.variance == COVARIANT else b.then(a)
            if not comp.same_as(c):
                bad.append(f"not strict on the chain {i!r} < {j!r} < {k!r}")
        return bad

    def presented(self):
        """Same diagram with every concrete value replaced by its table presentation."""
        if all(isinstance(g, PresentedGroupoid) for g in self.values.values()):
            return self
        pres = {i: as_presentation(g) if isinstance(g, ConcreteGroupoid) else g
                for i, g in self.values.items()}
        trans = {}
        for i, j in self.poset.strict_pairs():
            f = self.psi(i, j)
            if isinstance(f, ConcreteFunctor):
                f = functor_as_presented(f, pres[i] if self.variance == COVARIANT else pres[j],
                                         pres[j] if self.variance == COVARIANT else pres[i])
            trans[(i, j)] = f
        return GroupoidDiagram(self.poset, pres, trans, self.variance, self.name)

    def map_values(self, func, variance=None):
        """Apply ``func`` to every value and transition; returns a new diagram."""
        vals = {i: func(g) for i, g in self.values.items()}
        trans = {p: func(self.psi(*p)) for p in self.poset.strict_pairs()}
        return GroupoidDiagram(self.poset, vals, trans, variance or self.variance)


def span(apex, left, right, f, g, names=("W", "U", "V")):
    """Covariant span ``left <- apex -> right`` as a diagram over ``W < U, W < V``."""
    w, u, v = names
    poset = FinitePoset.from_covers([w, u, v], [(w, u), (w, v)])
    return GroupoidDiagram(poset, {w: apex, u: left, v: right}, {(w, u): f, (w, v): g}, COVARIANT)


def chain(values, transitions):
    """Covariant chain ``0 < 1 < ... < n-1`` with ``transitions[k]: G_k -> G_{k+1}``."""
    n = len(values)
    poset = FinitePoset.from_covers(range(n), [(k, k + 1) for k in range(n - 1)])
    return GroupoidDiagram(poset, dict(enumerate(values)),
                           {(k, k + 1): t for k, t in enumerate(transitions)}, COVARIANT)


# colimits of presented diagrams

@dataclass
class ColimResult:
    groupoid: PresentedGroupoid
    injections: dict          # element -> PresFunctor
    classes: dict = field(default_factory=dict)   # (i, x) -> colimit object


@dataclass
class TcResult:
    groupoid: PresentedGroupoid
    injections: dict          # element -> PresFunctor
    lam: dict                 # (i, j, x) -> Word from alpha_j(psi_ij x) to alpha_i(x)
    counts: dict = field(default_factory=dict)


def _require_covariant(d):
    if d.variance != COVARIANT:
        raise ShapeError("colimits need a covariant diagram")
    return d.presented()


def _transport(i, w, vertex):
    return Word(vertex(i, w.source), vertex(i, w.target), tuple(((i, e), s) for e, s in w.letters))


def lambda_edge(i, j, x):
    return ("lam", i, j, x)


def is_lambda(e):
    return isinstance(e, tuple) and len(e) == 4 and e[0] == "lam"


def diagram_colim(d):
    """Strict colimit as a presentation.

    Objects are classes of ``(i, x)`` under ``(i, x) ~ (j, psi_ij x)``,
    named by their least member.  Generators are ``(i, g)``.
    """
    d = _require_covariant(d)
    els = d.poset.elements
    uf = UnionFind((i, x) for i in els for x in d.values[i].vertices)
    for i, j in d.poset.strict_pairs():
        psi = d.psi(i, j)
        for x in d.values[i].vertices:
            uf.union((i, x), (j, psi.vertex(x)))

    def vertex(i, x):
        return uf.find((i, x))

    vertices = [c[0] for c in uf.classes()]
    edges, rels = {}, []
    for i in els:
        p = d.values[i]
        for e, (a, b) in p.edges.items():
            edges[(i, e)] = (vertex(i, a), vertex(i, b))
        for l, r in p.relations:
            rels.append((_transport(i, l, vertex), _transport(i, r, vertex)))
    for i, j in d.poset.strict_pairs():
        psi = d.psi(i, j)
        for e in d.values[i].edges:
            rels.append((_transport(j, psi.edge_map[e], vertex),
                         _transport(i, d.values[i].letter(e), vertex)))
    g = PresentedGroupoid(vertices, edges, rels, name="colim")
    inj = {i: PresFunctor(d.values[i], g,
                          {x: vertex(i, x) for x in d.values[i].vertices},
                          {e: g.letter((i, e)) for e in d.values[i].edges}, name=f"alpha_{i}")
           for i in els}
    classes = {(i, x): vertex(i, x) for i in els for x in d.values[i].vertices}
    return ColimResult(g, inj, classes)


def diagram_tc(d):
    """2-colimit as a presentation.

    Objects are all ``(i, x)``.  Besides the generators ``(i, g)`` there is
    one generator ``("lam", i, j, x)`` from ``(j, psi_ij x)`` to ``(i, x)``
    per strict pair and object of ``G_i``.  Relations: those of the
    values, a naturality square per strict pair and generator, and a
    cocycle relation per strict chain ``i < j < k`` and object of ``G_i``.
    """
    d = _require_covariant(d)
    els = d.poset.elements

    def vertex(i, x):
        return (i, x)

    vertices = [(i, x) for i in els for x in d.values[i].vertices]
    edges, rels = {}, []
    for i in els:
        p = d.values[i]
        for e, (a, b) in p.edges.items():
            edges[(i, e)] = ((i, a), (i, b))
        for l, r in p.relations:
            rels.append((_transport(i, l, vertex), _transport(i, r, vertex)))
    n_values = len(rels)
    lam = {}
    for i, j in d.poset.strict_pairs():
        psi = d.psi(i, j)
        for x in d.values[i].vertices:
            e = lambda_edge(i, j, x)
            edges[e] = ((j, psi.vertex(x)), (i, x))
            lam[(i, j, x)] = Word((j, psi.vertex(x)), (i, x), ((e, 1),))
    n_nat = 0
    for i, j in d.poset.strict_pairs():
        psi = d.psi(i, j)
        p = d.values[i]
        for e, (a, b) in p.edges.items():
            # psi(g) then lam(b)  ==  lam(a) then g
            lhs = _transport(j, psi.edge_map[e], vertex) + lam[(i, j, b)]
            rhs = lam[(i, j, a)] + _transport(i, p.letter(e), vertex)
            rels.append((lhs, rhs))
            n_nat += 1
    n_cocycle = 0
    for i, j, k in d.poset.chains():
        psi = d.psi(i, j)
        for x in d.values[i].vertices:
            rels.append((lam[(i, k, x)], lam[(j, k, psi.vertex(x))] + lam[(i, j, x)]))
            n_cocycle += 1
    g = PresentedGroupoid(vertices, edges, rels, name="tc")
    inj = {i: PresFunctor(d.values[i], g,
                          {x: (i, x) for x in d.values[i].vertices},
                          {e: g.letter((i, e)) for e in d.values[i].edges}, name=f"alpha_{i}")
           for i in els}
    counts = {"value_relations": n_values, "naturality": n_nat, "cocycle": n_cocycle,
              "lambda_generators": len(lam)}
    return TcResult(g, inj, lam, counts)


@dataclass
class DeltaResult:
    functor: PresFunctor
    verdict: Verdict
    tc: TcResult
    colim: ColimResult


def comparison_functor(tc, colim):
    """``delta: tc -> colim``: objects to classes, generators to themselves, lambdas to identities."""
    g, c = tc.groupoid, colim.groupoid
    vmap = {v: colim.classes[v] for v in g.vertices}
    emap = {}
    for e in g.edges:
        if is_lambda(e):
            emap[e] = Word.empty(vmap[g.edges[e][0]])
        else:
            emap[e] = c.letter(e)
    return PresFunctor(g, c, vmap, emap, name="delta")


def delta_comparison(d, budget=DEFAULT_BUDGET):
    tc, colim = diagram_tc(d), diagram_colim(d)
    return DeltaResult(comparison_functor(tc, colim), are_equivalent(tc.groupoid, colim.groupoid, budget),
                       tc, colim)


# filtered colimits of concrete diagrams

class FilteredColimit(ConcreteGroupoid):
    """Concrete filtered colimit; remembers where each ``(i, x)`` and ``(i, f)`` went."""

    def __init__(self, objects, morphisms, identity, compose, inverse, object_class, morphism_class):
        super().__init__(objects, morphisms, identity, compose, inverse, name="filtered_colim")
        self.object_class = object_class
        self.morphism_class = morphism_class


def filtered_colim(d):
    """Colimit of a covariant concrete diagram over a filtered poset.

    Objects are classes of ``(i, x)`` under ``(i, x) ~ (j, psi_ij x)``,
    morphisms classes of ``(i, f)`` likewise; both named by their least
    member.  Two morphisms compose by pushing both to a common upper
    bound where they become composable.
    """
    if d.variance != COVARIANT:
        raise ShapeError("filtered colimits need a covariant diagram")
    if not d.concrete:
        raise ShapeError("filtered colimits need concrete values")
    P = d.poset
    if not P.is_filtered():
        raise NotFilteredError("poset is not filtered")
    els = P.elements
    ou = UnionFind((i, x) for i in els for x in d.values[i].objects)
    mu = UnionFind((i, f) for i in els for f in d.values[i].morphisms)
    for i, j in P.strict_pairs():
        psi = d.psi(i, j)
        for x in d.values[i].objects:
            ou.union((i, x), (j, psi.obj(x)))
        for f in d.values[i].morphisms:
            mu.union((i, f), (j, psi.mor(f)))

    morphisms = {}
    for cls in mu.classes():
        i, f = cls[0]
        a, b = d.values[i].ends(f)
        morphisms[cls[0]] = (ou.find((i, a)), ou.find((i, b)))
    identity = {}
    for cls in ou.classes():
        i, x = cls[0]
        identity[cls[0]] = mu.find((i, d.values[i].identity(x)))
    # lowest common upper bounds first keeps composites cheap
    bounds = {(i, k): sorted(P.upper_bounds(i, k), key=lambda n: (len(P.lowers(n)), P.sort_key(n)))
              for i in els for k in els}

    def compose(f, h):
        (i, a), (k, b) = f, h
        for n in bounds[(i, k)]:
            x, y = d.psi(i, n).mor(a), d.psi(k, n).mor(b)
            if d.values[n].tgt(x) == d.values[n].src(y):
                return mu.find((n, d.values[n].compose(x, y)))
        raise ShapeError("no common stage where the morphisms compose")

    def inverse(f):
        i, a = f
        return mu.find((i, d.values[i].inverse(a)))

    return FilteredColimit([c[0] for c in ou.classes()], morphisms, identity, compose, inverse,
                           {v: ou.find(v) for v in ou.parent}, {m: mu.find(m) for m in mu.parent})


def tc_to_filtered(tc, fc):
    """Canonical functor from a tc built on table presentations into a filtered colimit.

    Object ``(i, x)`` goes to its class; generator ``(i, f)`` to the class
    of ``f``; lambda generators to identities.
    """
    vmap = {v: fc.object_class[v] for v in tc.groupoid.vertices}
    emap = {}
    for e, (a, _) in tc.groupoid.edges.items():
        emap[e] = fc.identity(vmap[a]) if is_lambda(e) else fc.morphism_class[e]
    return PresFunctor(tc.groupoid, fc, vmap, emap, name="to_filtered")
