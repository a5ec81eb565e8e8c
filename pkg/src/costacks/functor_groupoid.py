"""The groupoid of functors from a presented groupoid into a concrete one."""

from itertools import product

from ._util import UnionFind
from .core import ConcreteFunctor, ConcreteGroupoid
from .errors import ResourceLimitError
from .presentation import PresFunctor

DEFAULT_CAP = 10 ** 6


class FunctorGroupoid(ConcreteGroupoid):
    """``hom(source, target)``: functors as objects, natural isomorphisms as morphisms.

    An object is ``(vertex_images, edge_images)`` in the declaration order
    of ``source``; a morphism is ``(functor, components)`` with one
    component per source vertex.
    """

    def __init__(self, source, target, functors, cap=DEFAULT_CAP):
        self.source = source
        self.target = target
        self.vindex = {v: k for k, v in enumerate(source.vertices)}
        self.eindex = {e: k for k, e in enumerate(source.edges)}
        g = target
        total = 0
        for F in functors:
            n = 1
            for x in F[0]:
                n *= len(g.out(x))
            total += n
            if total > cap:
                raise ResourceLimitError(f"functor groupoid exceeds {cap} morphisms")
        edges = [(self.vindex[a], self.vindex[b]) for a, b in source.edges.values()]
        mors = {}
        for F in functors:
            vimg, eimg = F
            for comps in product(*(g.out(x) for x in vimg)):
                tv = tuple(g.tgt(c) for c in comps)
                te = tuple(g.then(g.inverse(comps[a]), m, comps[b]) for (a, b), m in zip(edges, eimg))
                mors[(F, comps)] = (F, (tv, te))
        ident = {F: (F, tuple(g.identity(x) for x in F[0])) for F in functors}

        def compose(f, h):
            return (f[0], tuple(g.compose(c, d) for c, d in zip(f[1], h[1])))

        def inverse(f):
            return (mors[f][1], tuple(g.inverse(c) for c in f[1]))

        super().__init__(functors, mors, ident, compose, inverse, name="hom")

    def as_functor(self, F):
        vimg, eimg = F
        return PresFunctor(self.source, self.target,
                           dict(zip(self.source.vertices, vimg)),
                           dict(zip(self.source.edges, eimg)))

    def evaluate(self, F, w):
        g = self.target
        out = g.identity(F[0][self.vindex[w.source]])
        for e, s in w.letters:
            m = F[1][self.eindex[e]]
            out = g.compose(out, m if s > 0 else g.inverse(m))
        return out


def enumerate_functors(p, g, limit=None):
    """All functors ``p -> g`` by backtracking, relations checked as soon as complete.

    Raises ResourceLimitError once more than ``limit`` functors are found.
    """
    steps = []
    seen_v, seen_e = set(), set()
    for v in p.vertices:
        steps.append(("v", v))
        seen_v.add(v)
        for e, (a, b) in p.edges.items():
            if e not in seen_e and a in seen_v and b in seen_v:
                steps.append(("e", e))
                seen_e.add(e)
    pos = {step: k for k, step in enumerate(steps)}
    checks = [[] for _ in steps]
    for lhs, rhs in p.relations:
        need = [pos[("v", lhs.source)]] + [pos[("e", e)] for w in (lhs, rhs) for e, _ in w.letters]
        checks[max(need)].append((lhs, rhs))

    vimg, eimg = {}, {}

    def value(w):
        out = g.identity(vimg[w.source])
        for e, s in w.letters:
            m = eimg[e]
            out = g.compose(out, m if s > 0 else g.inverse(m))
        return out

    results = []

    def go(k):
        if k == len(steps):
            results.append((tuple(vimg[v] for v in p.vertices), tuple(eimg[e] for e in p.edges)))
            if limit is not None and len(results) > limit:
                raise ResourceLimitError(f"more than {limit} functors")
            return
        kind, item = steps[k]
        if kind == "v":
            options = g.objects
        else:
            a, b = p.edges[item]
            options = g.hom(vimg[a], vimg[b])
        for choice in options:
            if kind == "v":
                vimg[item] = choice
            else:
                eimg[item] = choice
            if all(value(l) == value(r) for l, r in checks[k]):
                go(k + 1)
        (vimg if kind == "v" else eimg).pop(item, None)

    go(0)
    return results


def functor_groupoid(p, g, cap=DEFAULT_CAP):
    """Materialize ``hom(p, g)``; raises ResourceLimitError past ``cap`` morphisms.

    An empty ``p`` gives the one-object, one-morphism groupoid.
    """
    return FunctorGroupoid(p, g, enumerate_functors(p, g), cap=cap)


def restriction(big, inclusion, small):
    """Restriction functor ``hom(P, G) -> hom(P', G)`` along ``inclusion: P' -> P``.

    ``big`` and ``small`` are the functor groupoids of ``inclusion.codomain``
    and ``inclusion.domain`` into the same target.
    """
    sub = inclusion.domain
    vpos = [big.vindex[inclusion.vertex(v)] for v in sub.vertices]
    images = [inclusion.edge_map[e] for e in sub.edges]
    cache = {}

    def obj(F):
        r = cache.get(F)
        if r is None:
            r = (tuple(F[0][k] for k in vpos), tuple(big.evaluate(F, w) for w in images))
            cache[F] = r
        return r

    def mor(f):
        return (obj(f[0]), tuple(f[1][k] for k in vpos))

    return ConcreteFunctor(big, small, obj, mor, name="restrict")


def inclusion_functor(sub, whole):
    """Identity-on-names functor between presentations with ``sub`` inside ``whole``."""
    return PresFunctor(sub, whole, {v: v for v in sub.vertices},
                       {e: whole.letter(e) for e in sub.edges})


class LazyFunctorGroupoid:
    """``hom(source, target)`` without a materialized morphism set.

    Same object and morphism encoding as ``FunctorGroupoid``; hom-sets,
    out-sets and automorphism groups are enumerated on demand by
    backtracking over the source vertices, and components are found by
    moves that change a single component.  Duck-types the parts of
    ``ConcreteGroupoid`` that the limit constructions use.
    """

    def __init__(self, source, target, functors=None, name="hom", limit=None):
        self.source = source
        self.target = target
        self.name = name
        self.vindex = {v: k for k, v in enumerate(source.vertices)}
        self.eindex = {e: k for k, e in enumerate(source.edges)}
        self._edges = [(self.vindex[a], self.vindex[b]) for a, b in source.edges.values()]
        self._incident = [[] for _ in source.vertices]
        for k, (a, b) in enumerate(self._edges):
            self._incident[a].append(k)
            if b != a:
                self._incident[b].append(k)
        if functors is None:
            functors = enumerate_functors(source, target, limit)
        self.objects = tuple(functors)

    def __repr__(self):
        return f"<LazyFunctorGroupoid {len(self.objects)} objects>"

    def src(self, f):
        return f[0]

    def tgt(self, f):
        F, comps = f
        g = self.target
        tv = tuple(g.tgt(c) for c in comps)
        te = tuple(g.then(g.inverse(comps[a]), m, comps[b]) for (a, b), m in zip(self._edges, F[1]))
        return (tv, te)

    def ends(self, f):
        return (f[0], self.tgt(f))

    def identity(self, F):
        return (F, tuple(self.target.identity(x) for x in F[0]))

    def is_identity(self, f):
        return all(self.target.is_identity(c) for c in f[1])

    def compose(self, f, h):
        g = self.target
        return (f[0], tuple(g.compose(c, d) for c, d in zip(f[1], h[1])))

    def then(self, *fs):
        out = fs[0]
        for f in fs[1:]:
            out = self.compose(out, f)
        return out

    def inverse(self, f):
        g = self.target
        return (self.tgt(f), tuple(g.inverse(c) for c in f[1]))

    def out_count(self, F):
        n = 1
        for x in F[0]:
            n *= len(self.target.out(x))
        return n

    def out(self, F):
        return [(F, comps) for comps in product(*(self.target.out(x) for x in F[0]))]

    def hom(self, F, H):
        """Natural isomorphisms ``F => H``, by backtracking with edge squares checked early."""
        g = self.target
        n = len(F[0])
        comps = [None] * n
        # an edge is checked at the later of its two endpoints
        due = [[] for _ in range(n)]
        for k, (a, b) in enumerate(self._edges):
            due[max(a, b)].append(k)
        out = []

        def go(v):
            if v == n:
                out.append((F, tuple(comps)))
                return
            for c in g.hom(F[0][v], H[0][v]):
                comps[v] = c
                if all(g.compose(F[1][k], comps[self._edges[k][1]]) == g.compose(comps[self._edges[k][0]], H[1][k])
                       for k in due[v]):
                    go(v + 1)
            comps[v] = None

        go(0)
        return out

    def aut(self, F):
        return self.hom(F, F)

    def _moves(self, F):
        """Targets of transformations that are the identity away from one vertex."""
        g = self.target
        vimg, eimg = F
        for v in range(len(vimg)):
            for c in g.out(vimg[v]):
                if g.is_identity(c):
                    continue
                tv = vimg[:v] + (g.tgt(c),) + vimg[v + 1:]
                te = list(eimg)
                for k in self._incident[v]:
                    a, b = self._edges[k]
                    m = eimg[k]
                    if a == v:
                        m = g.compose(g.inverse(c), m)
                    if b == v:
                        m = g.compose(m, c)
                    te[k] = m
                yield (tv, tuple(te))

    def components(self):
        uf = UnionFind(self.objects)
        for F in self.objects:
            for H in self._moves(F):
                uf.union(F, H)
        return uf.classes()

    def materialize(self, cap=DEFAULT_CAP):
        return FunctorGroupoid(self.source, self.target, self.objects, cap=cap)

    def as_functor(self, F):
        return PresFunctor(self.source, self.target,
                           dict(zip(self.source.vertices, F[0])),
                           dict(zip(self.source.edges, F[1])))

    def evaluate(self, F, w):
        g = self.target
        out = g.identity(F[0][self.vindex[w.source]])
        for e, s in w.letters:
            m = F[1][self.eindex[e]]
            out = g.compose(out, m if s > 0 else g.inverse(m))
        return out
