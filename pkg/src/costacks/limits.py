"""Strict limits and 2-limits of contravariant diagrams of concrete groupoids.

Both are lazy: objects are enumerated on demand and hom-sets are
computed by joining candidate morphisms at the maximal elements, so the
full morphism set is only built by ``materialize()``.  A morphism family
is determined by its values at the maxima, since every other component
is a restriction of one of them.
"""

from itertools import product

from .core import ConcreteFunctor, ConcreteGroupoid
from .diagrams import CONTRAVARIANT
from .errors import ResourceLimitError, ShapeError


class _Join:
    """Compatible families built from candidates at the maximal elements.

    ``restrict(i, m, v)`` is the component at ``i`` forced by the value
    ``v`` chosen at the maximum ``m > i``.  Maxima are visited in order;
    an index keyed on the already-fixed lower components makes each step
    a dictionary lookup.
    """

    def __init__(self, poset):
        self.elements = poset.elements
        self.maxima = poset.maximal()
        self.below = {m: poset.lowers(m) for m in self.maxima}
        self.shared = []
        fixed = set()
        for m in self.maxima:
            self.shared.append([i for i in self.below[m] if i in fixed])
            fixed.update(self.below[m])
            fixed.add(m)

    def families(self, candidates, restrict):
        index = []
        for t, m in enumerate(self.maxima):
            table = {}
            for v in candidates(m):
                down = {i: restrict(i, m, v) for i in self.below[m]}
                key = tuple(down[i] for i in self.shared[t])
                table.setdefault(key, []).append((v, down))
            index.append(table)
        values = {}

        def go(t):
            if t == len(self.maxima):
                yield tuple(values[i] for i in self.elements)
                return
            m = self.maxima[t]
            key = tuple(values[i] for i in self.shared[t])
            fresh = [i for i in self.below[m] if i not in values]
            for v, down in index[t].get(key, ()):
                values[m] = v
                for i in fresh:
                    values[i] = down[i]
                yield from go(t + 1)
            values.pop(m, None)
            for i in fresh:
                values.pop(i, None)

        yield from go(0)


def _capped(items, limit, what):
    out = []
    for x in items:
        out.append(x)
        if limit is not None and len(out) > limit:
            raise ResourceLimitError(f"more than {limit} objects in the {what}")
    return out


def _check_diagram(d):
    if d.variance != CONTRAVARIANT:
        raise ShapeError("limits need a contravariant diagram")
    if not d.concrete:
        raise ShapeError("limits need concrete values")


class StrictLimit:
    """``lim F``: families ``(x_i)`` with ``psi_ij(x_j) = x_i``.

    Objects and morphisms are tuples in poset element order; composition
    is componentwise.
    """

    def __init__(self, d, limit=None):
        _check_diagram(d)
        self.diagram = d
        self.elements = d.poset.elements
        self.limit = limit
        self._join = _Join(d.poset)
        self._objects = None

    def _restrict_obj(self, i, m, x):
        return self.diagram.psi(i, m).obj(x)

    def _restrict_mor(self, i, m, f):
        return self.diagram.psi(i, m).mor(f)

    @property
    def objects(self):
        if self._objects is None:
            vals = self.diagram.values
            fams = self._join.families(lambda m: vals[m].objects, self._restrict_obj)
            self._objects = _capped(fams, self.limit, "limit")
        return self._objects

    def hom(self, x, y):
        vals = self.diagram.values
        pos = {i: k for k, i in enumerate(self.elements)}
        return list(self._join.families(lambda m: vals[m].hom(x[pos[m]], y[pos[m]]), self._restrict_mor))

    def out(self, x):
        vals = self.diagram.values
        pos = {i: k for k, i in enumerate(self.elements)}
        return list(self._join.families(lambda m: vals[m].out(x[pos[m]]), self._restrict_mor))

    def out_count(self, x):
        return len(self.out(x))

    def materialize(self, cap=None):
        vals = [self.diagram.values[i] for i in self.elements]
        mors = {}
        for x in self.objects:
            for f in self.out(x):
                mors[f] = (x, tuple(g.tgt(c) for g, c in zip(vals, f)))
                if cap is not None and len(mors) > cap:
                    raise ResourceLimitError(f"limit exceeds {cap} morphisms")
        ident = {x: tuple(g.identity(c) for g, c in zip(vals, x)) for x in self.objects}

        def compose(f, h):
            return tuple(g.compose(a, b) for g, a, b in zip(vals, f, h))

        def inverse(f):
            return tuple(g.inverse(a) for g, a in zip(vals, f))

        return ConcreteGroupoid(self.objects, mors, ident, compose, inverse, name="lim")


class TwoLimit:
    """``tl F``: collections ``(x_i, xi_ij)`` subject to the cocycle condition.

    ``xi_ij: psi_ij(x_j) -> x_i`` lives in ``F_i``; the condition on a
    chain ``i < j < k`` reads ``xi_ik = psi_ij(xi_jk) then xi_ij``.  An
    object is ``(xs, xis)`` with ``xis`` aligned with ``poset.strict_pairs()``.
    A morphism ``(f_i)`` must satisfy ``xi_ij then f_i = psi_ij(f_j) then eta_ij``.
    """

    def __init__(self, d, limit=None):
        _check_diagram(d)
        self.diagram = d
        self.limit = limit
        self.poset = d.poset
        self.elements = d.poset.elements
        self.pairs = d.poset.strict_pairs()
        self.pair_pos = {p: k for k, p in enumerate(self.pairs)}
        self.pos = {i: k for k, i in enumerate(self.elements)}
        self._join = _Join(d.poset)
        self._objects = None

    def xi(self, x, i, j):
        if i == j:
            return self.diagram.values[i].identity(x[0][self.pos[i]])
        return x[1][self.pair_pos[(i, j)]]

    @property
    def objects(self):
        if self._objects is None:
            self._objects = _capped(self._enumerate(), self.limit, "2-limit")
        return self._objects

    def _enumerate(self, rep=None):
        """All objects, or with ``rep`` (element -> object -> chosen
        representative of its component) only those whose ``x_i`` are all
        representatives."""
        d, P = self.diagram, self.poset
        order = P.eager_descending()
        xs, xis = {}, {}

        def base(i):
            # coherence data at i with x_i = psi(x_u) and xi_iu = id for the
            # first upper u; every other solution is one of these followed by
            # an isomorphism out of x_i, and cocycle failures do not depend
            # on that isomorphism
            g = d.values[i]
            ups = list(P.uppers(i))
            # breadth-first over comparability, so later uppers are mostly
            # forced by an earlier comparable one
            seq, anchor = [], {}
            for root in ups:
                if root in anchor:
                    continue
                anchor[root], queue = None, [root]
                for j in queue:
                    for k in ups:
                        if k not in anchor and (P.lt(j, k) or P.lt(k, j)):
                            anchor[k] = j
                            queue.append(k)
                seq += queue
            start = d.psi(i, ups[0]).obj(xs[ups[0]])
            local = {ups[0]: g.identity(start)}

            def fits(j):
                for k in local:
                    if k == j:
                        continue
                    lo, hi = (j, k) if P.lt(j, k) else (k, j) if P.lt(k, j) else (None, None)
                    if lo is not None and local[hi] != g.compose(d.psi(i, lo).mor(xis[(lo, hi)]), local[lo]):
                        return False
                return True

            def options(j):
                k = anchor[j]
                if k is None:
                    return g.hom(d.psi(i, j).obj(xs[j]), start)
                if P.lt(k, j):
                    return [g.compose(d.psi(i, k).mor(xis[(k, j)]), local[k])]
                return [g.compose(g.inverse(d.psi(i, j).mor(xis[(j, k)])), local[k])]

            def go(t):
                if t == len(seq):
                    yield dict(local)
                    return
                j = seq[t]
                for f in options(j):
                    local[j] = f
                    if fits(j):
                        yield from go(t + 1)
                local.pop(j, None)

            return start, list(go(1))

        def go(t):
            if t == len(order):
                yield (tuple(xs[i] for i in self.elements), tuple(xis[p] for p in self.pairs))
                return
            i = order[t]
            g = d.values[i]
            if not P.uppers(i):
                xs_all = g.objects
                for x in (xs_all if rep is None else sorted(set(rep[i].values()), key=xs_all.index)):
                    xs[i] = x
                    yield from go(t + 1)
                xs.pop(i, None)
                return
            start, sols = base(i)
            if not sols:
                return
            for f in (g.out(start) if rep is None else g.hom(start, rep[i][start])):
                xs[i] = g.tgt(f)
                for sol in sols:
                    for j, h in sol.items():
                        xis[(i, j)] = g.compose(h, f)
                    yield from go(t + 1)
            xs.pop(i, None)
            for j in P.uppers(i):
                xis.pop((i, j), None)

        yield from go(0)

    def count_objects(self):
        """Number of objects, by a component-class formula when the poset has height two.

        With every non-minimal element maximal, the maxima carry no
        coherence data, and given their objects ``x_m`` a minimal ``i`` with
        uppers ``m_1..m_r`` admits ``|C| * |Aut_C|^r`` choices of
        ``(x_i, xi_i*)`` when all ``psi_im(x_m)`` lie in one component ``C``
        of ``F_i``, and none otherwise.  So only the component labels of
        the restrictions matter.  Other shapes use ``_normalized_count``.
        """
        P, d = self.poset, self.diagram
        minimal = [i for i in self.elements if P.uppers(i)]
        maxima = P.maximal()
        if any(P.uppers(i) and P.lowers(i) for i in self.elements):
            return self._normalized_count()
        label, weight = {}, {}
        for i in minimal:
            g = d.values[i]
            for n, comp in enumerate(g.components()):
                r = len(P.uppers(i))
                aut = len(g.hom(comp[0], comp[0]))
                weight[(i, n)] = len(comp) * aut ** r
                for x in comp:
                    label[(i, x)] = n
        below = {m: P.lowers(m) for m in maxima}
        tallies = []
        for m in maxima:
            t = {}
            for x in d.values[m].objects:
                key = tuple(label[(i, d.psi(i, m).obj(x))] for i in below[m])
                t[key] = t.get(key, 0) + 1
            tallies.append(list(t.items()))
        total = 0
        for combo in product(*tallies):
            seen, n = {}, 1
            for m, (key, count) in zip(maxima, combo):
                n *= count
                for i, c in zip(below[m], key):
                    if seen.setdefault(i, c) != c:
                        n = 0
            if n:
                for i in minimal:
                    n *= weight[(i, seen[i])]
                total += n
        return total

    def _normalized_count(self):
        """Every object is isomorphic to one whose ``x_i`` are component
        representatives, and its isomorphism class holds ``prod |C(x_i)|``
        objects for each such normalized member, so summing that weight over
        the normalized objects counts everything."""
        rep, size = {}, {}
        for i in self.elements:
            rep[i] = {}
            for comp in self.diagram.values[i].components():
                size[(i, comp[0])] = len(comp)
                for x in comp:
                    rep[i][x] = comp[0]
        total = 0
        for xs, _ in _capped(self._enumerate(rep), self.limit, "normalized 2-limit"):
            n = 1
            for i, x in zip(self.elements, xs):
                n *= size[(i, x)]
            total += n
        return total

    def _restrictor(self, x, y):
        d = self.diagram

        def restrict(i, m, f):
            g = d.values[i]
            return g.then(g.inverse(self.xi(x, i, m)), d.psi(i, m).mor(f), self.xi(y, i, m))

        return restrict

    def hom(self, x, y):
        vals = self.diagram.values
        fams = self._join.families(lambda m: vals[m].hom(x[0][self.pos[m]], y[0][self.pos[m]]),
                                   self._restrictor(x, y))
        return [(x, f) for f in fams]

    def out_count(self, x):
        n = 1
        for i in self.elements:
            n *= len(self.diagram.values[i].out(x[0][self.pos[i]]))
        return n

    def target_of(self, x, fs):
        """The object reached from ``x`` along components ``fs`` (any choice is a morphism)."""
        d = self.diagram
        ys = tuple(d.values[i].tgt(f) for i, f in zip(self.elements, fs))
        etas = []
        for i, j in self.pairs:
            g = d.values[i]
            fi, fj = fs[self.pos[i]], fs[self.pos[j]]
            etas.append(g.then(g.inverse(d.psi(i, j).mor(fj)), self.xi(x, i, j), fi))
        return (ys, tuple(etas))

    def materialize(self, cap=None):
        d = self.diagram
        vals = [d.values[i] for i in self.elements]
        total = sum(self.out_count(x) for x in self.objects)
        if cap is not None and total > cap:
            raise ResourceLimitError(f"2-limit exceeds {cap} morphisms")
        mors = {}
        for x in self.objects:
            for fs in product(*(g.out(c) for g, c in zip(vals, x[0]))):
                mors[(x, fs)] = (x, self.target_of(x, fs))
        ident = {x: (x, tuple(g.identity(c) for g, c in zip(vals, x[0]))) for x in self.objects}

        def compose(f, h):
            return (f[0], tuple(g.compose(a, b) for g, a, b in zip(vals, f[1], h[1])))

        def inverse(f):
            return (mors[f][1], tuple(g.inverse(a) for g, a in zip(vals, f[1])))

        return ConcreteGroupoid(self.objects, mors, ident, compose, inverse, name="tl")


def diagram_lim(d, cap=None):
    return StrictLimit(d).materialize(cap)


def diagram_tl(d, cap=None):
    return TwoLimit(d).materialize(cap)


def gamma_embedding(d, lim=None, tl=None):
    """``gamma: lim -> tl``, ``(x_i) -> (x_i, identities)`` and ``(f_i) -> (f_i)``."""
    lim = lim or diagram_lim(d)
    tl = tl or diagram_tl(d)
    pairs = d.poset.strict_pairs()
    pos = {i: k for k, i in enumerate(d.poset.elements)}

    def obj(x):
        return (x, tuple(d.values[i].identity(x[pos[i]]) for i, _ in pairs))

    def mor(f):
        return (obj(lim.src(f)), f)

    return ConcreteFunctor(lim, tl, obj, mor, name="gamma")
