"""Enumerated finite groupoids, functors and natural isomorphisms.

Composition is diagrammatic everywhere in this package: ``g.compose(f, h)``
means "first ``f``, then ``h``" and is defined exactly when
``g.tgt(f) == g.src(h)``.  Formulas written in the usual right-to-left
notation have to be transcribed with the arguments swapped.
"""

from collections.abc import Mapping
from dataclasses import dataclass, field

from ._util import UnionFind
from .errors import GroupoidError, ShapeError


class ConcreteGroupoid:
    """A finite groupoid with all objects and morphisms listed.

    ``morphisms`` maps each morphism id to its ``(src, tgt)`` pair.
    ``compose`` and ``inverse`` may be mappings (an explicit table) or
    callables; constructed groupoids (limits, functor groupoids) use
    callables so large composition tables are never materialized.
    """

    def __init__(self, objects, morphisms, identity, compose, inverse, name=None):
        self.objects = tuple(objects)
        self._ends = dict(morphisms)
        self.morphisms = tuple(self._ends)
        self._identity = dict(identity)
        self._compose = compose
        self._inverse = inverse
        self.name = name
        self._hom = None
        self._out = None

    def __repr__(self):
        name = f" {self.name!r}" if self.name else ""
        return f"<ConcreteGroupoid{name}: {len(self.objects)} objects, {len(self.morphisms)} morphisms>"

    def __len__(self):
        return len(self.morphisms)

    # basic structure

    def src(self, f):
        return self._ends[f][0]

    def tgt(self, f):
        return self._ends[f][1]

    def ends(self, f):
        return self._ends[f]

    def has_morphism(self, f):
        return f in self._ends

    def identity(self, x):
        return self._identity[x]

    def compose(self, f, g):
        if self._ends[f][1] != self._ends[g][0]:
            raise GroupoidError(f"cannot compose {f!r} then {g!r}: endpoints differ")
        if isinstance(self._compose, Mapping):
            try:
                return self._compose[(f, g)]
            except KeyError:
                raise GroupoidError(f"composition table has no entry for ({f!r}, {g!r})") from None
        return self._compose(f, g)

    def then(self, *fs):
        """Composite of a chain of morphisms, read left to right."""
        out = fs[0]
        for f in fs[1:]:
            out = self.compose(out, f)
        return out

    def inverse(self, f):
        if isinstance(self._inverse, Mapping):
            return self._inverse[f]
        return self._inverse(f)

    def is_identity(self, f):
        return self._identity.get(self._ends[f][0]) == f

    def _index(self):
        hom, out = {}, {}
        for f, (a, b) in self._ends.items():
            hom.setdefault((a, b), []).append(f)
            out.setdefault(a, []).append(f)
        self._hom, self._out = hom, out

    def hom(self, a, b):
        if self._hom is None:
            self._index()
        return self._hom.get((a, b), [])

    def out(self, a):
        if self._out is None:
            self._index()
        return self._out.get(a, [])

    def table(self):
        """Explicit composition table over all composable pairs."""
        return {(f, g): self.compose(f, g)
                for f in self.morphisms for g in self.out(self.tgt(f))}

    # derived structure

    def components(self):
        """Connected components as sorted object lists, ordered by least object."""
        uf = UnionFind(self.objects)
        for a, b in self._ends.values():
            uf.union(a, b)
        return uf.classes()

    def vertex_group(self, x):
        """Automorphism group of ``x`` as a one-object groupoid."""
        auts = self.hom(x, x)
        return ConcreteGroupoid(
            [x], {f: (x, x) for f in auts}, {x: self.identity(x)},
            self.compose, self.inverse, name=f"Aut({x!r})")

    def full_subgroupoid(self, objects):
        keep = set(objects)
        mors = {f: e for f, e in self._ends.items() if e[0] in keep and e[1] in keep}
        return ConcreteGroupoid(
            [x for x in self.objects if x in keep], mors,
            {x: self._identity[x] for x in self.objects if x in keep},
            self.compose, self.inverse)

    # constructors

    @classmethod
    def from_table(cls, objects, morphisms, identity, table, inverse=None, name=None):
        """Build from an explicit table; inverses are looked up if not given."""
        morphisms = dict(morphisms)
        table = dict(table)
        if inverse is None:
            inverse = {}
            for f, (a, b) in morphisms.items():
                for g in [g for g, (c, d) in morphisms.items() if c == b and d == a]:
                    if table.get((f, g)) == identity.get(a) and table.get((g, f)) == identity.get(b):
                        inverse[f] = g
                        break
        return cls(objects, morphisms, identity, table, dict(inverse), name=name)

    @classmethod
    def from_group(cls, elements, mul, obj="*", name=None):
        """One-object groupoid of a finite group.

        ``mul`` maps pairs ``(a, b)`` (or is a callable) to the product
        "a then b".  The identity element and inverses are found from
        the table.
        """
        elements = list(elements)
        m = mul if callable(mul) else (lambda a, b: mul[(a, b)])
        unit = next(e for e in elements if all(m(e, x) == x and m(x, e) == x for x in elements))
        inv = {a: next(b for b in elements if m(a, b) == unit) for a in elements}
        table = {(a, b): m(a, b) for a in elements for b in elements}
        return cls([obj], {e: (obj, obj) for e in elements}, {obj: unit}, table, inv, name=name)

    @classmethod
    def cyclic(cls, n, obj="*"):
        return cls.from_group(range(n), lambda a, b: (a + b) % n, obj=obj, name=f"Z/{n}")

    @classmethod
    def symmetric3(cls, obj="*"):
        perms = sorted(_permutations(3))
        # diagrammatic: first p, then q
        return cls.from_group(perms, lambda p, q: tuple(q[p[i]] for i in range(3)), obj=obj, name="S3")

    @classmethod
    def banal(cls, objects, name=None):
        """Simply connected groupoid: exactly one arrow ``(a, b)`` per ordered pair."""
        objects = list(objects)
        mors = {(a, b): (a, b) for a in objects for b in objects}
        return cls(objects, mors, {a: (a, a) for a in objects},
                   lambda f, g: (f[0], g[1]), lambda f: (f[1], f[0]), name=name)

    @classmethod
    def point(cls, obj="*"):
        return cls.banal([obj], name="1")

    @classmethod
    def empty(cls):
        return cls([], {}, {}, {}, {}, name="empty")

    @classmethod
    def discrete(cls, objects):
        objects = list(objects)
        return cls(objects, {(a, a): (a, a) for a in objects}, {a: (a, a) for a in objects},
                   lambda f, g: f, lambda f: f, name="discrete")

    @classmethod
    def connected(cls, objects, group, name=None):
        """Connected groupoid ``objects x group``: morphisms ``(a, b, g)``.

        ``group`` is a one-object ConcreteGroupoid; composition multiplies
        the group labels.
        """
        objects = list(objects)
        elems = group.morphisms
        unit = group.identity(group.objects[0])
        mors = {(a, b, g): (a, b) for a in objects for b in objects for g in elems}
        return cls(objects, mors, {a: (a, a, unit) for a in objects},
                   lambda f, h: (f[0], h[1], group.compose(f[2], h[2])),
                   lambda f: (f[1], f[0], group.inverse(f[2])), name=name)

    @classmethod
    def disjoint_union(cls, parts):
        """Disjoint union of ``(tag, groupoid)`` pairs; ids become ``(tag, id)``."""
        objects, mors, ident, owner = [], {}, {}, {}
        for tag, g in parts:
            objects += [(tag, x) for x in g.objects]
            for f in g.morphisms:
                a, b = g.ends(f)
                mors[(tag, f)] = ((tag, a), (tag, b))
            for x in g.objects:
                ident[(tag, x)] = (tag, g.identity(x))
            owner[tag] = g
        return cls(objects, mors, ident,
                   lambda f, h: (f[0], owner[f[0]].compose(f[1], h[1])),
                   lambda f: (f[0], owner[f[0]].inverse(f[1])), name="union")


def _permutations(n):
    from itertools import permutations
    return [tuple(p) for p in permutations(range(n))]


@dataclass
class ValidationReport:
    violations: list = field(default_factory=list)

    @property
    def ok(self):
        return not self.violations

    def __bool__(self):
        return self.ok


def validate(g, limit=None):
    """Exhaustively check the groupoid axioms; report every failure found.

    ``limit`` stops collecting after that many violations.
    """
    report = ValidationReport()
    bad = report.violations

    def note(msg):
        bad.append(msg)
        return limit is not None and len(bad) >= limit

    objs = set(g.objects)
    if len(objs) != len(g.objects):
        note("duplicate object identifiers")
    for f in g.morphisms:
        a, b = g.ends(f)
        if a not in objs or b not in objs:
            if note(f"morphism {f!r} has an endpoint outside the object set"):
                return report
    for x in g.objects:
        try:
            e = g.identity(x)
        except KeyError:
            if note(f"object {x!r} has no identity"):
                return report
            continue
        if not g.has_morphism(e) or g.ends(e) != (x, x):
            if note(f"identity of {x!r} is not an endomorphism of {x!r}"):
                return report

    def comp(f, h):
        try:
            r = g.compose(f, h)
        except (GroupoidError, KeyError, TypeError):
            return None
        return r if g.has_morphism(r) else None

    for f in g.morphisms:
        a, b = g.ends(f)
        for h in g.out(b):
            r = comp(f, h)
            if r is None:
                if note(f"composite of {f!r} then {h!r} is undefined"):
                    return report
            elif g.ends(r) != (a, g.tgt(h)):
                if note(f"composite of {f!r} then {h!r} has wrong endpoints"):
                    return report
        if a in objs and b in objs:
            ia, ib = g._identity.get(a), g._identity.get(b)
            if ia is not None and g.has_morphism(ia) and comp(ia, f) != f:
                if note(f"left identity law fails at {f!r}"):
                    return report
            if ib is not None and g.has_morphism(ib) and comp(f, ib) != f:
                if note(f"right identity law fails at {f!r}"):
                    return report
        try:
            fi = g.inverse(f)
        except KeyError:
            fi = None
        if fi is None or not g.has_morphism(fi) or g.ends(fi) != (b, a):
            if note(f"morphism {f!r} has no inverse with swapped endpoints"):
                return report
        elif comp(f, fi) != g._identity.get(a) or comp(fi, f) != g._identity.get(b):
            if note(f"inverse law fails at {f!r}"):
                return report

    for f in g.morphisms:
        for h in g.out(g.tgt(f)):
            fh = comp(f, h)
            if fh is None:
                continue
            for k in g.out(g.tgt(h)):
                hk = comp(h, k)
                if hk is None:
                    continue
                if comp(fh, k) != comp(f, hk):
                    if note(f"associativity fails on ({f!r}, {h!r}, {k!r})"):
                        return report
    return report


def is_simply_connected(g):
    """Exactly one morphism for every ordered pair of objects."""
    n = len(g.objects)
    if len(g.morphisms) != n * n:
        return False
    return all(len(g.hom(a, b)) == 1 for a in g.objects for b in g.objects)


class ConcreteFunctor:
    """Functor between concrete groupoids.

    The maps may be mappings or callables (used for lazily evaluated
    functors such as restrictions between functor groupoids).
    """

    def __init__(self, domain, codomain, object_map, morphism_map, name=None):
        self.domain = domain
        self.codomain = codomain
        self.object_map = object_map
        self.morphism_map = morphism_map
        self.name = name

    def __repr__(self):
        return f"<ConcreteFunctor {self.name or ''} {self.domain!r} -> {self.codomain!r}>"

    def obj(self, x):
        m = self.object_map
        return m[x] if isinstance(m, Mapping) else m(x)

    def mor(self, f):
        m = self.morphism_map
        return m[f] if isinstance(m, Mapping) else m(f)

    @classmethod
    def identity(cls, g):
        return cls(g, g, {x: x for x in g.objects}, {f: f for f in g.morphisms}, name="id")

    def then(self, other):
        """Composite functor: apply ``self`` first, then ``other``."""
        if other.domain is not self.codomain:
            raise ShapeError("functors are not composable")
        return ConcreteFunctor(
            self.domain, other.codomain,
            {x: other.obj(self.obj(x)) for x in self.domain.objects},
            {f: other.mor(self.mor(f)) for f in self.domain.morphisms})

    def tabulate(self):
        """Copy with explicit dict maps."""
        return ConcreteFunctor(self.domain, self.codomain,
                               {x: self.obj(x) for x in self.domain.objects},
                               {f: self.mor(f) for f in self.domain.morphisms}, self.name)

    def same_as(self, other):
        return (all(self.obj(x) == other.obj(x) for x in self.domain.objects)
                and all(self.mor(f) == other.mor(f) for f in self.domain.morphisms))

    def check(self):
        """List every violated functor law (empty list when lawful)."""
        d, c = self.domain, self.codomain
        bad = []
        cobjs = set(c.objects)
        for x in d.objects:
            if self.obj(x) not in cobjs:
                bad.append(f"object {x!r} maps outside the codomain")
            elif self.mor(d.identity(x)) != c.identity(self.obj(x)):
                bad.append(f"identity at {x!r} not preserved")
        for f in d.morphisms:
            a, b = d.ends(f)
            img = self.mor(f)
            if not c.has_morphism(img) or c.ends(img) != (self.obj(a), self.obj(b)):
                bad.append(f"morphism {f!r} maps to a morphism with the wrong endpoints")
                continue
            for h in d.out(b):
                if self.mor(d.compose(f, h)) != c.compose(img, self.mor(h)):
                    bad.append(f"composition of {f!r} then {h!r} not preserved")
        return bad

    def is_injective_on_objects(self):
        imgs = [self.obj(x) for x in self.domain.objects]
        return len(set(imgs)) == len(imgs)


class NatIso:
    """Natural isomorphism ``source => target`` between parallel functors.

    ``components[x]`` is a morphism ``source(x) -> target(x)`` of the
    common codomain.
    """

    def __init__(self, source, target, components):
        if source.domain is not target.domain or source.codomain is not target.codomain:
            raise ShapeError("natural transformation between non-parallel functors")
        self.source = source
        self.target = target
        self.components = dict(components)

    def __getitem__(self, x):
        return self.components[x]

    @property
    def domain(self):
        return self.source.domain

    @property
    def codomain(self):
        return self.source.codomain

    @classmethod
    def identity(cls, functor):
        c = functor.codomain
        return cls(functor, functor, {x: c.identity(functor.obj(x)) for x in functor.domain.objects})

    def check(self):
        d, c = self.domain, self.codomain
        bad = []
        for x in d.objects:
            comp = self.components.get(x)
            if comp is None or not c.has_morphism(comp):
                bad.append(f"missing component at {x!r}")
            elif c.ends(comp) != (self.source.obj(x), self.target.obj(x)):
                bad.append(f"component at {x!r} has the wrong endpoints")
        if bad:
            return bad
        for f in d.morphisms:
            a, b = d.ends(f)
            lhs = c.compose(self.source.mor(f), self.components[b])
            rhs = c.compose(self.components[a], self.target.mor(f))
            if lhs != rhs:
                bad.append(f"naturality square fails at {f!r}")
        return bad

    def then(self, other):
        """Vertical composite: ``self`` followed by ``other``."""
        if other.source.domain is not self.domain or not self.target.same_as(other.source):
            raise ShapeError("vertical composite of non-matching transformations")
        c = self.codomain
        return NatIso(self.source, other.target,
                      {x: c.compose(self.components[x], other.components[x]) for x in self.domain.objects})

    def inverse(self):
        c = self.codomain
        return NatIso(self.target, self.source,
                      {x: c.inverse(m) for x, m in self.components.items()})

    def whisker(self, functor):
        """``self * F``: precompose with a functor ``F`` into the domain."""
        if functor.codomain is not self.domain:
            raise ShapeError("whiskering functor does not land in the domain")
        return NatIso(functor.then(self.source), functor.then(self.target),
                      {x: self.components[functor.obj(x)] for x in functor.domain.objects})

    def push(self, functor):
        """``T * self``: postcompose with a functor ``T`` out of the codomain."""
        if functor.domain is not self.codomain:
            raise ShapeError("functor does not start at the codomain")
        return NatIso(self.source.then(functor), self.target.then(functor),
                      {x: functor.mor(m) for x, m in self.components.items()})

    def same_as(self, other):
        return all(self.components[x] == other.components[x] for x in self.domain.objects)

    def is_identity(self):
        c = self.codomain
        return all(c.is_identity(m) for m in self.components.values())


def cocycle_holds(lam_ik, lam_ij, lam_jk, psi_ij):
    """Check ``lam_ik = lam_ij o (lam_jk * psi_ij)`` componentwise.

    In diagrammatic order the right-hand side at ``x`` is
    ``lam_jk(psi_ij(x))`` followed by ``lam_ij(x)``.
    """
    c = lam_ik.codomain
    for x in lam_ik.domain.objects:
        rhs = c.compose(lam_jk[psi_ij.obj(x)], lam_ij[x])
        if rhs != lam_ik[x]:
            return False
    return True


def is_full_and_faithful(functor):
    """Hom-set bijectivity for every ordered pair of domain objects."""
    d, c = functor.domain, functor.codomain
    for a in d.objects:
        for b in d.objects:
            imgs = {functor.mor(f) for f in d.hom(a, b)}
            if len(imgs) != len(d.hom(a, b)):
                return False
            if len(c.hom(functor.obj(a), functor.obj(b))) != len(imgs):
                return False
    return True


def is_equivalence(functor):
    """Full, faithful and essentially surjective (exact, finite case)."""
    if not is_full_and_faithful(functor):
        return False
    c = functor.codomain
    hit = set()
    comp_of = {}
    for i, comp in enumerate(c.components()):
        for x in comp:
            comp_of[x] = i
    for x in functor.domain.objects:
        hit.add(comp_of[functor.obj(x)])
    return len(hit) == len(c.components())


def component_map(g):
    out = {}
    for comp in g.components():
        for x in comp:
            out[x] = comp[0]
    return out

