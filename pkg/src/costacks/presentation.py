"""Finitely presented groupoids.

A presented groupoid is a graph of generating arrows together with
relations, each relation a pair of parallel words.  Equality of words in
a presented groupoid is undecidable in general, so this module only
offers free equality (after free reduction), evaluation into concrete
groupoids, and equality after a successful bounded concretization.
"""

from collections import deque
from dataclasses import dataclass

from ._util import UnionFind
from .core import ConcreteGroupoid
from .errors import DisconnectedError, GroupoidError, ShapeError
from .snf import smith_diagonal
from .todd_coxeter import enumerate_group


@dataclass(frozen=True)
class Word:
    """A path in a generating graph: signed edge letters from ``source`` to ``target``.

    Letters are ``(edge_id, +1)`` for traversing an edge forwards and
    ``(edge_id, -1)`` backwards.  The empty word at ``v`` has
    ``source == target == v``.
    """

    source: object
    target: object
    letters: tuple = ()

    @classmethod
    def empty(cls, v):
        return cls(v, v, ())

    def __len__(self):
        return len(self.letters)

    def is_empty(self):
        return not self.letters

    def inverse(self):
        return Word(self.target, self.source, tuple((e, -s) for e, s in reversed(self.letters)))

    def __add__(self, other):
        if self.target != other.source:
            raise ShapeError(f"cannot concatenate words ending at {self.target!r} and starting at {other.source!r}")
        return Word(self.source, other.target, self.letters + other.letters)

    def is_parallel(self, other):
        return self.source == other.source and self.target == other.target

    def spell(self):
        return [f"{e}{'+' if s > 0 else '-'}" for e, s in self.letters]

    def __str__(self):
        return " ".join(self.spell()) or f"1_{self.source}"


class GenGraph:
    """Vertices and directed generating edges ``id -> (src, tgt)``."""

    def __init__(self, vertices, edges):
        self.vertices = tuple(vertices)
        self.edges = dict(edges)
        vs = set(self.vertices)
        if len(vs) != len(self.vertices):
            raise GroupoidError("duplicate vertex identifiers")
        for e, (a, b) in self.edges.items():
            if a not in vs or b not in vs:
                raise GroupoidError(f"edge {e!r} has an undeclared endpoint")

    def letter_ends(self, e, s):
        a, b = self.edges[e]
        return (a, b) if s > 0 else (b, a)

    def word(self, start, letters):
        """Build a chained word from ``start``; raises on a broken chain."""
        at = start
        out = []
        for e, s in letters:
            if e not in self.edges:
                raise GroupoidError(f"unknown edge {e!r}")
            s = 1 if s > 0 else -1
            a, b = self.letter_ends(e, s)
            if a != at:
                raise GroupoidError(f"letter {e!r}{'+' if s > 0 else '-'} does not start at {at!r}")
            out.append((e, s))
            at = b
        return Word(start, at, tuple(out))

    def letter(self, e, s=1):
        a, _ = self.letter_ends(e, s)
        return self.word(a, [(e, s)])

    def is_chained(self, w):
        try:
            return self.word(w.source, w.letters) == w
        except (GroupoidError, KeyError):
            return False

    def components(self):
        uf = UnionFind(self.vertices)
        for a, b in self.edges.values():
            uf.union(a, b)
        return uf.classes()


class PresentedGroupoid:
    """Generating graph plus relations given as pairs of parallel words."""

    def __init__(self, vertices, edges, relations=(), name=None):
        self.graph = GenGraph(vertices, edges)
        rels = []
        vs = set(self.graph.vertices)
        for lhs, rhs in relations:
            for w in (lhs, rhs):
                if w.source not in vs or not self.graph.is_chained(w):
                    raise GroupoidError(f"relation word {w} is not a path of the graph")
            if not lhs.is_parallel(rhs):
                raise GroupoidError(f"relation {lhs} = {rhs} relates non-parallel words")
            rels.append((lhs, rhs))
        self.relations = tuple(rels)
        self.name = name

    def __repr__(self):
        return (f"<PresentedGroupoid: {len(self.vertices)} vertices, "
                f"{len(self.edges)} generators, {len(self.relations)} relations>")

    @property
    def vertices(self):
        return self.graph.vertices

    @property
    def edges(self):
        return self.graph.edges

    def word(self, start, letters):
        return self.graph.word(start, letters)

    def letter(self, e, s=1):
        return self.graph.letter(e, s)

    def components(self):
        return self.graph.components()

    def restrict(self, vertices):
        """Full sub-presentation on a union of components."""
        keep = set(vertices)
        edges = {e: ab for e, ab in self.edges.items() if ab[0] in keep}
        rels = [(l, r) for l, r in self.relations if l.source in keep]
        return PresentedGroupoid([v for v in self.vertices if v in keep], edges, rels)

    @classmethod
    def one_vertex(cls, generators, relators, vertex="*"):
        """Presentation of a group ``<generators | relators>`` on one vertex."""
        edges = {g: (vertex, vertex) for g in generators}
        rels = [(Word(vertex, vertex, tuple(r)), Word.empty(vertex)) for r in relators]
        return cls([vertex], edges, rels)


def free_reduce(w):
    """Cancel adjacent inverse letter pairs until none remain."""
    out = []
    for e, s in w.letters:
        if out and out[-1] == (e, -s):
            out.pop()
        else:
            out.append((e, s))
    return Word(w.source, w.target, tuple(out))


def _reduce_letters(letters):
    out = []
    for x in letters:
        if out and out[-1] == (x[0], -x[1]):
            out.pop()
        else:
            out.append(x)
    return tuple(out)


def _cyclic_reduce(letters):
    letters = list(_reduce_letters(letters))
    while len(letters) >= 2 and letters[0] == (letters[-1][0], -letters[-1][1]):
        letters = letters[1:-1]
    return tuple(letters)


@dataclass(frozen=True)
class VertexGroupPresentation:
    generators: tuple
    relators: tuple

    def __post_init__(self):
        gens = set(self.generators)
        for r in self.relators:
            for g, _ in r:
                if g not in gens:
                    raise GroupoidError(f"relator uses undeclared generator {g!r}")

    def as_groupoid(self, vertex="*"):
        return PresentedGroupoid.one_vertex(self.generators, self.relators, vertex)


@dataclass(frozen=True)
class AbelianInvariant:
    free_rank: int
    torsion: tuple = ()

    def __post_init__(self):
        for a, b in zip(self.torsion, self.torsion[1:]):
            if b % a:
                raise ValueError("torsion coefficients must form a divisibility chain")

    def is_trivial(self):
        return self.free_rank == 0 and not self.torsion

    def __str__(self):
        parts = ["Z"] * self.free_rank + [f"Z/{t}" for t in self.torsion]
        return " + ".join(parts) or "0"


@dataclass
class Collapse:
    """Spanning-tree data behind a vertex-group presentation."""

    presentation: VertexGroupPresentation
    basepoint: object
    tree_path: dict      # vertex -> Word from the basepoint
    tree_edges: frozenset

    def rewrite(self, w):
        """Generator sequence for ``path(src) . w . path(tgt)^-1``."""
        return _reduce_letters([(e, s) for e, s in w.letters if e not in self.tree_edges])


def spanning_tree(p, basepoint):
    """Breadth-first spanning tree of the basepoint's component.

    Edges are tried in declaration order; returns ``(tree_path, tree_edges)``.
    """
    incident = {v: [] for v in p.vertices}
    for e, (a, b) in p.edges.items():
        incident[a].append((e, 1))
        if b != a:
            incident[b].append((e, -1))
    path = {basepoint: Word.empty(basepoint)}
    tree = set()
    queue = deque([basepoint])
    while queue:
        v = queue.popleft()
        for e, s in incident[v]:
            _, w = p.graph.letter_ends(e, s)
            if w not in path:
                path[w] = path[v] + p.letter(e, s)
                tree.add(e)
                queue.append(w)
    return path, frozenset(tree)


def collapse(p, basepoint):
    if basepoint not in set(p.vertices):
        raise GroupoidError(f"{basepoint!r} is not a vertex")
    path, tree = spanning_tree(p, basepoint)
    if len(path) != len(p.vertices):
        raise DisconnectedError("tree collapse needs a connected presentation")
    gens = tuple(e for e in p.edges if e not in tree)
    data = Collapse(None, basepoint, path, tree)
    relators = tuple(
        _reduce_letters(data.rewrite(lhs) + tuple((e, -s) for e, s in reversed(data.rewrite(rhs))))
        for lhs, rhs in p.relations)
    data.presentation = VertexGroupPresentation(gens, relators)
    return data


def tree_collapse(p, basepoint):
    """Vertex-group presentation of a connected presented groupoid at ``basepoint``.

    Generators are the non-tree edges; there is one relator per relation
    (possibly empty after rewriting).
    """
    return collapse(p, basepoint).presentation


def exponent_matrix(v):
    col = {g: k for k, g in enumerate(v.generators)}
    rows = []
    for r in v.relators:
        row = [0] * len(v.generators)
        for g, s in r:
            row[col[g]] += s
        rows.append(row)
    return rows


def abelian_invariants(v):
    diag = smith_diagonal(exponent_matrix(v), len(v.generators))
    return AbelianInvariant(len(v.generators) - len(diag), tuple(d for d in diag if d > 1))


class PresFunctor:
    """Functor out of a presented groupoid.

    With a presented codomain, ``edge_map`` sends edges to Words of the
    codomain; with a concrete codomain it sends edges to morphisms.
    Relation preservation is checkable only for concrete codomains.
    """

    def __init__(self, domain, codomain, vertex_map, edge_map, name=None):
        self.domain = domain
        self.codomain = codomain
        self.vertex_map = dict(vertex_map)
        self.edge_map = dict(edge_map)
        self.name = name

    @property
    def concrete(self):
        return isinstance(self.codomain, ConcreteGroupoid)

    def vertex(self, v):
        return self.vertex_map[v]

    def word(self, w):
        """Image of a domain word as a freely reduced codomain word."""
        if self.concrete:
            raise ShapeError("use evaluate() for a concrete codomain")
        out = Word.empty(self.vertex_map[w.source])
        for e, s in w.letters:
            img = self.edge_map[e]
            out = out + (img if s > 0 else img.inverse())
        return free_reduce(out)

    def evaluate(self, w):
        return evaluate(self, w)

    def then(self, other):
        """Apply ``self`` first, then ``other``."""
        if self.concrete:
            raise ShapeError("cannot continue after a concrete codomain")
        vm = {v: other.vertex(self.vertex_map[v]) for v in self.domain.vertices}
        if other.concrete:
            em = {e: other.evaluate(self.edge_map[e]) for e in self.domain.edges}
        else:
            em = {e: other.word(self.edge_map[e]) for e in self.domain.edges}
        return PresFunctor(self.domain, other.codomain, vm, em)

    @classmethod
    def identity(cls, p):
        return cls(p, p, {v: v for v in p.vertices}, {e: p.letter(e) for e in p.edges}, name="id")

    def check(self):
        """Violations of endpoint preservation and, when concrete, of relations."""
        bad = []
        for v in self.domain.vertices:
            if v not in self.vertex_map:
                bad.append(f"vertex {v!r} unmapped")
        if bad:
            return bad
        for e, (a, b) in self.domain.edges.items():
            img = self.edge_map.get(e)
            if img is None:
                bad.append(f"edge {e!r} unmapped")
                continue
            want = (self.vertex_map[a], self.vertex_map[b])
            got = self.codomain.ends(img) if self.concrete else (img.source, img.target)
            if got != want:
                bad.append(f"edge {e!r} maps to an arrow with the wrong endpoints")
        if bad or not self.concrete:
            return bad
        for lhs, rhs in self.domain.relations:
            if evaluate(self, lhs) != evaluate(self, rhs):
                bad.append(f"relation {lhs} = {rhs} not preserved")
        return bad

    def same_as(self, other):
        if self.vertex_map != other.vertex_map:
            return False
        if self.concrete:
            return self.edge_map == other.edge_map
        return all(free_reduce(self.edge_map[e]) == free_reduce(other.edge_map[e]) for e in self.domain.edges)


def evaluate(f, w):
    """Evaluate a domain word under a functor with a concrete codomain."""
    g = f.codomain
    out = g.identity(f.vertex_map[w.source])
    for e, s in w.letters:
        m = f.edge_map[e]
        out = g.compose(out, m if s > 0 else g.inverse(m))
    return out


def as_presentation(g):
    """Presentation of a concrete groupoid by its full multiplication table.

    Generators are the non-identity morphisms; relations say ``f h = fh``.
    """
    gens = {f: g.ends(f) for f in g.morphisms if not g.is_identity(f)}
    p_graph = GenGraph(g.objects, gens)

    def w(f):
        return Word.empty(g.src(f)) if g.is_identity(f) else p_graph.letter(f)

    rels = []
    for f in gens:
        for h in g.out(g.tgt(f)):
            if g.is_identity(h):
                continue
            rels.append((w(f) + w(h), w(g.compose(f, h))))
    return PresentedGroupoid(g.objects, gens, rels, name=g.name)


def functor_as_presented(functor, source=None, target=None):
    """A ConcreteFunctor rewritten between the table presentations."""
    source = source or as_presentation(functor.domain)
    target = target or as_presentation(functor.codomain)
    c = functor.codomain

    def w(m):
        return Word.empty(c.src(m)) if c.is_identity(m) else target.letter(m)

    return PresFunctor(source, target,
                       {x: functor.obj(x) for x in source.vertices},
                       {e: w(functor.mor(e)) for e in source.edges})


@dataclass
class FiniteGroupTable:
    """A finite group produced by coset enumeration: elements 0..n-1, 0 the unit."""

    mul: list       # mul[a][b] = a then b
    inv: list
    gen_value: dict  # generator -> element

    @property
    def order(self):
        return len(self.mul)

    def word_value(self, letters):
        x = 0
        for g, s in letters:
            y = self.gen_value[g]
            x = self.mul[x][y if s > 0 else self.inv[y]]
        return x


def finite_group(v, budget):
    """Enumerate the group of a vertex-group presentation within ``budget`` cells.

    Returns a FiniteGroupTable or None.  Groups with positive free rank
    are infinite and return None immediately.
    """
    from .tietze import simplify

    if abelian_invariants(v).free_rank > 0:
        return None
    small, subst = simplify(v)
    gens = list(small.generators)
    idx = {g: k for k, g in enumerate(gens)}
    rels = [[(idx[g], s) for g, s in r] for r in small.relators]
    table = enumerate_group(len(gens), rels, budget)
    if table is None:
        return None
    n = len(table)
    # normal-form words by breadth-first search from the unit coset
    words = {0: []}
    queue = deque([0])
    while queue:
        c = queue.popleft()
        for x in range(2 * len(gens)):
            d = table[c][x]
            if d not in words:
                words[d] = words[c] + [x]
                queue.append(d)

    def act(c, cols):
        for x in cols:
            c = table[c][x]
        return c

    mul = [[act(a, words[b]) for b in range(n)] for a in range(n)]
    inv = [next(b for b in range(n) if mul[a][b] == 0) for a in range(n)]
    for r in rels:
        cols = [2 * g + (0 if s > 0 else 1) for g, s in r]
        if any(act(c, cols) != c for c in range(n)):
            raise AssertionError("coset enumeration produced a table violating a relator")
    gen_value = {g: table[0][2 * k] for k, g in enumerate(gens)}
    group = FiniteGroupTable(mul, inv, gen_value)
    for g in v.generators:
        if g not in gen_value:
            gen_value[g] = group.word_value(subst[g])
    return group


@dataclass
class Concretization:
    """Result of a successful concretization and its comparison functor."""

    groupoid: ConcreteGroupoid
    functor: PresFunctor
    groups: dict    # component basepoint -> FiniteGroupTable


class _Unknown:
    """Marker for an undecided result; falsy."""

    _inst = None

    def __new__(cls):
        if cls._inst is None:
            cls._inst = super().__new__(cls)
        return cls._inst

    def __bool__(self):
        return False

    def __repr__(self):
        return "Unknown"


Unknown = _Unknown()

DEFAULT_BUDGET = 10 ** 5


def concretize(p, budget=DEFAULT_BUDGET):
    """Turn a presented groupoid into a concrete one, or return ``Unknown``.

    Each component's vertex group is enumerated by coset enumeration;
    ``budget`` caps the total number of coset-table cells.  Morphisms of
    the result are triples ``(u, w, k)`` with ``k`` an element of the
    vertex group at the component's least vertex.
    """
    objects, mors, ident, groups, where = [], {}, {}, {}, {}
    edge_map = {}
    remaining = budget
    for comp in p.components():
        base = comp[0]
        sub = p.restrict(comp)
        data = collapse(sub, base)
        group = finite_group(data.presentation, remaining)
        if group is None:
            return Unknown
        remaining -= group.order * max(2 * len(data.presentation.generators), 1)
        groups[base] = group
        for v in comp:
            where[v] = base
        objects += comp
        for a in comp:
            ident[a] = (a, a, 0)
            for b in comp:
                for k in range(group.order):
                    mors[(a, b, k)] = (a, b)
        for e in sub.edges:
            a, b = p.edges[e]
            edge_map[e] = (a, b, group.word_value(data.rewrite(p.letter(e))))

    def compose(f, h):
        return (f[0], h[1], groups[where[f[0]]].mul[f[2]][h[2]])

    def inverse(f):
        return (f[1], f[0], groups[where[f[0]]].inv[f[2]])

    g = ConcreteGroupoid(objects, mors, ident, compose, inverse, name="concretized")
    functor = PresFunctor(p, g, {v: v for v in p.vertices}, edge_map)
    return Concretization(g, functor, groups)

