"""Combinatorial 2-complexes standing in for spaces, with subcomplexes as open sets.

A complex has vertices, directed edges and polygonal cells whose
boundaries are closed edge paths.  Its edge-path groupoid (``pi1``) has
the vertices as objects, the edges as generators and one relation
``boundary = empty`` per cell.
"""

from dataclasses import dataclass
from itertools import combinations

from ._util import UnionFind, idkey
from .diagrams import COVARIANT, CONTRAVARIANT, GroupoidDiagram
from .equivalence import vertex_groups
from .errors import CoverError, ShapeError
from .functor_groupoid import LazyFunctorGroupoid, inclusion_functor, restriction
from .poset import FinitePoset
from .presentation import DEFAULT_BUDGET, GenGraph, PresentedGroupoid, Word


class Complex2:
    def __init__(self, vertices, edges, cells=None, name=None):
        self.vertices = tuple(vertices)
        self.edges = dict(edges)
        self.name = name
        graph = GenGraph(self.vertices, self.edges)
        self.cells = {}
        for c, letters in (cells or {}).items():
            letters = tuple((e, s) for e, s in letters)
            if not letters:
                raise ShapeError(f"cell {c!r} has an empty boundary")
            e, s = letters[0]
            start = graph.letter_ends(e, s)[0]
            w = graph.word(start, letters)
            if w.source != w.target:
                raise ShapeError(f"boundary of cell {c!r} is not closed")
            self.cells[c] = w

    def __repr__(self):
        name = f" {self.name!r}" if self.name else ""
        return f"<Complex2{name}: {len(self.vertices)}V {len(self.edges)}E {len(self.cells)}F>"

    @property
    def parent(self):
        return self

    def whole(self):
        return Subcomplex(self, self.vertices, self.edges, self.cells)

    def empty(self):
        return Subcomplex(self, (), (), ())

    def closure(self, vertices=(), edges=(), cells=()):
        """Smallest subcomplex containing the given pieces."""
        vs, es, cs = set(vertices), set(edges), set(cells)
        unknown = (es - set(self.edges)) | (cs - set(self.cells))
        if unknown:
            raise ShapeError(f"not part of the complex: {sorted(unknown, key=idkey)!r}")
        for c in cs:
            es.update(e for e, _ in self.cells[c].letters)
        for e in es:
            vs.update(self.edges[e])
        return Subcomplex(self, vs, es, cs)

    def induced(self, vertices):
        """Largest subcomplex on the given vertices."""
        vs = set(vertices)
        es = {e for e, (a, b) in self.edges.items() if a in vs and b in vs}
        cs = {c for c, w in self.cells.items() if all(e in es for e, _ in w.letters)}
        return Subcomplex(self, vs, es, cs)


class Subcomplex:
    """A subcomplex of ``parent``; members keep the parent's declaration order."""

    def __init__(self, parent, vertices, edges, cells):
        self.parent = parent
        vs, es, cs = set(vertices), set(edges), set(cells)
        self.vertices = tuple(v for v in parent.vertices if v in vs)
        self.edges = {e: parent.edges[e] for e in parent.edges if e in es}
        self.cells = {c: parent.cells[c] for c in parent.cells if c in cs}
        unknown = (vs - set(parent.vertices)) | (es - set(parent.edges)) | (cs - set(parent.cells))
        if unknown:
            raise ShapeError(f"not part of the parent complex: {sorted(unknown, key=idkey)!r}")
        bad = self.check()
        if bad:
            raise ShapeError("; ".join(bad))

    def check(self):
        bad = []
        vs = set(self.vertices)
        for e, (a, b) in self.edges.items():
            if a not in vs or b not in vs:
                bad.append(f"edge {e!r} lacks an endpoint")
        for c, w in self.cells.items():
            if any(e not in self.edges for e, _ in w.letters):
                bad.append(f"cell {c!r} lacks a boundary edge")
        return bad

    def key(self):
        return (frozenset(self.vertices), frozenset(self.edges), frozenset(self.cells))

    def __eq__(self, other):
        return isinstance(other, Subcomplex) and self.parent is other.parent and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def __repr__(self):
        return f"<Subcomplex {len(self.vertices)}V {len(self.edges)}E {len(self.cells)}F>"

    def is_empty(self):
        return not self.vertices

    def contains(self, other):
        return (set(other.vertices) <= set(self.vertices) and set(other.edges) <= set(self.edges)
                and set(other.cells) <= set(self.cells))

    def as_complex(self):
        return Complex2(self.vertices, self.edges, {c: w.letters for c, w in self.cells.items()})


def _same_parent(a, b):
    if a.parent is not b.parent:
        raise ShapeError("subcomplexes of different complexes")


def intersect(a, b):
    _same_parent(a, b)
    return Subcomplex(a.parent, set(a.vertices) & set(b.vertices), set(a.edges) & set(b.edges),
                      set(a.cells) & set(b.cells))


def union(a, b):
    _same_parent(a, b)
    return Subcomplex(a.parent, set(a.vertices) | set(b.vertices), set(a.edges) | set(b.edges),
                      set(a.cells) | set(b.cells))


@dataclass(frozen=True)
class Pi0:
    components: tuple     # component names (least vertex), sorted
    of: dict              # vertex -> component name

    def __len__(self):
        return len(self.components)


def pi0(c):
    uf = UnionFind(c.vertices)
    for a, b in c.edges.values():
        uf.union(a, b)
    classes = uf.classes()
    of = {v: cls[0] for cls in classes for v in cls}
    return Pi0(tuple(cls[0] for cls in classes), of)


def pi1(c):
    """Edge-path groupoid: vertices, edges as generators, cells as relations."""
    rels = [(w, Word.empty(w.source)) for w in c.cells.values()]
    return PresentedGroupoid(c.vertices, c.edges, rels, name="pi1")


def covers(space, cover):
    """True when the members' union is all of ``space``."""
    whole = space if isinstance(space, Subcomplex) else space.whole()
    got = space.parent.empty()
    for u in cover:
        got = union(got, u)
    return got.key() == whole.key()


@dataclass
class CoverNerve:
    """Nonempty intersections ``U_S`` (``|S| <= depth``) ordered by reverse inclusion.

    Poset elements are sorted index tuples, so ``(0, 1) <= (0,)``.  The
    diagram is covariant: ``pi1(U_S) -> pi1(U_T)`` for ``S <= T``.
    """

    space: object
    cover: tuple
    depth: int
    pieces: dict          # index tuple -> Subcomplex
    poset: FinitePoset
    diagram: GroupoidDiagram

    def truncate(self, depth):
        return build_nerve(self.cover, depth=depth, space=self.space)

    def hom_diagram(self, target):
        """Contravariant diagram ``U_S -> hom(pi1(U_S), target)`` with restriction maps."""
        homs = {S: LazyFunctorGroupoid(self.diagram.values[S], target, name=f"hom{S}")
                for S in self.poset.elements}
        trans = {}
        for S, T in self.poset.strict_pairs():
            inc = self.diagram.psi(S, T)
            trans[(S, T)] = restriction(homs[T], inc, homs[S])
        return GroupoidDiagram(self.poset, homs, trans, CONTRAVARIANT)


def build_nerve(cover, depth=3, space=None):
    cover = tuple(cover)
    if space is None:
        if not cover:
            raise CoverError("an empty cover needs an explicit space")
        space = cover[0].parent
    for u in cover:
        if u.parent is not space.parent:
            raise CoverError("cover members belong to another complex")
    if not covers(space, list(cover)):
        raise CoverError("members do not cover the space")
    pieces = {}
    for size in range(1, depth + 1):
        for S in combinations(range(len(cover)), size):
            u = cover[S[0]]
            for k in S[1:]:
                u = intersect(u, cover[k])
            if not u.is_empty():
                pieces[S] = u
    elements = list(pieces)
    leq = {(S, T) for S in elements for T in elements if set(T) <= set(S)}
    poset = FinitePoset(elements, leq)
    values = {S: pi1(u) for S, u in pieces.items()}
    trans = {(S, T): inclusion_functor(values[S], values[T]) for S, T in poset.strict_pairs()}
    return CoverNerve(space, cover, depth, pieces, poset, GroupoidDiagram(poset, values, trans, COVARIANT))


STRICT = "strict"
COMPONENTWISE = "componentwise"


def is_simply_connected_pres(p, reading=COMPONENTWISE, budget=DEFAULT_BUDGET):
    """Every component has trivial vertex group (and, strictly, there is one component)."""
    groups = vertex_groups(p, budget)
    if reading == STRICT and len(groups) != 1:
        return False
    return all(vg.order == 1 for vg in groups)


def is_good_cover(nerve, reading=COMPONENTWISE, budget=DEFAULT_BUDGET):
    if reading not in (STRICT, COMPONENTWISE):
        raise ValueError(f"unknown reading {reading!r}")
    return all(is_simply_connected_pres(p, reading, budget) for p in nerve.diagram.values.values())


def edge_cover(c, groups):
    """Cover by closures of the given edge/cell groups (each a list of edge or cell ids)."""
    out = []
    for group in groups:
        es = [x for x in group if x in c.edges]
        cs = [x for x in group if x in c.cells]
        vs = [x for x in group if x in c.vertices and x not in c.edges and x not in c.cells]
        out.append(c.closure(vs, es, cs))
    return out
