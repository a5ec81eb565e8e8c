"""Small standard complexes and covers used by tests, the CLI and the demos."""

import random

from .space import Complex2


def cycle(n):
    """``n`` vertices on a circle, edges ``e{k}: k -> k+1 (mod n)``."""
    return Complex2(range(n), {f"e{k}": (k, (k + 1) % n) for k in range(n)}, name=f"cycle{n}")


def disk(n=3):
    """An ``n``-cycle with one cell glued along it."""
    c = cycle(n)
    return Complex2(c.vertices, c.edges, {"D": [(f"e{k}", 1) for k in range(n)]}, name=f"disk{n}")


def tetrahedron_boundary():
    vs = range(4)
    edges = {f"{a}{b}": (a, b) for a in vs for b in vs if a < b}

    def side(a, b):
        return (f"{a}{b}", 1) if a < b else (f"{b}{a}", -1)

    faces = {}
    for tri in [(0, 1, 2), (0, 1, 3), (0, 2, 3), (1, 2, 3)]:
        a, b, c = tri
        faces["f" + "".join(map(str, tri))] = [side(a, b), side(b, c), side(c, a)]
    return Complex2(vs, edges, faces, name="tetrahedron")


def torus(m=3, n=3):
    """Square-grid torus with ``m * n`` vertices ``"i,j"``, edges ``h``/``v``, cells ``s``."""
    def v(i, j):
        return f"{i % m},{j % n}"

    vs = [v(i, j) for i in range(m) for j in range(n)]
    edges, cells = {}, {}
    for i in range(m):
        for j in range(n):
            edges[f"h{i},{j}"] = (v(i, j), v(i, j + 1))
            edges[f"v{i},{j}"] = (v(i, j), v(i + 1, j))
    for i in range(m):
        for j in range(n):
            cells[f"s{i},{j}"] = [(f"h{i},{j}", 1), (f"v{i},{(j + 1) % n}", 1),
                                  (f"h{(i + 1) % m},{j}", -1), (f"v{i},{j}", -1)]
    return Complex2(vs, edges, cells, name=f"torus{m}x{n}")


def torus_one_vertex():
    return Complex2(["v"], {"a": ("v", "v"), "b": ("v", "v")},
                    {"T": [("a", 1), ("b", 1), ("a", -1), ("b", -1)]}, name="torus1")


def wedge(p=3, q=3):
    """Two cycles of lengths ``p`` and ``q`` sharing vertex 0."""
    edges = {}
    loop1 = [0] + [f"a{k}" for k in range(1, p)]
    loop2 = [0] + [f"b{k}" for k in range(1, q)]
    for name, loop in (("a", loop1), ("b", loop2)):
        for k in range(len(loop)):
            edges[f"{name}e{k}"] = (loop[k], loop[(k + 1) % len(loop)])
    vs = [0] + loop1[1:] + loop2[1:]
    return Complex2(vs, edges, name=f"wedge{p},{q}")


def theta():
    """Two vertices joined by three edges of length two."""
    vs = ["N", "S", "x", "y", "z"]
    edges = {}
    for mid in ("x", "y", "z"):
        edges[f"N{mid}"] = ("N", mid)
        edges[f"{mid}S"] = (mid, "S")
    return Complex2(vs, edges, name="theta")


def annulus(n=3):
    """Two concentric ``n``-cycles joined by rungs, with square cells between them."""
    vs = [f"o{k}" for k in range(n)] + [f"i{k}" for k in range(n)]
    edges, cells = {}, {}
    for k in range(n):
        edges[f"o{k}"] = (f"o{k}", f"o{(k + 1) % n}")
        edges[f"i{k}"] = (f"i{k}", f"i{(k + 1) % n}")
        edges[f"r{k}"] = (f"o{k}", f"i{k}")
    for k in range(n):
        cells[f"q{k}"] = [(f"o{k}", 1), (f"r{(k + 1) % n}", 1), (f"i{k}", -1), (f"r{k}", -1)]
    return Complex2(vs, edges, cells, name=f"annulus{n}")


def projective_plane():
    """Two vertices, two edges, one cell wrapping the loop ``ab`` twice."""
    return Complex2(["p", "q"], {"a": ("p", "q"), "b": ("q", "p")},
                    {"P": [("a", 1), ("b", 1), ("a", 1), ("b", 1)]}, name="rp2")


def two_triangles():
    """Two disjoint 3-cycles."""
    vs = range(6)
    edges = {f"e{k}": (k, 3 * (k // 3) + (k + 1) % 3) for k in vs}
    return Complex2(vs, edges, name="two_triangles")


def arcs(c, pieces):
    """Cover of a cycle by arcs given as ``(first_edge, length)`` pairs."""
    n = len(c.edges)
    return [c.closure(edges=[f"e{(s + k) % n}" for k in range(length)]) for s, length in pieces]


def two_arc_cover(n, split=None):
    """Two arcs of ``cycle(n)`` meeting at two vertices."""
    c = cycle(n)
    split = split or n // 2
    return c, arcs(c, [(0, split), (split, n - split)])


def three_arc_cover(n=9):
    c = cycle(n)
    k = n // 3
    return c, arcs(c, [(0, k), (k, k), (2 * k, n - 2 * k)])


def random_cover(c, members=2, rng=None, overlap=0.3):
    """Random cover: every edge, cell and isolated vertex goes to one member, then
    each item is copied to further members with probability ``overlap``."""
    rng = rng or random.Random(0)
    items = [("e", e) for e in c.edges] + [("c", x) for x in c.cells]
    used = {v for ab in c.edges.values() for v in ab}
    items += [("v", v) for v in c.vertices if v not in used]
    groups = [[] for _ in range(members)]
    for item in items:
        k = rng.randrange(members)
        groups[k].append(item)
        for j in range(members):
            if j != k and rng.random() < overlap:
                groups[j].append(item)
    out = []
    for g in groups:
        out.append(c.closure(vertices=[x for t, x in g if t == "v"], edges=[x for t, x in g if t == "e"],
                             cells=[x for t, x in g if t == "c"]))
    return out


CATALOG = {
    **{f"cycle{n}": (lambda n=n: cycle(n)) for n in range(3, 10)},
    **{f"disk{n}": (lambda n=n: disk(n)) for n in range(3, 7)},
    "tetrahedron": tetrahedron_boundary,
    "torus3x3": lambda: torus(3, 3),
    "torus3x4": lambda: torus(3, 4),
    "torus1": torus_one_vertex,
    "wedge3,3": lambda: wedge(3, 3),
    "wedge3,4": lambda: wedge(3, 4),
    "wedge4,5": lambda: wedge(4, 5),
    "theta": theta,
    "annulus3": lambda: annulus(3),
    "rp2": projective_plane,
    "two_triangles": two_triangles,
}
