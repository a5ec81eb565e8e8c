"""Small shared helpers: identifier ordering, labels, union-find."""


def idkey(x):
    """Total order on the identifiers used throughout the package.

    Strings sort lexicographically, integers numerically, tuples
    elementwise; mixed kinds are separated by a type rank so sorting
    never raises.
    """
    if isinstance(x, bool):
        return (0, int(x), "")
    if isinstance(x, int):
        return (0, x, "")
    if isinstance(x, str):
        return (1, 0, x)
    if isinstance(x, (tuple, list, frozenset)):
        items = sorted(x, key=idkey) if isinstance(x, frozenset) else x
        return (2, 0, tuple(idkey(y) for y in items))
    if x is None:
        return (-1, 0, "")
    return (3, 0, repr(x))


def ordered(items):
    return sorted(items, key=idkey)


def label(x):
    """Render an identifier as a string suitable for JSON output."""
    if isinstance(x, str):
        return x
    if isinstance(x, (tuple, list)):
        return "(" + ",".join(label(y) for y in x) + ")"
    if isinstance(x, frozenset):
        return "{" + ",".join(label(y) for y in ordered(x)) + "}"
    return str(x)


class UnionFind:
    """Union-find over arbitrary hashable items, created on first touch."""

    def __init__(self, items=()):
        self.parent = {}
        for x in items:
            self.parent[x] = x

    def add(self, x):
        if x not in self.parent:
            self.parent[x] = x

    def find(self, x):
        self.add(x)
        root = x
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[x] != root:
            self.parent[x], x = root, self.parent[x]
        return root

    def union(self, a, b):
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return False
        # keep the smaller identifier as root so class names are stable
        if idkey(rb) < idkey(ra):
            ra, rb = rb, ra
        self.parent[rb] = ra
        return True

    def classes(self):
        """Classes as lists, each sorted, ordered by their least member."""
        groups = {}
        for x in self.parent:
            groups.setdefault(self.find(x), []).append(x)
        out = [ordered(g) for g in groups.values()]
        return sorted(out, key=lambda g: idkey(g[0]))
