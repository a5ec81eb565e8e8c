"""Finite posets given by an explicit order relation."""

from ._util import idkey


class FinitePoset:
    """Elements plus the set of pairs ``(i, j)`` with ``i <= j``.

    The relation is stored as given; ``check()`` reports axiom failures.
    Use ``from_covers`` to build one from covering pairs.
    """

    def __init__(self, elements, leq):
        self.elements = tuple(elements)
        self._leq = frozenset(leq)
        self._pos = {x: k for k, x in enumerate(self.elements)}

    @classmethod
    def from_covers(cls, elements, covers=()):
        elements = list(elements)
        up = {x: {x} for x in elements}
        for i, j in covers:
            up[i].add(j)
        changed = True
        while changed:
            changed = False
            for i in elements:
                new = set().union(*(up[j] for j in up[i]))
                if new != up[i]:
                    up[i] = new
                    changed = True
        return cls(elements, {(i, j) for i in elements for j in up[i]})

    @classmethod
    def discrete(cls, elements):
        return cls.from_covers(elements)

    def __repr__(self):
        return f"<FinitePoset {len(self.elements)} elements>"

    def __contains__(self, x):
        return x in self._pos

    def leq(self, i, j):
        return (i, j) in self._leq

    def lt(self, i, j):
        return i != j and (i, j) in self._leq

    def check(self):
        bad = []
        for i in self.elements:
            if not self.leq(i, i):
                bad.append(f"not reflexive at {i!r}")
        for i, j in self._leq:
            if i not in self._pos or j not in self._pos:
                bad.append(f"relation mentions unknown element in ({i!r}, {j!r})")
            elif i != j and (j, i) in self._leq:
                bad.append(f"not antisymmetric on {i!r}, {j!r}")
        for i, j in self._leq:
            for k in self.elements:
                if self.leq(j, k) and not self.leq(i, k):
                    bad.append(f"not transitive on {i!r} <= {j!r} <= {k!r}")
        return sorted(set(bad))

    def strict_pairs(self):
        """All ``(i, j)`` with ``i < j``, in element order."""
        return [(i, j) for i in self.elements for j in self.elements if self.lt(i, j)]

    def chains(self):
        """All strict chains ``i < j < k``."""
        return [(i, j, k) for i, j in self.strict_pairs() for k in self.elements if self.lt(j, k)]

    def covers(self):
        return [(i, j) for i, j in self.strict_pairs()
                if not any(self.lt(i, k) and self.lt(k, j) for k in self.elements)]

    def uppers(self, i):
        return [j for j in self.elements if self.lt(i, j)]

    def lowers(self, j):
        return [i for i in self.elements if self.lt(i, j)]

    def maximal(self):
        return [i for i in self.elements if not self.uppers(i)]

    def descending(self):
        """Linear extension listing every element after all elements above it."""
        return sorted(self.elements, key=lambda x: (len(self.uppers(x)), self._pos[x]))

    def eager_descending(self):
        """Like ``descending``, but each element comes as soon as everything
        above it is placed, so constraints between maxima surface early."""
        order, placed = [], set()
        for m in self.descending():
            if m in placed:
                continue
            order.append(m)
            placed.add(m)
            grew = True
            while grew:
                grew = False
                for x in self.descending():
                    if x not in placed and all(u in placed for u in self.uppers(x)):
                        order.append(x)
                        placed.add(x)
                        grew = True
        return order

    def is_filtered(self):
        els = self.elements
        if not els:
            return False
        return all(any(self.leq(i, k) and self.leq(j, k) for k in els) for i in els for j in els)

    def upper_bounds(self, i, j):
        return [k for k in self.elements if self.leq(i, k) and self.leq(j, k)]

    def restrict(self, elements):
        keep = [x for x in self.elements if x in set(elements)]
        return FinitePoset(keep, {(i, j) for i, j in self._leq if i in keep and j in keep})

    def sort_key(self, x):
        return (self._pos.get(x, len(self._pos)), idkey(x))
