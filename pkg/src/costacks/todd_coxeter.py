"""Bounded coset enumeration over the trivial subgroup (HLT strategy).

A successful run produces the regular action of a finite group on
itself, which is all the concretization step needs.  The table grows
one coset at a time; once ``cosets * columns`` would exceed the cell
budget the run is abandoned.
"""

from .errors import ResourceLimitError


class CosetTable:
    def __init__(self, ngens, relators, max_cells):
        self.ncols = 2 * ngens
        # column 2k is generator k, column 2k+1 its inverse
        self.rels = [[2 * g + (0 if s > 0 else 1) for g, s in r] for r in relators]
        self.max_cells = max_cells
        self.table = [[None] * self.ncols]
        self.parent = [0]

    @staticmethod
    def inv(x):
        return x ^ 1

    def alive(self, c):
        return self.parent[c] == c

    def rep(self, c):
        root = c
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[c] != root:
            self.parent[c], c = root, self.parent[c]
        return root

    def define(self, c, x):
        if (len(self.table) + 1) * max(self.ncols, 1) > self.max_cells:
            raise ResourceLimitError("coset enumeration budget exhausted")
        d = len(self.table)
        self.table.append([None] * self.ncols)
        self.parent.append(d)
        self.table[c][x] = d
        self.table[d][self.inv(x)] = c
        return d

    def _merge(self, k, l, queue):
        k, l = self.rep(k), self.rep(l)
        if k == l:
            return
        if k > l:
            k, l = l, k
        self.parent[l] = k
        queue.append(l)

    def coincidence(self, a, b):
        queue = []
        self._merge(a, b, queue)
        i = 0
        while i < len(queue):
            e = queue[i]
            i += 1
            for x in range(self.ncols):
                f = self.table[e][x]
                if f is None:
                    continue
                xi = self.inv(x)
                if self.table[f][xi] == e:
                    self.table[f][xi] = None
                e1, f1 = self.rep(e), self.rep(f)
                if self.table[e1][x] is not None:
                    self._merge(f1, self.table[e1][x], queue)
                elif self.table[f1][xi] is not None:
                    self._merge(e1, self.table[f1][xi], queue)
                else:
                    self.table[e1][x] = f1
                    self.table[f1][xi] = e1

    def scan_and_fill(self, c, word):
        t = self.table
        f, b = c, c
        i, j = 0, len(word) - 1
        while True:
            while i <= j and t[f][word[i]] is not None:
                f = t[f][word[i]]
                i += 1
            if i > j:
                if f != b:
                    self.coincidence(f, b)
                return
            while j >= i and t[b][self.inv(word[j])] is not None:
                b = t[b][self.inv(word[j])]
                j -= 1
            if j < i:
                self.coincidence(f, b)
                return
            if i == j:
                t[f][word[i]] = b
                t[b][self.inv(word[i])] = f
                return
            self.define(f, word[i])

    def run(self):
        c = 0
        while c < len(self.table):
            if self.alive(c):
                for r in self.rels:
                    if not self.alive(c):
                        break
                    if r:
                        self.scan_and_fill(c, r)
                if self.alive(c):
                    for x in range(self.ncols):
                        if self.table[c][x] is None:
                            self.define(c, x)
            c += 1
        return self.compact()

    def compact(self):
        live = [c for c in range(len(self.table)) if self.alive(c)]
        index = {c: k for k, c in enumerate(live)}
        return [[index[self.rep(self.table[c][x])] for x in range(self.ncols)] for c in live]


def enumerate_group(ngens, relators, max_cells):
    """Regular coset table of ``<ngens | relators>``, or None over budget.

    Relators are sequences of ``(generator_index, +1/-1)``.  Row ``c``
    of the result lists the coset reached from ``c`` by each column
    (generator, then its inverse, alternating).
    """
    if ngens == 0:
        return [[]]
    try:
        return CosetTable(ngens, relators, max_cells).run()
    except ResourceLimitError:
        return None
