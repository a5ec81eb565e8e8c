"""Tietze simplification of group presentations and a presentation-isomorphism test.

Only sound moves are used: eliminating a generator that occurs exactly
once in some relator, dropping trivial and duplicate relators.  Two
simplified presentations that agree up to renaming/inverting generators
and rotating/inverting relators present isomorphic groups; nothing is
concluded when they do not.
"""

from itertools import permutations, product

from ._util import UnionFind, idkey
from .presentation import VertexGroupPresentation, _cyclic_reduce, _reduce_letters


def _invert(letters):
    return tuple((g, -s) for g, s in reversed(letters))


def _substitute(letters, gen, value):
    out = []
    for g, s in letters:
        if g == gen:
            out.extend(value if s > 0 else _invert(value))
        else:
            out.append((g, s))
    return _reduce_letters(out)


def _relator_form(r):
    """Representative of a relator up to cyclic rotation and inversion."""
    best = None
    for w in (r, _invert(r)):
        for k in range(max(len(w), 1)):
            rot = w[k:] + w[:k]
            key = tuple((idkey(g), s) for g, s in rot)
            if best is None or key < best[0]:
                best = (key, rot)
    return best[1] if best else ()


def _tidy(relators):
    seen, out = set(), []
    for r in relators:
        r = _cyclic_reduce(r)
        if not r:
            continue
        form = _relator_form(r)
        if form in seen:
            continue
        seen.add(form)
        out.append(r)
    return out


def simplify(v):
    """Simplify ``v``; return ``(presentation, substitution)``.

    ``substitution`` maps each eliminated generator to a letter sequence
    over the surviving generators expressing it.
    """
    # work on integer names: relator normal forms compare generator keys constantly
    name = list(v.generators)
    index = {g: k for k, g in enumerate(name)}
    small, subst = _simplify(VertexGroupPresentation(
        tuple(range(len(name))), tuple(tuple((index[g], s) for g, s in r) for r in v.relators)))

    def back(letters):
        return tuple((name[g], s) for g, s in letters)

    return (VertexGroupPresentation(tuple(name[g] for g in small.generators), tuple(map(back, small.relators))),
            {name[g]: back(w) for g, w in subst.items()})


def _simplify(v):
    gens = list(v.generators)
    rels = _tidy(v.relators)
    subst = {}
    while True:
        choice = None
        for r in sorted(rels, key=len):
            counts = {}
            for g, _ in r:
                counts[g] = counts.get(g, 0) + 1
            once = [g for g in gens if counts.get(g) == 1]
            if once:
                choice = (r, once[-1])
                break
        if choice is None:
            break
        r, x = choice
        k = next(i for i, (g, _) in enumerate(r) if g == x)
        rot = r[k:] + r[:k]
        sign, rest = rot[0][1], rot[1:]
        # x^sign . rest = 1
        value = _invert(rest) if sign > 0 else rest
        rels = _tidy(_substitute(q, x, value) for q in rels if q is not r)
        for g in list(subst):
            subst[g] = _substitute(subst[g], x, value)
        subst[x] = value
        gens.remove(x)
    return VertexGroupPresentation(tuple(gens), tuple(rels)), subst


def free_factors(v):
    """Split ``v`` into free factors: blocks of generators linked by shared relators.

    The group is the free product of the blocks' groups; a generator in
    no relator is a factor of its own (infinite cyclic).
    """
    uf = UnionFind(v.generators)
    for r in v.relators:
        for (a, _), (b, _) in zip(r, r[1:]):
            uf.union(a, b)
    blocks = {}
    for g in v.generators:
        blocks.setdefault(uf.find(g), []).append(g)
    out = []
    for gens in blocks.values():
        keep = set(gens)
        rels = tuple(r for r in v.relators if r and r[0][0] in keep)
        out.append(VertexGroupPresentation(tuple(gens), rels))
    return out


def is_free(v):
    """Rank of the free group presented, when simplification proves freeness."""
    small, _ = simplify(v)
    return len(small.generators) if not small.relators else None


def _canonical(gens, rels, order, signs):
    ren = {g: (k, sg) for k, (g, sg) in enumerate(zip(order, signs))}
    forms = []
    for r in rels:
        w = tuple((ren[g][0], s * ren[g][1]) for g, s in r)
        forms.append(_relator_form(w))
    return sorted(forms)


def presentations_isomorphic(a, b, max_gens=5):
    """True when the simplified presentations match up to symmetry, else None.

    Never returns False: failure to match says nothing about the groups.
    """
    sa, _ = simplify(a)
    sb, _ = simplify(b)
    if len(sa.generators) != len(sb.generators) or len(sa.relators) != len(sb.relators):
        return None
    if sorted(map(len, sa.relators)) != sorted(map(len, sb.relators)):
        return None
    n = len(sa.generators)
    if n > max_gens:
        return None
    target = _canonical(sb.generators, sb.relators, sb.generators, [1] * n)
    for order in permutations(sa.generators):
        for signs in product((1, -1), repeat=n):
            if _canonical(sa.generators, sa.relators, order, signs) == target:
                return True
    return None
