"""JSON formats for groupoids, presentations, diagrams, complexes and covers.

Every document carries ``"schema": SCHEMA`` and a ``"kind"``.  Identifiers
are strings; composition is diagrammatic, so a table row ``[f, g, h]``
says "f then g is h".

groupoid
    ``objects``: list of ids; ``morphisms``: ``[{id, src, tgt}]``;
    ``table``: list of ``[f, g, f-then-g]`` over all composable pairs;
    optional ``identities``: ``{object: morphism}`` (found from the table
    when absent).  Alternatively ``"table": "generate-from-group"`` with
    ``group: {elements, cayley}`` where ``cayley[i][j]`` is
    ``elements[i]`` then ``elements[j]``; the single object is
    ``objects[0]`` or ``"*"``.
presentation
    ``vertices``; ``edges: [{id, src, tgt}]``; ``relations``: pairs of
    letter lists such as ``[["a+", "b-"], []]``.  A relation between two
    empty words names its vertex as a third entry.
functor (inside diagrams and squares)
    concrete: ``{objects: {x: y}, morphisms: {f: g}}``; presented:
    ``{vertices: {v: w}, edges: {e: [letters]}}``.
diagram
    ``poset: {elements, covers: [[i, j], ...]}`` (closure computed),
    ``variance``, ``values: {element: groupoid | presentation | {"ref": path}}``,
    ``transitions: [{pair: [i, j], ...functor}]`` for at least the covers.
complex
    ``vertices``, ``edges: [{id, src, tgt}]``, ``cells: [{id, boundary: [letters]}]``.
cover
    ``members``: each a list of vertex, edge or cell ids (closure taken) or
    ``{vertices, edges, cells}``.
square
    ``groupoids: {A, B, C, D}``, ``functors: {i1, i2, j1, j2}``,
    ``lambda: {object of A: morphism of D}``.
"""

import json
from pathlib import Path

from ._util import label, ordered
from .core import ConcreteFunctor, ConcreteGroupoid, NatIso
from .diagrams import CONTRAVARIANT, COVARIANT, GroupoidDiagram
from .errors import GroupoidError, ResourceLimitError, SchemaError
from .poset import FinitePoset
from .presentation import PresFunctor, PresentedGroupoid, Word
from .space import Complex2

SCHEMA = "costacks/1"


# reading helpers

def load(path):
    """Parse a JSON file; syntax errors become SchemaError with a line and column."""
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as exc:
        raise SchemaError(f"cannot read file: {exc.strerror}", str(path)) from None
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise SchemaError(exc.msg, f"{path}:{exc.lineno}:{exc.colno}") from None


def _need(data, key, where, kind=None):
    if not isinstance(data, dict):
        raise SchemaError("expected an object", where)
    if key not in data:
        raise SchemaError(f"missing field {key!r}", where)
    value = data[key]
    if kind is not None and not isinstance(value, kind):
        names = kind.__name__ if isinstance(kind, type) else "/".join(k.__name__ for k in kind)
        raise SchemaError(f"field {key!r} must be of type {names}", f"{where}.{key}")
    return value


def _ids(items, where):
    if not isinstance(items, list):
        raise SchemaError("expected a list of string ids", where)
    for k, x in enumerate(items):
        if not isinstance(x, str):
            raise SchemaError("identifiers must be strings", f"{where}[{k}]")
    if len(set(items)) != len(items):
        raise SchemaError("duplicate identifiers", where)
    return list(items)


def _check_kind(data, kind, where):
    if not isinstance(data, dict):
        raise SchemaError("expected an object", where)
    got = data.get("kind", kind)
    if got != kind:
        raise SchemaError(f"expected kind {kind!r}, found {got!r}", where)


def _arrows(items, nodes, where):
    """``[{id, src, tgt}]`` -> dict id -> (src, tgt)."""
    if not isinstance(items, list):
        raise SchemaError("expected a list of {id, src, tgt} records", where)
    out = {}
    for k, rec in enumerate(items):
        at = f"{where}[{k}]"
        ident = _need(rec, "id", at, str)
        a, b = _need(rec, "src", at, str), _need(rec, "tgt", at, str)
        for end, name in ((a, "src"), (b, "tgt")):
            if end not in nodes:
                raise SchemaError(f"unknown endpoint {end!r}", f"{at}.{name}")
        if ident in out:
            raise SchemaError(f"duplicate id {ident!r}", at)
        out[ident] = (a, b)
    return out


def parse_letter(text, where):
    if not isinstance(text, str) or len(text) < 2 or text[-1] not in "+-":
        raise SchemaError(f"letter {text!r} must be an edge id followed by + or -", where)
    return text[:-1], 1 if text[-1] == "+" else -1


def _word(graph, letters, where, base=None):
    if not isinstance(letters, list):
        raise SchemaError("expected a list of letters", where)
    parsed = [parse_letter(t, f"{where}[{k}]") for k, t in enumerate(letters)]
    for k, (e, _) in enumerate(parsed):
        if e not in graph.edges:
            raise SchemaError(f"unknown edge {e!r}", f"{where}[{k}]")
    if not parsed:
        if base is None:
            raise SchemaError("cannot place an empty word", where)
        return Word.empty(base)
    start = graph.letter_ends(*parsed[0])[0]
    try:
        return graph.word(start, parsed)
    except GroupoidError as exc:
        raise SchemaError(str(exc), where) from None


# writing helpers

def _labels(items, what):
    out = {x: label(x) for x in items}
    if len(set(out.values())) != len(out):
        raise SchemaError(f"two {what} render to the same label")
    return out


def _doc(kind, **fields):
    return {"schema": SCHEMA, "kind": kind, **fields}


# groupoids

def groupoid_to_json(g, cap=None):
    """Concrete groupoid as a document; ``cap`` bounds the table length."""
    ol = _labels(g.objects, "objects")
    ml = _labels(g.morphisms, "morphisms")
    cells = sum(len(g.out(g.tgt(f))) for f in g.morphisms)
    if cap is not None and cells > cap:
        raise ResourceLimitError(f"composition table has {cells} entries, more than {cap}")
    mors = sorted(g.morphisms, key=lambda f: ml[f])
    table = []
    for f in mors:
        for h in sorted(g.out(g.tgt(f)), key=lambda h: ml[h]):
            table.append([ml[f], ml[h], ml[g.compose(f, h)]])
    return _doc(
        "groupoid",
        name=g.name,
        objects=sorted(ol.values()),
        morphisms=[{"id": ml[f], "src": ol[g.src(f)], "tgt": ol[g.tgt(f)]} for f in mors],
        identities={ol[x]: ml[g.identity(x)] for x in sorted(g.objects, key=lambda x: ol[x])},
        table=table,
    )


def groupoid_from_json(data, where="$"):
    _check_kind(data, "groupoid", where)
    table = _need(data, "table", where)
    if table == "generate-from-group":
        return _from_group(data, where)
    objects = _ids(_need(data, "objects", where), f"{where}.objects")
    mors = _arrows(_need(data, "morphisms", where), set(objects), f"{where}.morphisms")
    if not isinstance(table, list):
        raise SchemaError('table must be a list of [f, g, h] rows or "generate-from-group"', f"{where}.table")
    entries = {}
    for k, row in enumerate(table):
        at = f"{where}.table[{k}]"
        if not (isinstance(row, list) and len(row) == 3 and all(isinstance(x, str) for x in row)):
            raise SchemaError("table rows are [f, g, f-then-g]", at)
        for x in row:
            if x not in mors:
                raise SchemaError(f"unknown morphism {x!r}", at)
        entries[(row[0], row[1])] = row[2]
    if "identities" in data:
        ident = _need(data, "identities", where, dict)
        for x, e in ident.items():
            if x not in objects or e not in mors:
                raise SchemaError(f"bad identity entry {x!r}: {e!r}", f"{where}.identities")
    else:
        ident = {}
        for x in objects:
            found = [e for e, ends in mors.items() if ends == (x, x)
                     and all(entries.get((e, f)) == f for f, (a, _) in mors.items() if a == x)]
            if not found:
                raise SchemaError(f"no identity found for object {x!r}", f"{where}.table")
            ident[x] = found[0]
    return ConcreteGroupoid.from_table(objects, mors, ident, entries, name=data.get("name"))


def _from_group(data, where):
    grp = _need(data, "group", where, dict)
    elems = _ids(_need(grp, "elements", f"{where}.group"), f"{where}.group.elements")
    cayley = _need(grp, "cayley", f"{where}.group", list)
    n = len(elems)
    if not elems or len(cayley) != n or any(not isinstance(r, list) or len(r) != n for r in cayley):
        raise SchemaError(f"cayley must be an {n}x{n} table", f"{where}.group.cayley")
    mul = {}
    for i, row in enumerate(cayley):
        for j, x in enumerate(row):
            if x not in elems:
                raise SchemaError(f"unknown element {x!r}", f"{where}.group.cayley[{i}][{j}]")
            mul[(elems[i], elems[j])] = x
    objects = data.get("objects", ["*"])
    if not (isinstance(objects, list) and len(objects) == 1 and isinstance(objects[0], str)):
        raise SchemaError("a group groupoid has exactly one string object", f"{where}.objects")
    units = [e for e in elems if all(mul[(e, x)] == x and mul[(x, e)] == x for x in elems)]
    if len(units) != 1:
        raise SchemaError("cayley table has no identity element", f"{where}.group.cayley")
    for a in elems:
        if not any(mul[(a, b)] == units[0] for b in elems):
            raise SchemaError(f"element {a!r} has no inverse", f"{where}.group.cayley")
    return ConcreteGroupoid.from_group(elems, mul, obj=objects[0], name=data.get("name"))


# presentations

def presentation_to_json(p):
    vl = _labels(p.vertices, "vertices")
    el = _labels(p.edges, "edges")

    def letters(w):
        return [f"{el[e]}{'+' if s > 0 else '-'}" for e, s in w.letters]

    rels = []
    for lhs, rhs in p.relations:
        rel = [letters(lhs), letters(rhs)]
        if lhs.is_empty() and rhs.is_empty():
            rel.append(vl[lhs.source])
        rels.append(rel)
    edges = sorted(p.edges, key=lambda e: el[e])
    return _doc(
        "presentation",
        name=p.name,
        vertices=sorted(vl.values()),
        edges=[{"id": el[e], "src": vl[p.edges[e][0]], "tgt": vl[p.edges[e][1]]} for e in edges],
        relations=sorted(rels, key=lambda r: json.dumps(r)),
    )


def presentation_from_json(data, where="$"):
    _check_kind(data, "presentation", where)
    vertices = _ids(_need(data, "vertices", where), f"{where}.vertices")
    edges = _arrows(_need(data, "edges", where), set(vertices), f"{where}.edges")
    graph = PresentedGroupoid(vertices, edges).graph
    rels = []
    for k, rel in enumerate(data.get("relations", [])):
        at = f"{where}.relations[{k}]"
        if not isinstance(rel, list) or len(rel) not in (2, 3):
            raise SchemaError("a relation is [lhs letters, rhs letters] (plus a vertex when both are empty)", at)
        base = rel[2] if len(rel) == 3 else None
        if base is not None and base not in vertices:
            raise SchemaError(f"unknown vertex {base!r}", f"{at}[2]")
        lhs_letters, rhs_letters = rel[0], rel[1]
        if base is None:
            first = lhs_letters or rhs_letters
            if first:
                probe = _word(graph, first, f"{at}[{0 if lhs_letters else 1}]")
                base = probe.source
        lhs = _word(graph, lhs_letters, f"{at}[0]", base)
        rhs = _word(graph, rhs_letters, f"{at}[1]", base)
        if not lhs.is_parallel(rhs):
            raise SchemaError("relation words are not parallel", at)
        rels.append((lhs, rhs))
    return PresentedGroupoid(vertices, edges, rels, name=data.get("name"))


def value_from_json(data, where="$", base_dir=None):
    """A groupoid or presentation document, or ``{"ref": path}`` to one."""
    if isinstance(data, dict) and "ref" in data:
        ref = Path(_need(data, "ref", where, str))
        if base_dir is not None and not ref.is_absolute():
            ref = Path(base_dir) / ref
        return value_from_json(load(ref), str(ref), ref.parent)
    if not isinstance(data, dict):
        raise SchemaError("expected a groupoid or presentation object", where)
    kind = data.get("kind")
    if kind == "groupoid":
        return groupoid_from_json(data, where)
    if kind == "presentation":
        return presentation_from_json(data, where)
    raise SchemaError(f"expected kind 'groupoid' or 'presentation', found {kind!r}", where)


def value_to_json(g, cap=None):
    if isinstance(g, PresentedGroupoid):
        return presentation_to_json(g)
    return groupoid_to_json(g, cap)


# functors

def functor_from_json(data, domain, codomain, where="$"):
    if isinstance(domain, PresentedGroupoid):
        vm = _need(data, "vertices", where, dict)
        em = _need(data, "edges", where, dict)
        for v in domain.vertices:
            if v not in vm:
                raise SchemaError(f"vertex {v!r} unmapped", f"{where}.vertices")
        for e in domain.edges:
            if e not in em:
                raise SchemaError(f"edge {e!r} unmapped", f"{where}.edges")
        if isinstance(codomain, PresentedGroupoid):
            edges = {e: _word(codomain.graph, em[e], f"{where}.edges.{e}", vm[domain.edges[e][0]])
                     for e in domain.edges}
        else:
            edges = {e: em[e] for e in domain.edges}
        f = PresFunctor(domain, codomain, {v: vm[v] for v in domain.vertices}, edges)
    else:
        om = _need(data, "objects", where, dict)
        mm = _need(data, "morphisms", where, dict)
        for x in domain.objects:
            if x not in om:
                raise SchemaError(f"object {x!r} unmapped", f"{where}.objects")
        for m in domain.morphisms:
            if m not in mm:
                raise SchemaError(f"morphism {m!r} unmapped", f"{where}.morphisms")
        f = ConcreteFunctor(domain, codomain, {x: om[x] for x in domain.objects},
                            {m: mm[m] for m in domain.morphisms})
    bad = f.check()
    if bad:
        raise SchemaError(f"not a functor: {bad[0]}", where)
    return f


def functor_to_json(f):
    if isinstance(f, PresFunctor):
        if f.concrete:
            return {"vertices": {label(v): label(f.vertex(v)) for v in ordered(f.domain.vertices)},
                    "edges": {label(e): label(f.edge_map[e]) for e in ordered(f.domain.edges)}}
        return {"vertices": {label(v): label(f.vertex(v)) for v in ordered(f.domain.vertices)},
                "edges": {label(e): [f"{label(x)}{'+' if s > 0 else '-'}" for x, s in f.edge_map[e].letters]
                          for e in ordered(f.domain.edges)}}
    return {"objects": {label(x): label(f.obj(x)) for x in ordered(f.domain.objects)},
            "morphisms": {label(m): label(f.mor(m)) for m in ordered(f.domain.morphisms)}}


# diagrams

def diagram_from_json(data, where="$", base_dir=None):
    _check_kind(data, "diagram", where)
    poset_doc = _need(data, "poset", where, dict)
    elements = _ids(_need(poset_doc, "elements", f"{where}.poset"), f"{where}.poset.elements")
    covers = []
    for k, pair in enumerate(poset_doc.get("covers", [])):
        at = f"{where}.poset.covers[{k}]"
        if not (isinstance(pair, list) and len(pair) == 2 and all(x in elements for x in pair)):
            raise SchemaError("a cover is a pair of poset elements", at)
        covers.append(tuple(pair))
    poset = FinitePoset.from_covers(elements, covers)
    bad = poset.check()
    if bad:
        raise SchemaError(bad[0], f"{where}.poset")
    variance = data.get("variance", COVARIANT)
    if variance not in (COVARIANT, CONTRAVARIANT):
        raise SchemaError(f"unknown variance {variance!r}", f"{where}.variance")
    values_doc = _need(data, "values", where, dict)
    values = {}
    for i in elements:
        if i not in values_doc:
            raise SchemaError(f"no value for element {i!r}", f"{where}.values")
        values[i] = value_from_json(values_doc[i], f"{where}.values.{i}", base_dir)
    trans = {}
    for k, rec in enumerate(data.get("transitions", [])):
        at = f"{where}.transitions[{k}]"
        pair = _need(rec, "pair", at, list)
        if len(pair) != 2 or not all(x in elements for x in pair) or not poset.lt(*pair):
            raise SchemaError("pair must be [i, j] with i strictly below j", f"{at}.pair")
        i, j = pair
        src, dst = (values[i], values[j]) if variance == COVARIANT else (values[j], values[i])
        trans[(i, j)] = functor_from_json(rec, src, dst, at)
    d = GroupoidDiagram(poset, values, trans, variance, name=data.get("name"))
    bad = d.check()
    if bad:
        raise SchemaError(bad[0], where)
    return d


# complexes and covers

def complex_to_json(c):
    vl = _labels(c.vertices, "vertices")
    el = _labels(c.edges, "edges")
    cl = _labels(c.cells, "cells")
    return _doc(
        "complex",
        name=c.name,
        vertices=sorted(vl.values()),
        edges=[{"id": el[e], "src": vl[c.edges[e][0]], "tgt": vl[c.edges[e][1]]}
               for e in sorted(c.edges, key=lambda e: el[e])],
        cells=[{"id": cl[x], "boundary": [f"{el[e]}{'+' if s > 0 else '-'}" for e, s in c.cells[x].letters]}
               for x in sorted(c.cells, key=lambda x: cl[x])],
    )


def complex_from_json(data, where="$"):
    _check_kind(data, "complex", where)
    vertices = _ids(_need(data, "vertices", where), f"{where}.vertices")
    edges = _arrows(_need(data, "edges", where), set(vertices), f"{where}.edges")
    graph = PresentedGroupoid(vertices, edges).graph
    cells = {}
    for k, rec in enumerate(data.get("cells", [])):
        at = f"{where}.cells[{k}]"
        ident = _need(rec, "id", at, str)
        w = _word(graph, _need(rec, "boundary", at, list), f"{at}.boundary")
        if w.source != w.target:
            raise SchemaError("cell boundary is not closed", f"{at}.boundary")
        if ident in cells:
            raise SchemaError(f"duplicate cell id {ident!r}", at)
        cells[ident] = w.letters
    return Complex2(vertices, edges, cells, name=data.get("name"))


def cover_from_json(data, c, where="$"):
    _check_kind(data, "cover", where)
    members = _need(data, "members", where, list)
    out = []
    for k, m in enumerate(members):
        at = f"{where}.members[{k}]"
        if isinstance(m, dict):
            vs = _ids(m.get("vertices", []), f"{at}.vertices")
            es = _ids(m.get("edges", []), f"{at}.edges")
            cs = _ids(m.get("cells", []), f"{at}.cells")
        else:
            vs, es, cs = [], [], []
            for n, x in enumerate(_ids(m, at)):
                kinds = [x in c.vertices, x in c.edges, x in c.cells]
                if sum(kinds) != 1:
                    raise SchemaError(f"{x!r} names {'no' if not any(kinds) else 'more than one'} element",
                                      f"{at}[{n}]")
                (vs if kinds[0] else es if kinds[1] else cs).append(x)
        for x, pool, name in [(x, c.vertices, "vertex") for x in vs] + [(x, c.edges, "edge") for x in es] \
                + [(x, c.cells, "cell") for x in cs]:
            if x not in pool:
                raise SchemaError(f"unknown {name} {x!r}", at)
        out.append(c.closure(vs, es, cs))
    return out


def cover_to_json(cover):
    return _doc("cover", members=[
        {"vertices": sorted(label(v) for v in u.vertices), "edges": sorted(label(e) for e in u.edges),
         "cells": sorted(label(x) for x in u.cells)} for u in cover])


# squares that commute up to a natural isomorphism

def square_from_json(data, where="$", base_dir=None):
    """Returns ``(i1, i2, j1, j2, lam)``."""
    _check_kind(data, "square", where)
    gdoc = _need(data, "groupoids", where, dict)
    gs = {}
    for name in "ABCD":
        g = value_from_json(_need(gdoc, name, f"{where}.groupoids"), f"{where}.groupoids.{name}", base_dir)
        if not isinstance(g, ConcreteGroupoid):
            raise SchemaError("square groupoids must be concrete", f"{where}.groupoids.{name}")
        gs[name] = g
    fdoc = _need(data, "functors", where, dict)
    shape = {"i1": "AB", "i2": "AC", "j1": "BD", "j2": "CD"}
    fs = {k: functor_from_json(_need(fdoc, k, f"{where}.functors"), gs[a], gs[b], f"{where}.functors.{k}")
          for k, (a, b) in shape.items()}
    left, right = fs["i1"].then(fs["j1"]), fs["i2"].then(fs["j2"])
    ldoc = _need(data, "lambda", where, dict)
    comps = {}
    for x in gs["A"].objects:
        if x not in ldoc:
            raise SchemaError(f"no component at {x!r}", f"{where}.lambda")
        if not gs["D"].has_morphism(ldoc[x]):
            raise SchemaError(f"unknown morphism {ldoc[x]!r}", f"{where}.lambda.{x}")
        comps[x] = ldoc[x]
    lam = NatIso(left, right, comps)
    bad = lam.check()
    if bad:
        raise SchemaError(f"lambda is not a natural isomorphism: {bad[0]}", f"{where}.lambda")
    return fs["i1"], fs["i2"], fs["j1"], fs["j2"], lam


def natiso_to_json(t):
    return {label(x): label(t[x]) for x in ordered(t.domain.objects)}


def dumps(doc):
    """Deterministic rendering used for every emitted document."""
    return json.dumps(doc, indent=2, sort_keys=True, ensure_ascii=False) + "\n"
