import json
from pathlib import Path

import pytest
from hypothesis import given, settings, strategies as st

from costacks.complexes import CATALOG, random_cover
from costacks.core import ConcreteGroupoid, validate
from costacks.equivalence import equivalence_fingerprint
from costacks.errors import SchemaError
from costacks.serialize import (
    complex_from_json, complex_to_json, cover_from_json, cover_to_json, diagram_from_json, dumps,
    groupoid_from_json, groupoid_to_json, load, presentation_from_json, presentation_to_json,
    square_from_json,
)
from costacks.space import pi1

from randgen import make_rng, random_pieces, random_presentation

DATA = Path(__file__).parent / "data"
seeds = st.integers(0, 10 ** 6)


def again(doc):
    # documents must survive a trip through text
    return json.loads(dumps(doc))


@settings(max_examples=40, deadline=None)
@given(seeds)
def test_groupoid_round_trip(seed):
    g = random_pieces(make_rng(seed)).groupoid
    doc = groupoid_to_json(g)
    h = groupoid_from_json(again(doc))
    assert len(h.objects) == len(g.objects) and len(h.morphisms) == len(g.morphisms)
    assert groupoid_to_json(h) == doc
    if len(h.morphisms) <= 60:
        assert validate(h).ok


@settings(max_examples=40, deadline=None)
@given(seeds)
def test_presentation_round_trip(seed):
    p = random_presentation(make_rng(seed))
    doc = presentation_to_json(p)
    q = presentation_from_json(again(doc))
    assert presentation_to_json(q) == doc
    assert equivalence_fingerprint(q) == equivalence_fingerprint(p)


@pytest.mark.parametrize("name", sorted(CATALOG))
def test_complex_and_cover_round_trip(name):
    c = CATALOG[name]()
    doc = complex_to_json(c)
    d = complex_from_json(again(doc))
    assert complex_to_json(d) == doc
    assert equivalence_fingerprint(pi1(d)) == equivalence_fingerprint(pi1(c))
    cover = random_cover(c, 2, make_rng(len(name)))
    back = cover_from_json(again(cover_to_json(cover)), d)
    assert [sorted(u.edges) for u in back] == [sorted(u.edges) for u in cover]
    assert [sorted(map(str, u.vertices)) for u in back] == [sorted(map(str, u.vertices)) for u in cover]


def test_cayley_table_input():
    g = groupoid_from_json(load(DATA / "z2.json"))
    assert len(g.objects) == 1 and len(g.morphisms) == 2
    assert validate(g).ok


def test_output_is_deterministic():
    g = ConcreteGroupoid.symmetric3()
    assert dumps(groupoid_to_json(g)) == dumps(groupoid_to_json(g))
    assert dumps({"b": 1, "a": 2}).index('"a"') < dumps({"b": 1, "a": 2}).index('"b"')


@pytest.mark.parametrize("fixture", ["span_circle.json", "span_collapse.json", "chain_z2.json",
                                     "chain_filtered.json"])
def test_diagram_fixtures_load(fixture):
    d = diagram_from_json(load(DATA / fixture), base_dir=DATA)
    assert not d.check()


def test_square_fixtures_load():
    for name in ("square.json", "square_twisted.json"):
        i1, i2, j1, j2, lam = square_from_json(load(DATA / name), base_dir=DATA)
        assert not lam.check()


def test_syntax_error_has_position():
    with pytest.raises(SchemaError) as exc:
        load(DATA / "broken.json")
    assert str(DATA / "broken.json") + ":" in str(exc.value)


def test_unknown_endpoint_is_located():
    with pytest.raises(SchemaError) as exc:
        groupoid_from_json(load(DATA / "bad_endpoint.json"))
    assert "$.morphisms[0].tgt" in str(exc.value)


@pytest.mark.parametrize("doc, fragment", [
    ({"kind": "presentation", "vertices": ["v"], "edges": [], "relations": [[[], []]]}, "relations[0]"),
    ({"kind": "presentation", "vertices": ["v"], "edges": [{"id": "a", "src": "v", "tgt": "v"}],
      "relations": [[["a*"], []]]}, "must be an edge id"),
    ({"kind": "groupoid", "objects": ["*"], "table": "generate-from-group",
      "group": {"elements": ["e", "s"], "cayley": [["e", "s"], ["s", "s"]]}}, "inverse"),
    ({"kind": "complex", "vertices": ["0"], "edges": []}, None),
    ({"kind": "groupoid", "objects": ["x", "x"], "morphisms": [], "table": []}, "duplicate"),
])
def test_schema_errors(doc, fragment):
    readers = {"presentation": presentation_from_json, "groupoid": groupoid_from_json,
               "complex": complex_from_json}
    if fragment is None:
        assert readers[doc["kind"]](doc).vertices == ("0",)
        return
    with pytest.raises(SchemaError) as exc:
        readers[doc["kind"]](doc)
    assert fragment in str(exc.value)
