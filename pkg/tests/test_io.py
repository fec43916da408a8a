import json

import pytest
from hypothesis import given, settings, strategies as st

from linkcomb.errors import BadParams, ParseError
from linkcomb.instances import fewbridges_instance, planted_instance
from linkcomb.io import dumps, load, parse, save, serialize


def test_round_trip_is_identity(tmp_path):
    inst = planted_instance(9, 6, 2, 1, 4)
    text = serialize(inst)
    assert serialize(parse(text)) == text
    path = tmp_path / "x.json"
    save(inst, str(path))
    assert path.read_bytes() == text.encode("utf-8")
    back = load(str(path))
    assert back.linkage == inst.linkage
    assert back.annulus.p == 9 and back.annulus.q == 6


def test_nested_sequence_survives():
    inst = fewbridges_instance(3, 6, [1], 0, 1)
    back = parse(serialize(inst))
    assert back.nested is not None
    assert [list(c) for c in back.nested.cycles] == [list(c) for c in inst.nested.cycles]


def test_stable_key_order():
    assert dumps({"b": 1, "a": [2]}) == '{"a":[2],"b":1}\n'


@pytest.mark.parametrize("mutate, field", [
    (lambda d: d.pop("vertices"), "vertices"),
    (lambda d: d.__setitem__("edges", [[0]]), "edges[0]"),
    (lambda d: d["rotation"].__setitem__("x", []), "rotation.x"),
    (lambda d: d.__setitem__("outer_face_edge", [0, 1]), "outer_face_edge"),
    (lambda d: d["params"].__setitem__("r", "one"), "params.r"),
    (lambda d: d["params"].__setitem__("I", [1, "2"]), "params.I"),
])
def test_malformed_fields_are_named(mutate, field):
    data = json.loads(serialize(planted_instance(5, 4, 1, 0, 0)))
    mutate(data)
    with pytest.raises(ParseError) as info:
        parse(json.dumps(data))
    assert info.value.field == field


def test_syntax_error_reports_line():
    with pytest.raises(ParseError) as info:
        parse('{\n"vertices": [1,\n')
    assert info.value.field.startswith("line ")


def test_inconsistent_rotation_rejected():
    data = json.loads(serialize(planted_instance(5, 4, 1, 0, 0)))
    key = next(iter(data["rotation"]))
    data["rotation"][key] = data["rotation"][key][:-1]
    with pytest.raises(ParseError):
        parse(json.dumps(data))


@settings(max_examples=20, deadline=None)
@given(st.sampled_from([5, 7, 9]), st.integers(4, 9), st.integers(1, 3), st.integers(0, 1),
       st.integers(0, 10 ** 5), st.floats(0, 1))
def test_parse_serialize_identity(p, q, k, r, seed, chords):
    try:
        inst = planted_instance(p, q, k, r, seed, chords=chords)
    except BadParams:
        return
    text = serialize(inst)
    again = parse(text)
    assert serialize(again) == text
    assert again.graph.face_list == inst.graph.face_list
