import json

import pytest

from xmod import catalog, io
from xmod.groups import GroupHom, make_cyclic, make_symmetric


@pytest.mark.parametrize("name", catalog.names())
def test_round_trip_builtins(name, tmp_path):
    obj = catalog.get(name)
    path = tmp_path / "x.json"
    io.save(obj, path)
    back = io.load(path, catalog.kind_of(obj))
    assert type(back) is type(obj)
    assert io.dumps(back) == io.dumps(obj)
    if catalog.kind_of(obj) != "sgroup":
        assert back == obj


def test_round_trip_group_and_hom():
    S3 = make_symmetric(3)
    assert io.from_json(io.to_json(S3)) == S3
    f = GroupHom(make_cyclic(4), make_cyclic(2), [0, 1, 0, 1])
    assert io.from_json(json.loads(io.dumps(f))) == f


def test_dumps_is_deterministic():
    a = io.dumps(catalog.get("from2cm(S3->S3->1)"))
    b = io.dumps(catalog.get("from2cm(S3->S3->1)"))
    assert a == b and a.endswith("\n")
    assert json.loads(a)["schema_version"] == io.SCHEMA_VERSION


def test_broken_structures_still_load():
    T = catalog.get("zero(Z2,Z2,Z2,Z2)").mutate("act_gh", (1, 0), 1)
    assert io.from_json(io.to_json(T)) == T


@pytest.mark.parametrize("doc", [
    [],
    {"kind": "group", "table": [[0]]},
    {"schema_version": 99, "kind": "group", "table": [[0]]},
    {"schema_version": 1, "kind": "nope"},
    {"schema_version": 1, "kind": "group", "table": [[0, 1], [0, 1]]},
    {"schema_version": 1, "kind": "xmod2", "groups": {}},
])
def test_malformed_documents(doc):
    with pytest.raises(io.FormatError):
        io.from_json(doc)


def test_kind_mismatch(tmp_path):
    path = tmp_path / "g.json"
    io.save(make_cyclic(2), path)
    with pytest.raises(io.FormatError):
        io.load(path, "xmod3")
    path.write_text("{not json")
    with pytest.raises(io.FormatError):
        io.load(path)


def test_unknown_object():
    with pytest.raises(TypeError):
        io.to_json(object())
