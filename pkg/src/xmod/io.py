"""JSON files for groups, homomorphisms, 2-/3-crossed modules and simplicial groups.

Every document carries ``schema_version`` and ``kind``.  Groups are Cayley
tables, maps and actions are index tables, so a round trip is exact.
Loading only checks shapes and ranges; whether the data satisfies any axioms
is left to the verifiers, so broken structures can still be read and
reported on.
"""

from __future__ import annotations

import json
from pathlib import Path
from typing import Any

import numpy as np

from .crossed import ThreeCrossedModule, TwoCrossedModule
from .groups import FiniteGroup, GroupAction, GroupError, GroupHom
from .moore import TruncatedSimplicialGroup

SCHEMA_VERSION = 1
KINDS = ("group", "hom", "xmod2", "xmod3", "sgroup")


class FormatError(ValueError):
    """The file is not a well-formed document of the expected kind."""


def _list(a) -> Any:
    return np.asarray(a).tolist()


def group_to_json(G: FiniteGroup) -> dict:
    return {"name": G.name, "table": _list(G.table)}


def group_from_json(d: dict, *, check: bool = True) -> FiniteGroup:
    return FiniteGroup(d["table"], name=d.get("name", ""), check=check)


def _structure_to_json(S, kind: str) -> dict:
    tabs = S.tables()
    return {
        "schema_version": SCHEMA_VERSION, "kind": kind, "name": S.name,
        "groups": {g: group_to_json(getattr(S, g)) for g in S._groups},
        "boundaries": {k: _list(tabs[k]) for k in S._homs},
        "actions": {k: _list(tabs[k]) for k in S._acts},
        "liftings": {k: _list(tabs[k]) for k in S._lifts},
    }


def to_json(obj) -> dict:
    if isinstance(obj, ThreeCrossedModule):
        return _structure_to_json(obj, "xmod3")
    if isinstance(obj, TwoCrossedModule):
        return _structure_to_json(obj, "xmod2")
    if isinstance(obj, FiniteGroup):
        return {"schema_version": SCHEMA_VERSION, "kind": "group", **group_to_json(obj)}
    if isinstance(obj, GroupHom):
        return {"schema_version": SCHEMA_VERSION, "kind": "hom",
                "source": group_to_json(obj.source), "target": group_to_json(obj.target),
                "map": _list(obj.map)}
    if isinstance(obj, TruncatedSimplicialGroup):
        return {"schema_version": SCHEMA_VERSION, "kind": "sgroup", "name": obj.name,
                "groups": [group_to_json(g) for g in obj.groups],
                "faces": {f"{n},{i}": _list(f.map) for (n, i), f in sorted(obj.faces.items())},
                "degeneracies": {f"{n},{i}": _list(f.map)
                                 for (n, i), f in sorted(obj.degeneracies.items())}}
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def _pairs(d: dict) -> dict:
    out = {}
    for k, v in d.items():
        n, i = (int(x) for x in k.split(","))
        out[n, i] = v
    return out


def from_json(d: dict, kind: str | None = None):
    """Rebuild an object from :func:`to_json` output.

    Raises :class:`FormatError` for anything that is not a document of the
    right shape; group tables that are not groups also count as malformed.
    """
    if not isinstance(d, dict):
        raise FormatError("top level must be a JSON object")
    version = d.get("schema_version")
    if version != SCHEMA_VERSION:
        raise FormatError(f"unsupported schema_version {version!r}")
    k = d.get("kind")
    if k not in KINDS:
        raise FormatError(f"unknown kind {k!r}")
    if kind is not None and k != kind:
        raise FormatError(f"expected kind {kind!r}, file has {k!r}")
    try:
        if k == "group":
            return group_from_json(d)
        if k == "hom":
            return GroupHom(group_from_json(d["source"]), group_from_json(d["target"]), d["map"],
                            check=False)
        if k == "sgroup":
            groups = [group_from_json(g) for g in d["groups"]]
            return TruncatedSimplicialGroup(groups, _pairs(d["faces"]), _pairs(d["degeneracies"]),
                                            name=d.get("name", ""), check=False)
        cls = ThreeCrossedModule if k == "xmod3" else TwoCrossedModule
        kw = {g: group_from_json(d["groups"][g]) for g in cls._groups}
        for part in ("boundaries", "actions", "liftings"):
            kw.update(d[part])
        return cls(**kw, name=d.get("name", ""))
    except (KeyError, TypeError, AttributeError) as exc:
        raise FormatError(f"malformed {k} document: {exc!r}") from exc
    except GroupError as exc:
        raise FormatError(f"malformed {k} document: {exc}") from exc


def dumps(obj) -> str:
    """Deterministic text: sorted keys, one trailing newline."""
    return json.dumps(obj if isinstance(obj, dict) else to_json(obj), sort_keys=True) + "\n"


def save(obj, path) -> None:
    Path(path).write_text(dumps(obj))


def load(path, kind: str | None = None):
    try:
        d = json.loads(Path(path).read_text())
    except json.JSONDecodeError as exc:
        raise FormatError(f"{path}: not valid JSON ({exc})") from exc
    return from_json(d, kind)
