"""Instance files: one JSON layout for graphs, annuli, linkages, params and fixtures."""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional

from .embed import PlaneGraph
from .errors import LinkcombError, ParseError
from .linkage import Linkage
from .structures import NESTED, PARALLEL, CycleSequence, RailedAnnulus


@dataclass
class Instance:
    graph: PlaneGraph
    annulus: Optional[RailedAnnulus] = None
    linkage: Optional[Linkage] = None
    params: Dict[str, Any] = field(default_factory=dict)
    expected: Optional[Dict[str, Any]] = None
    meta: Dict[str, Any] = field(default_factory=dict)
    nested: Optional[CycleSequence] = None

    def to_json(self) -> dict:
        data = self.graph.to_json()
        if self.annulus is not None:
            data["annulus"] = self.annulus.to_json()
        if self.nested is not None:
            data["nested"] = {"cycles": [list(c) for c in self.nested.cycles]}
        if self.linkage is not None:
            data["linkage"] = self.linkage.to_json()
        data["params"] = dict(self.params)
        if self.expected is not None:
            data["expected"] = self.expected
        if self.meta:
            data["meta"] = self.meta
        return data


def dumps(data: Any) -> str:
    """Stable serialization: sorted keys, UTF-8 text, trailing newline."""
    return json.dumps(data, sort_keys=True, ensure_ascii=False, separators=(",", ":")) + "\n"


def serialize(inst: Instance) -> str:
    return dumps(inst.to_json())


def _need(data: dict, key: str, kind):
    if key not in data:
        raise ParseError(f"missing field {key!r}", key)
    value = data[key]
    if not isinstance(value, kind):
        raise ParseError(f"field {key!r} has the wrong type", key)
    return value


def _int_list(value, name: str) -> List[int]:
    if not isinstance(value, list) or not all(isinstance(x, int) and not isinstance(x, bool) for x in value):
        raise ParseError(f"field {name!r} must be a list of integers", name)
    return value


def from_json(data: Any) -> Instance:
    if not isinstance(data, dict):
        raise ParseError("instance must be a JSON object")
    vertices = _int_list(_need(data, "vertices", list), "vertices")
    edges = _need(data, "edges", list)
    for n, e in enumerate(edges):
        if not (isinstance(e, list) and len(e) == 2):
            raise ParseError(f"edge {n} must be a pair", f"edges[{n}]")
        _int_list(e, f"edges[{n}]")
    rotation_raw = _need(data, "rotation", dict)
    rotation = {}
    for key, value in rotation_raw.items():
        try:
            vid = int(key)
        except ValueError:
            raise ParseError(f"rotation key {key!r} is not a vertex id", f"rotation.{key}") from None
        rotation[vid] = _int_list(value, f"rotation.{key}")
    outer = _need(data, "outer_face_edge", list)
    if len(outer) != 3:
        raise ParseError("outer_face_edge must be [u, v, side]", "outer_face_edge")
    try:
        graph = PlaneGraph(vertices, edges, rotation, outer)
        graph.face_list
    except LinkcombError as exc:
        raise ParseError(f"invalid graph: {exc}", "graph") from exc
    annulus = None
    if "annulus" in data:
        ann = _need(data, "annulus", dict)
        cycles = [_int_list(c, "annulus.cycles") for c in _need(ann, "cycles", list)]
        rails = [_int_list(r, "annulus.rails") for r in _need(ann, "rails", list)]
        try:
            annulus = RailedAnnulus(CycleSequence(graph, cycles, PARALLEL), rails)
        except LinkcombError as exc:
            raise ParseError(f"invalid annulus: {exc}", "annulus") from exc
    nested = None
    if "nested" in data:
        cycles = [_int_list(c, "nested.cycles") for c in _need(_need(data, "nested", dict), "cycles", list)]
        nested = CycleSequence(graph, cycles, NESTED)
    linkage = None
    if "linkage" in data:
        paths = [_int_list(pth, "linkage") for pth in _need(data, "linkage", list)]
        linkage = Linkage(graph, paths, check=False)
    params = data.get("params", {})
    if not isinstance(params, dict):
        raise ParseError("params must be an object", "params")
    for key in ("r", "s", "m"):
        if key in params and params[key] is not None and not isinstance(params[key], int):
            raise ParseError(f"params.{key} must be an integer", f"params.{key}")
    if "I" in params:
        _int_list(params["I"], "params.I")
    return Instance(graph, annulus, linkage, dict(params), data.get("expected"), data.get("meta", {}), nested)


def parse(text: str) -> Instance:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"line {exc.lineno}: {exc.msg}", f"line {exc.lineno}") from exc
    return from_json(data)


def load(path: str) -> Instance:
    with open(path, encoding="utf-8") as fh:
        return parse(fh.read())


def save(inst: Instance, path: str) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(serialize(inst))
