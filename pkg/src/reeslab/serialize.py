"""JSON encoding of library objects.  Every document carries a ``kind`` tag."""

from __future__ import annotations

import json
from typing import Any, Callable

import jsonschema

from .bimodule import Bimodule, GroupData
from .errors import SchemaError
from .groups import (
    FiniteGroup,
    FiniteOracle,
    IntegerOracle,
    Subgroup,
    group_from_mul_table,
    group_from_permutations,
    partial_hom,
)
from .selfsim import ReesElement, SelfSimilarAction
from .universal import HNNPresentation

_int_matrix = {"type": "array", "items": {"type": "array", "items": {"type": "integer"}}}
_int_list = {"type": "array", "items": {"type": "integer"}}
_str_list = {"type": "array", "items": {"type": "string"}}
_group_ref = {"oneOf": [{"type": "string"}, {"type": "object"}]}

SCHEMAS: dict[str, dict] = {
    "group": {
        "type": "object",
        "properties": {
            "kind": {"const": "group"},
            "name": {"type": "string"},
            "mul": _int_matrix,
            "degree": {"type": "integer", "minimum": 0},
            "generators": _int_matrix,
            "labels": _str_list,
        },
        "oneOf": [{"required": ["mul"]}, {"required": ["degree", "generators"]}],
    },
    "bimodule": {
        "type": "object",
        "required": ["group", "carrier", "left", "right"],
        "properties": {
            "group": _group_ref,
            "carrier": {"type": "integer", "minimum": 1},
            "left": _int_matrix,
            "right": _int_matrix,
            "labels": _str_list,
            "name": {"type": "string"},
        },
    },
    "group-data": {
        "type": "object",
        "required": ["group", "H", "K", "gamma"],
        "properties": {
            "group": _group_ref,
            "H": _int_list,
            "K": _int_list,
            "gamma": _int_matrix,
            "name": {"type": "string"},
        },
    },
    "action": {
        "type": "object",
        "required": ["group", "alphabet", "act", "res"],
        "properties": {
            "group": _group_ref,
            "alphabet": _str_list,
            "act": _int_matrix,
            "res": _int_matrix,
            "name": {"type": "string"},
        },
    },
    "presentation": {
        "type": "object",
        "properties": {
            "name": {"type": "string"},
            "integer": {
                "type": "object",
                "required": ["m", "n"],
                "properties": {"m": {"type": "integer"}, "n": {"type": "integer"}},
            },
            "group": _group_ref,
            "A": _int_list,
            "phi": _int_matrix,
        },
        "oneOf": [{"required": ["integer"]}, {"required": ["group", "A", "phi"]}],
    },
    "element": {
        "type": "object",
        "required": ["word", "unit"],
        "properties": {"word": _int_list, "unit": {"type": "integer"}},
    },
}


def _check(doc: Any, kind: str) -> None:
    try:
        jsonschema.validate(doc, SCHEMAS[kind])
    except jsonschema.ValidationError as exc:
        raise SchemaError(f"{kind}: {exc.message}") from exc


# group references are resolved by name through a callback (the corpus, usually)
GroupResolver = Callable[[str], FiniteGroup]


def dump_group(G: FiniteGroup) -> dict:
    doc = {"kind": "group", "name": G.name, "mul": [list(r) for r in G.mul]}
    if G.labels is not None:
        doc["labels"] = list(G.labels)
    return doc


def load_group(doc: dict, resolve: GroupResolver | None = None) -> FiniteGroup:
    if isinstance(doc, str):
        if resolve is None:
            raise SchemaError(f"group reference {doc!r} needs a resolver")
        return resolve(doc)
    _check(doc, "group")
    if "mul" in doc:
        return group_from_mul_table(doc["mul"], doc.get("labels"), name=doc.get("name", ""))
    G, _ = group_from_permutations(doc["degree"], doc["generators"], name=doc.get("name", ""),
                                   labels=doc.get("labels"))
    return G


def dump_bimodule(b: Bimodule, name: str = "") -> dict:
    doc = {"kind": "bimodule", "name": name, "group": dump_group(b.group), "carrier": b.carrier_size,
           "left": [list(r) for r in b.left], "right": [list(r) for r in b.right]}
    if b.labels is not None:
        doc["labels"] = list(b.labels)
    return doc


def load_bimodule(doc: dict, resolve: GroupResolver | None = None) -> Bimodule:
    _check(doc, "bimodule")
    G = load_group(doc["group"], resolve)
    labels = tuple(doc["labels"]) if "labels" in doc else None
    return Bimodule(G, doc["carrier"], tuple(map(tuple, doc["left"])), tuple(map(tuple, doc["right"])), labels)


def dump_group_data(d: GroupData, name: str = "") -> dict:
    return {"kind": "group-data", "name": name, "group": dump_group(d.group), "H": list(d.H.elements),
            "K": list(d.K.elements), "gamma": sorted([h, k] for h, k in d.gamma)}


def load_group_data(doc: dict, resolve: GroupResolver | None = None) -> GroupData:
    _check(doc, "group-data")
    G = load_group(doc["group"], resolve)
    return GroupData(G, Subgroup(G, tuple(doc["H"])), Subgroup(G, tuple(doc["K"])),
                     frozenset((int(h), int(k)) for h, k in doc["gamma"]))


def dump_action(a: SelfSimilarAction) -> dict:
    return {"kind": "action", "name": a.name, "group": dump_group(a.group), "alphabet": list(a.letters),
            "act": [list(r) for r in a.act], "res": [list(r) for r in a.res]}


def load_action(doc: dict, resolve: GroupResolver | None = None) -> SelfSimilarAction:
    """Shape-checked but not axiom-checked; run :func:`validate_action` on the result."""
    _check(doc, "action")
    G = load_group(doc["group"], resolve)
    try:
        return SelfSimilarAction(G, doc["act"], doc["res"], tuple(doc["alphabet"]), doc.get("name", ""))
    except ValueError as exc:
        raise SchemaError(f"action: {exc}") from exc


def dump_presentation(p: HNNPresentation) -> dict:
    o = p.oracle
    if isinstance(o, IntegerOracle):
        return {"kind": "presentation", "name": p.name, "integer": {"m": o.m, "n": o.n}}
    assert isinstance(o, FiniteOracle)
    return {"kind": "presentation", "name": p.name, "group": dump_group(o.group),
            "A": list(o.A.elements), "phi": sorted([a, b] for a, b in o.phi.table.items())}


def load_presentation(doc: dict, resolve: GroupResolver | None = None) -> HNNPresentation:
    _check(doc, "presentation")
    if "integer" in doc:
        return HNNPresentation(IntegerOracle(doc["integer"]["m"], doc["integer"]["n"]), doc.get("name", ""))
    G = load_group(doc["group"], resolve)
    phi = partial_hom(Subgroup(G, tuple(doc["A"])), {a: b for a, b in doc["phi"]})
    return HNNPresentation(FiniteOracle(phi), doc.get("name", ""), monoid_only=not phi.injective)


def dump_element(e: ReesElement) -> dict:
    return {"word": list(e.word), "unit": e.unit}


def load_element(doc: dict) -> ReesElement:
    _check(doc, "element")
    return ReesElement(tuple(doc["word"]), doc["unit"])


LOADERS = {
    "group": load_group,
    "bimodule": load_bimodule,
    "group-data": load_group_data,
    "action": load_action,
    "presentation": load_presentation,
}


def dump(obj, name: str = "") -> dict:
    if isinstance(obj, FiniteGroup):
        return dump_group(obj)
    if isinstance(obj, Bimodule):
        return dump_bimodule(obj, name)
    if isinstance(obj, GroupData):
        return dump_group_data(obj, name)
    if isinstance(obj, SelfSimilarAction):
        return dump_action(obj)
    if isinstance(obj, HNNPresentation):
        return dump_presentation(obj)
    raise TypeError(f"cannot serialise {type(obj).__name__}")


def load(doc: dict, resolve: GroupResolver | None = None):
    if not isinstance(doc, dict) or "kind" not in doc:
        raise SchemaError("document needs a 'kind' field")
    kind = doc["kind"]
    if kind not in LOADERS:
        raise SchemaError(f"unknown kind {kind!r}")
    return kind, LOADERS[kind](doc, resolve)


def loads(text: str, resolve: GroupResolver | None = None):
    return load(json.loads(text), resolve)


def dumps(obj, name: str = "") -> str:
    return json.dumps(dump(obj, name), indent=2)
