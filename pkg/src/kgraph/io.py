"""JSON graph documents.

A document is ``{"k", "vertices", "edges", "squares"}`` with edges
``{id, color, range, source}`` and squares ``{path_a: [x, y], path_b: [u, w]}``
meaning ``x y == u w``.  Unknown keys are rejected.
"""

from __future__ import annotations

import json
from pathlib import Path as FilePath

import jsonschema

from .skeleton import Edge, Skeleton, Square

_ID = {"type": "string", "minLength": 1}

GRAPH_SCHEMA = {
    "type": "object",
    "additionalProperties": False,
    "required": ["k", "vertices", "edges"],
    "properties": {
        "k": {"type": "integer", "minimum": 1},
        "vertices": {"type": "array", "items": _ID},
        "edges": {
            "type": "array",
            "items": {
                "type": "object",
                "additionalProperties": False,
                "required": ["id", "color", "range", "source"],
                "properties": {
                    "id": _ID,
                    "color": {"type": "integer", "minimum": 1},
                    "range": _ID,
                    "source": _ID,
                },
            },
        },
        "squares": {
            "type": "array",
            "items": {
                "type": "object",
                "additionalProperties": False,
                "required": ["path_a", "path_b"],
                "properties": {
                    "path_a": {"type": "array", "items": _ID, "minItems": 2, "maxItems": 2},
                    "path_b": {"type": "array", "items": _ID, "minItems": 2, "maxItems": 2},
                },
            },
        },
    },
}


class DocumentError(ValueError):
    """A graph document that is not well-formed JSON of the expected shape."""


def skeleton_from_document(doc) -> Skeleton:
    try:
        jsonschema.validate(doc, GRAPH_SCHEMA)
    except jsonschema.ValidationError as err:
        where = "/".join(str(p) for p in err.absolute_path) or "<root>"
        raise DocumentError(f"{where}: {err.message}") from None
    return Skeleton(
        doc["k"],
        tuple(doc["vertices"]),
        tuple(Edge(e["id"], e["color"], e["range"], e["source"]) for e in doc["edges"]),
        tuple(Square(tuple(s["path_a"]), tuple(s["path_b"])) for s in doc.get("squares", [])),
    )


def skeleton_to_document(sk: Skeleton) -> dict:
    return {
        "k": sk.rank,
        "vertices": list(sk.vertices),
        "edges": [{"id": e.id, "color": e.color, "range": e.range, "source": e.source} for e in sk.edges],
        "squares": [{"path_a": list(s.first), "path_b": list(s.second)} for s in sk.squares],
    }


def loads(text: str) -> Skeleton:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as err:
        raise DocumentError(f"not valid JSON: {err}") from None
    return skeleton_from_document(doc)


def dumps(sk: Skeleton) -> str:
    return json.dumps(skeleton_to_document(sk), indent=2, ensure_ascii=False)


def read_graph(path) -> Skeleton:
    return loads(FilePath(path).read_text(encoding="utf-8"))


def write_graph(sk: Skeleton, path) -> None:
    FilePath(path).write_text(dumps(sk) + "\n", encoding="utf-8")
