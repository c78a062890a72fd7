"""JSON matroid documents.

A document is an object with exactly one constructor key:

    {"bases": [[1, 2], ...], "n": 4}
    {"circuits": [[1, 2, 3], ...], "n": 6, "rank": 3}      # rank optional
    {"graph": {"vertices": 4, "edges": [[1, 2], ...]}}
    {"uniform": {"r": 3, "n": 6}}
    {"freedom": {"sequence": "110100"}}                   # or the bare string
    {"paving": {"n": 6, "r": 3, "copoints": [[1, 2, 3, 4], [4, 5, 6]]}}

plus an optional "name".  ``serialize`` always writes the canonical
``bases`` form with every set sorted.
"""

from __future__ import annotations

import json
from typing import Any

from .errors import MatroidError
from .matroid import GraphInput, Matroid, from_bases, from_circuits, from_graph, paving_matroid, uniform

CONSTRUCTORS = ("bases", "circuits", "graph", "uniform", "freedom", "paving")


class DocumentError(MatroidError):
    pass


def load(text: str) -> dict[str, Any]:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise DocumentError(f"parse error at line {exc.lineno}, column {exc.colno}: {exc.msg}") from None
    if not isinstance(doc, dict):
        raise DocumentError("a matroid document must be a JSON object")
    keys = [k for k in CONSTRUCTORS if k in doc]
    if len(keys) != 1:
        raise DocumentError(f"expected exactly one of {', '.join(CONSTRUCTORS)}; found {keys or 'none'}")
    unknown = set(doc) - set(CONSTRUCTORS) - {"n", "name", "rank"}
    if unknown:
        raise DocumentError(f"unknown keys {sorted(unknown)}")
    return doc


def _sets(payload, what: str) -> list[list[int]]:
    if not isinstance(payload, list) or not all(isinstance(s, list) for s in payload):
        raise DocumentError(f'"{what}" must be a list of lists of element labels')
    for s in payload:
        if not all(isinstance(e, int) and not isinstance(e, bool) for e in s):
            raise DocumentError(f'"{what}" entries must be integers')
    return payload


def graph_from_payload(payload) -> GraphInput:
    if not isinstance(payload, dict) or "vertices" not in payload or "edges" not in payload:
        raise DocumentError('"graph" needs "vertices" and "edges"')
    edges = _sets(payload["edges"], "edges")
    if any(len(e) != 2 for e in edges):
        raise DocumentError("every edge needs exactly two endpoints")
    return GraphInput(int(payload["vertices"]), tuple(tuple(e) for e in edges))


def _ground_size(doc, sets) -> int:
    if "n" in doc:
        return int(doc["n"])
    return max((max(s) for s in sets if s), default=0)


def from_document(doc: dict[str, Any]) -> Matroid:
    if "bases" in doc:
        bases = _sets(doc["bases"], "bases")
        return from_bases(_ground_size(doc, bases), bases)
    if "circuits" in doc:
        circuits = _sets(doc["circuits"], "circuits")
        return from_circuits(_ground_size(doc, circuits), circuits, rank=doc.get("rank"))
    if "graph" in doc:
        return from_graph(graph_from_payload(doc["graph"]))
    if "uniform" in doc:
        u = doc["uniform"]
        if not isinstance(u, dict) or "r" not in u or "n" not in u:
            raise DocumentError('"uniform" needs "r" and "n"')
        return uniform(int(u["r"]), int(u["n"]))
    if "freedom" in doc:
        from .ginvariant import check_sequence, freedom_matroid

        payload = doc["freedom"]
        if isinstance(payload, dict):
            payload = payload.get("sequence")
        if not isinstance(payload, str):
            raise DocumentError('"freedom" needs a 0/1 sequence string')
        return freedom_matroid(check_sequence(payload))
    pav = doc["paving"]
    if not isinstance(pav, dict) or not {"n", "r", "copoints"} <= set(pav):
        raise DocumentError('"paving" needs "n", "r" and "copoints"')
    return paving_matroid(int(pav["n"]), int(pav["r"]), _sets(pav["copoints"], "copoints"))


def parse(text: str) -> Matroid:
    return from_document(load(text))


def parse_graph(text: str) -> GraphInput:
    doc = load(text)
    if "graph" not in doc:
        raise DocumentError('expected a "graph" document')
    return graph_from_payload(doc["graph"])


def to_document(m: Matroid, name: str | None = None) -> dict[str, Any]:
    doc: dict[str, Any] = {}
    if name is not None:
        doc["name"] = name
    doc["n"] = m.n
    doc["bases"] = [list(b) for b in m.bases]
    return doc


def serialize(m: Matroid, name: str | None = None) -> str:
    return json.dumps(to_document(m, name), separators=(", ", ": "))
