"""JSON curve documents.

A document looks like::

    {"components": [{"id": "C", "genus": 0}],
     "nodes": [{"id": "x", "branches": ["C", "C"], "nu": 1}]}

The order of ``branches`` is the orientation of the node.
"""

from __future__ import annotations

import json
from pathlib import Path

from .degeneration import CurveError, LogCurveData


class DocumentParseError(ValueError):
    """The file is not valid JSON."""


def _int(value, field: str) -> int:
    # bool is an int subclass; reject it explicitly
    if isinstance(value, bool) or not isinstance(value, int):
        raise CurveError(f"{field} must be an integer, got {value!r}", field)
    return value


def _str(value, field: str) -> str:
    if not isinstance(value, str) or not value:
        raise CurveError(f"{field} must be a non-empty string, got {value!r}", field)
    return value


def curve_from_obj(obj) -> LogCurveData:
    if not isinstance(obj, dict):
        raise CurveError("top level must be an object", "<root>")
    unknown = set(obj) - {"components", "nodes", "markings", "name"}
    if unknown:
        key = sorted(unknown)[0]
        raise CurveError(f"unknown key {key!r}", key)
    if obj.get("markings"):
        raise CurveError("marked points are not supported (vertical curves only)", "markings")
    comps = obj.get("components")
    if not isinstance(comps, list) or not comps:
        raise CurveError("components must be a non-empty list", "components")
    nodes = obj.get("nodes", [])
    if not isinstance(nodes, list):
        raise CurveError("nodes must be a list", "nodes")

    components = []
    for i, c in enumerate(comps):
        if not isinstance(c, dict):
            raise CurveError("component entries must be objects", f"components[{i}]")
        cid = _str(c.get("id"), f"components[{i}].id")
        g = _int(c.get("genus", 0), f"components[{i}].genus")
        if g < 0:
            raise CurveError(f"component {cid!r} has negative genus {g}", f"components[{i}].genus")
        components.append((cid, g))

    parsed = []
    seen = set()
    for i, n in enumerate(nodes):
        if not isinstance(n, dict):
            raise CurveError("node entries must be objects", f"nodes[{i}]")
        nid = _str(n.get("id"), f"nodes[{i}].id")
        if nid in seen:
            raise CurveError(f"duplicate node id {nid!r}", f"nodes[{i}].id")
        seen.add(nid)
        br = n.get("branches")
        if not isinstance(br, list) or len(br) != 2:
            raise CurveError(f"node {nid!r} needs exactly two branches", f"nodes[{i}].branches")
        b1 = _str(br[0], f"nodes[{i}].branches[0]")
        b2 = _str(br[1], f"nodes[{i}].branches[1]")
        nu = _int(n.get("nu", 1), f"nodes[{i}].nu")
        if nu < 1:
            raise CurveError(f"node {nid!r} has nu {nu} < 1", f"nodes[{i}].nu")
        parsed.append((nid, (b1, b2), nu))
    return LogCurveData.build(components, parsed)


def curve_to_obj(data: LogCurveData) -> dict:
    G = data.graph
    return {
        "components": [{"id": v, "genus": g} for v, g in zip(G.vertices, data.genus)],
        "nodes": [{"id": e, "branches": [G.vertices[a], G.vertices[b]], "nu": n}
                  for e, (a, b), n in zip(G.edges, G.ends, data.nu)],
    }


def loads(text: str) -> LogCurveData:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise DocumentParseError(f"malformed JSON: {exc}") from exc
    return curve_from_obj(obj)


def load(path: str | Path) -> LogCurveData:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except UnicodeDecodeError as exc:
        raise DocumentParseError(f"{path}: not UTF-8 text") from exc
    return loads(text)


def to_dot(data: LogCurveData) -> str:
    G = data.graph

    def q(s: str) -> str:
        return '"' + s.replace("\\", "\\\\").replace('"', '\\"') + '"'

    lines = ["graph dual {"]
    for v, g in zip(G.vertices, data.genus):
        lines.append(f"  {q(v)} [label={q(f'{v} (g={g})')}];")
    for e, (a, b), n in zip(G.edges, G.ends, data.nu):
        lines.append(f"  {q(G.vertices[a])} -- {q(G.vertices[b])} [label={q(f'{e} (ν={n})')}];")
    lines.append("}")
    return "\n".join(lines) + "\n"
