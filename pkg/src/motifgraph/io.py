"""Readers and writers for graph, partition and constraint files."""
from __future__ import annotations

import json
from pathlib import Path
from typing import Optional, Union

from .bounds import ConstraintSet
from .errors import InputError, ParseError
from .graph import Graph, build_graph
from .motifs import Partition

PathLike = Union[str, Path]


def parse_edgelist(text: str, path: Optional[str] = None) -> Graph:
    """Parse the edge-list format: ``n <count>`` then one ``i j`` per line.

    Blank lines and anything after ``#`` are ignored.
    """
    n = None
    edges = []
    seen = set()
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if n is None:
            if len(parts) != 2 or parts[0] != "n":
                raise ParseError(f"expected 'n <count>', got {line!r}", path, lineno)
            n = _int(parts[1], path, lineno)
            continue
        if len(parts) != 2:
            raise ParseError(f"expected 'i j', got {line!r}", path, lineno)
        i, j = _int(parts[0], path, lineno), _int(parts[1], path, lineno)
        try:
            # Validate one edge at a time so errors carry the line number.
            build_graph(n, [(i, j)])
        except InputError as exc:
            raise ParseError(str(exc), path, lineno) from None
        key = (min(i, j), max(i, j))
        if key in seen:
            raise ParseError(f"edge {key} given twice", path, lineno)
        seen.add(key)
        edges.append((i, j))
    if n is None:
        raise ParseError("missing 'n <count>' header", path)
    try:
        return build_graph(n, edges)
    except InputError as exc:
        raise ParseError(str(exc), path) from None


def _int(tok: str, path, lineno) -> int:
    try:
        return int(tok)
    except ValueError:
        raise ParseError(f"not an integer: {tok!r}", path, lineno) from None


def format_edgelist(g: Graph) -> str:
    return "".join([f"n {g.n}\n"] + [f"{i} {j}\n" for i, j in g.edges])


def parse_graph_json(text: str, path: Optional[str] = None) -> Graph:
    data = _load_json(text, path)
    if not isinstance(data, dict) or "n" not in data or "edges" not in data:
        raise ParseError('expected {"n": int, "edges": [[i, j], ...]}', path)
    if not isinstance(data["n"], int) or not isinstance(data["edges"], list):
        raise ParseError("'n' must be an integer and 'edges' a list", path)
    for e in data["edges"]:
        if not (isinstance(e, list) and len(e) == 2 and all(isinstance(x, int) for x in e)):
            raise ParseError(f"bad edge {e!r}", path)
    try:
        return build_graph(data["n"], data["edges"])
    except InputError as exc:
        raise ParseError(str(exc), path) from None


def format_graph_json(g: Graph) -> str:
    return json.dumps({"n": g.n, "edges": [list(e) for e in g.edges]}) + "\n"


def _load_json(text: str, path):
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc.msg}", path, exc.lineno) from None


def _read(path: PathLike) -> str:
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None


def read_graph(path: PathLike, fmt: Optional[str] = None) -> Graph:
    """Read a graph file; ``fmt`` is ``edgelist`` or ``json`` (guessed from suffix if None)."""
    if fmt is None:
        fmt = "json" if str(path).endswith(".json") else "edgelist"
    text = _read(path)
    if fmt == "json":
        return parse_graph_json(text, str(path))
    if fmt == "edgelist":
        return parse_edgelist(text, str(path))
    raise InputError(f"unknown graph format {fmt!r}")


def write_graph(g: Graph, path: PathLike, fmt: str = "edgelist") -> None:
    text = format_graph_json(g) if fmt == "json" else format_edgelist(g)
    Path(path).write_text(text)


def partition_from_json(data, n: Optional[int] = None, path=None) -> Partition:
    if not isinstance(data, dict) or not isinstance(data.get("blocks"), list):
        raise ParseError('expected {"blocks": [[...], ...]}', path)
    blocks = data["blocks"]
    for b in blocks:
        if not isinstance(b, list) or not all(isinstance(v, int) for v in b):
            raise ParseError(f"bad block {b!r}", path)
    try:
        return Partition.from_blocks(blocks, n)
    except InputError as exc:
        raise ParseError(str(exc), path) from None


def partition_to_json(p: Partition) -> dict:
    return {"blocks": p.blocks()}


def read_partition(path: PathLike, n: Optional[int] = None) -> Partition:
    return partition_from_json(_load_json(_read(path), str(path)), n, str(path))


def constraints_from_json(data, path=None) -> ConstraintSet:
    if not isinstance(data, dict) or not isinstance(data.get("n"), int):
        raise ParseError('expected {"n": int, "required": [...], "forbidden": [...]}', path)
    unknown = set(data) - {"n", "required", "forbidden"}
    if unknown:
        raise ParseError(f"unknown keys {sorted(unknown)}", path)
    lists = {}
    for key in ("required", "forbidden"):
        raw = data.get(key, [])
        if not isinstance(raw, list) or not all(
            isinstance(e, list) and len(e) == 2 and all(isinstance(x, int) for x in e) for e in raw
        ):
            raise ParseError(f"'{key}' must be a list of [i, j] pairs", path)
        lists[key] = frozenset(tuple(e) for e in raw)
    try:
        return ConstraintSet(data["n"], lists["required"], lists["forbidden"])
    except InputError as exc:
        raise ParseError(str(exc), path) from None


def constraints_to_json(c: ConstraintSet) -> dict:
    return {
        "n": c.n,
        "required": [list(e) for e in sorted(c.required)],
        "forbidden": [list(e) for e in sorted(c.forbidden)],
    }


def read_constraints(path: PathLike) -> ConstraintSet:
    return constraints_from_json(_load_json(_read(path), str(path)), str(path))


def read_json(path: PathLike):
    return _load_json(_read(path), str(path))
