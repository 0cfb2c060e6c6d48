"""Plain-text instance formats and canonical JSON helpers.

Graph file:   "graph <n> <m>" header, then m lines "u v" (vertices 0-based).
Poset file:   "poset <n> <k>" header, then k lines "u v" meaning u < v;
              the transitive closure is computed on load, cycles rejected.
Tree decomposition: "td <#bags> <width+1> <n>" header, then one line
              "b <bag-id> v1 v2 ..." per bag (bag ids 1-based, vertices
              0-based), then "<i> <j>" tree-edge lines.
Layering:     one line per vertex, line i holding the layer index of vertex i.

All writers emit exactly what the parsers accept, and JSON is serialized
canonically (sorted keys, fixed separators) so reruns are byte-comparable.
"""

from __future__ import annotations

import json
from typing import Dict, List, Sequence, Tuple

from .core import Graph, Poset
from .errors import ParseError


def _tokenize(text: str) -> List[List[str]]:
    rows = []
    for lineno, line in enumerate(text.splitlines(), start=1):
        stripped = line.strip()
        if not stripped or stripped.startswith("#"):
            continue
        rows.append([str(lineno)] + stripped.split())
    return rows


def _int_field(tok: str, what: str, lineno: str) -> int:
    try:
        return int(tok)
    except ValueError as exc:
        raise ParseError(f"line {lineno}: bad {what} {tok!r}") from exc


def parse_graph(text: str) -> Graph:
    rows = _tokenize(text)
    if not rows or rows[0][1] != "graph" or len(rows[0]) != 4:
        raise ParseError("expected header 'graph <n> <m>'")
    lineno, _, n_tok, m_tok = rows[0]
    n = _int_field(n_tok, "vertex count", lineno)
    m = _int_field(m_tok, "edge count", lineno)
    body = rows[1:]
    if len(body) != m:
        raise ParseError(f"header promises {m} edges, file has {len(body)}")
    edges = []
    for row in body:
        if len(row) != 3:
            raise ParseError(f"line {row[0]}: expected 'u v'")
        u = _int_field(row[1], "vertex", row[0])
        v = _int_field(row[2], "vertex", row[0])
        if not (0 <= u < n and 0 <= v < n) or u == v:
            raise ParseError(f"line {row[0]}: bad edge ({u},{v})")
        edges.append((u, v))
    return Graph(n, edges)


def write_graph(g: Graph) -> str:
    lines = [f"graph {g.n} {g.m}"]
    for u, v in sorted(g.edges):
        lines.append(f"{u} {v}")
    return "\n".join(lines) + "\n"


def parse_poset(text: str) -> Poset:
    rows = _tokenize(text)
    if not rows or rows[0][1] != "poset" or len(rows[0]) != 4:
        raise ParseError("expected header 'poset <n> <k>'")
    lineno, _, n_tok, k_tok = rows[0]
    n = _int_field(n_tok, "element count", lineno)
    k = _int_field(k_tok, "relation count", lineno)
    body = rows[1:]
    if len(body) != k:
        raise ParseError(f"header promises {k} relations, file has {len(body)}")
    pairs = []
    for row in body:
        if len(row) != 3:
            raise ParseError(f"line {row[0]}: expected 'u v'")
        u = _int_field(row[1], "element", row[0])
        v = _int_field(row[2], "element", row[0])
        if not (0 <= u < n and 0 <= v < n) or u == v:
            raise ParseError(f"line {row[0]}: bad pair ({u},{v})")
        pairs.append((u, v))
    try:
        return Poset.from_relations(n, pairs)
    except Exception as exc:
        raise ParseError(f"not a partial order: {exc}") from exc


def write_poset(p: Poset) -> str:
    cover = p.minimal_cover_pairs()
    lines = [f"poset {p.n} {len(cover)}"]
    for a, b in cover:
        lines.append(f"{a} {b}")
    return "\n".join(lines) + "\n"


def parse_tree_decomposition(text: str):
    """Returns (bags: dict bag-id -> frozenset, tree_edges, n).

    Bag ids are 1-based as written; vertices are 0-based.
    """
    rows = _tokenize(text)
    if not rows or rows[0][1] != "td" or len(rows[0]) != 5:
        raise ParseError("expected header 'td <#bags> <width+1> <n>'")
    lineno, _, b_tok, w_tok, n_tok = rows[0]
    nbags = _int_field(b_tok, "bag count", lineno)
    width_plus = _int_field(w_tok, "width+1", lineno)
    n = _int_field(n_tok, "vertex count", lineno)
    bags: Dict[int, frozenset] = {}
    tree_edges: List[Tuple[int, int]] = []
    for row in rows[1:]:
        if row[1] == "b":
            if len(row) < 3:
                raise ParseError(f"line {row[0]}: bag line needs an id")
            bid = _int_field(row[2], "bag id", row[0])
            if not (1 <= bid <= nbags) or bid in bags:
                raise ParseError(f"line {row[0]}: bad or repeated bag id {bid}")
            verts = [_int_field(t, "vertex", row[0]) for t in row[3:]]
            for v in verts:
                if not (0 <= v < n):
                    raise ParseError(f"line {row[0]}: vertex {v} outside 0..{n - 1}")
            if len(verts) > width_plus:
                raise ParseError(
                    f"line {row[0]}: bag {bid} exceeds declared width+1 = {width_plus}"
                )
            bags[bid] = frozenset(verts)
        else:
            if len(row) != 3:
                raise ParseError(f"line {row[0]}: expected tree edge '<i> <j>'")
            i = _int_field(row[1], "bag id", row[0])
            j = _int_field(row[2], "bag id", row[0])
            tree_edges.append((i, j))
    if len(bags) != nbags:
        raise ParseError(f"header promises {nbags} bags, file has {len(bags)}")
    for i, j in tree_edges:
        if i not in bags or j not in bags:
            raise ParseError(f"tree edge ({i},{j}) references unknown bag")
    return bags, tree_edges, n


def write_tree_decomposition(bags: Dict[int, frozenset], tree_edges, n: int) -> str:
    width_plus = max((len(b) for b in bags.values()), default=1)
    lines = [f"td {len(bags)} {width_plus} {n}"]
    for bid in sorted(bags):
        verts = " ".join(str(v) for v in sorted(bags[bid]))
        lines.append(f"b {bid} {verts}".rstrip())
    for i, j in tree_edges:
        lines.append(f"{i} {j}")
    return "\n".join(lines) + "\n"


def parse_layering(text: str, n: int) -> List[int]:
    """Layer index of each vertex, one line per vertex in vertex order."""
    values = []
    for lineno, line in enumerate(text.splitlines(), start=1):
        stripped = line.strip()
        if not stripped or stripped.startswith("#"):
            continue
        values.append(_int_field(stripped, "layer index", str(lineno)))
    if len(values) != n:
        raise ParseError(f"expected {n} layer lines, found {len(values)}")
    if any(v < 0 for v in values):
        raise ParseError("layer indices must be non-negative")
    return values


def write_layering(layers_of: Sequence[int]) -> str:
    return "\n".join(str(i) for i in layers_of) + "\n"


def parse_vertex_set(text: str) -> List[int]:
    """Whitespace-separated vertex ids (used for cut sets)."""
    out = []
    for row in _tokenize(text):
        for tok in row[1:]:
            out.append(_int_field(tok, "vertex", row[0]))
    return out


def write_vertex_set(vertices: Sequence[int]) -> str:
    return " ".join(str(v) for v in sorted(vertices)) + "\n"


def canonical_json(obj) -> str:
    """Deterministic serialization: byte-identical across reruns."""
    return json.dumps(obj, sort_keys=True, separators=(",", ":")) + "\n"


def load_json(text: str):
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"bad JSON: {exc}") from exc
