"""Bridging posets and box representations, in both directions.

The doubled poset of a graph G puts two copies of every vertex on two
levels; realizers of it turn into box representations of G, and box
representations of a comparability graph turn into witness orders for the
poset's dimension.
"""

from __future__ import annotations

from dataclasses import dataclass
from heapq import heapify, heappop, heappush
from typing import List, Sequence, Tuple

from .core import (
    BoxRepresentation,
    Box,
    Graph,
    Interval,
    Poset,
    Realizer,
    comparability_graph,
    order_from_sequence,
    order_sequence,
    verify_box_rep,
    verify_fk_realizer,
    verify_realizer,
)
from .errors import StructuralError, VerificationError
from .pipelines import Certificate, bounded_degree_rep


def graph_to_doubled_poset(g: Graph) -> Poset:
    """The height-2 poset on two copies of V(G).

    Element v is the lower copy of vertex v and element n + v the upper
    copy; v < n + u holds exactly when u == v or uv is an edge.  Its
    dimension is at least the boxicity of g.
    """
    n = g.n
    rel = [(v, n + v) for v in range(n)]
    for u, v in g.edges:
        rel.append((u, n + v))
        rel.append((v, n + u))
    return Poset(2 * n, rel)


def boxes_from_realizer(g: Graph, realizer: Realizer) -> BoxRepresentation:
    """Boxes for g out of a realizer of its doubled poset.

    Dimension i of vertex v spans from the position of the lower copy to
    the position of the upper copy in order i.  Intersections then match
    edges exactly, so the boxicity of g is at most the realizer's size.
    """
    n = g.n
    if realizer.n != 2 * n:
        raise StructuralError(
            f"realizer covers {realizer.n} elements, doubled graph needs {2 * n}"
        )
    doubled = graph_to_doubled_poset(g)
    report = verify_realizer(doubled, realizer)
    if not report.ok:
        raise VerificationError(
            f"orders do not realize the doubled poset: {report.summary()}", report
        )
    boxes = {}
    for v in range(n):
        ivs = []
        for ranks in realizer.orders:
            ivs.append(Interval(ranks[v], ranks[n + v]))
        boxes[v] = Box(ivs)
    rep = BoxRepresentation(realizer.k, boxes)
    out = verify_box_rep(g, rep)
    if not out.ok:
        raise StructuralError(f"doubled realizer gave a bad representation: {out.summary()}")
    return rep


def realizer_from_boxes(p: Poset, rep: BoxRepresentation) -> List[Tuple[int, ...]]:
    """Witness orders for p from a representation of its comparability graph.

    Every dimension contributes two total orders: one by descending left
    endpoint and one by ascending right endpoint, ties broken by ascending
    element index.  The 2d orders satisfy the witness condition: for each
    incomparable ordered pair (x, y) some order puts x before the whole
    up-set of y.  They are generally not linear extensions of p.
    """
    comp = comparability_graph(p)
    report = verify_box_rep(comp, rep)
    if not report.ok:
        raise VerificationError(
            f"not a representation of the comparability graph: {report.summary()}",
            report,
        )
    orders: List[Tuple[int, ...]] = []
    verts = list(range(p.n))
    for i in range(rep.d):
        by_left = sorted(verts)
        by_left.sort(key=lambda v: rep.boxes[v].intervals[i].lo, reverse=True)
        orders.append(order_from_sequence(by_left))
        by_right = sorted(verts)
        by_right.sort(key=lambda v: rep.boxes[v].intervals[i].hi)
        orders.append(order_from_sequence(by_right))
    return orders


def _base_extension(p: Poset) -> List[int]:
    indeg = [0] * p.n
    for _, b in p.lt:
        indeg[b] += 1
    ready = [v for v in range(p.n) if indeg[v] == 0]
    heapify(ready)
    seq: List[int] = []
    while ready:
        v = heappop(ready)
        seq.append(v)
        for w in p.succ(v):
            indeg[w] -= 1
            if indeg[w] == 0:
                heappush(ready, w)
    if len(seq) != p.n:
        raise StructuralError("relation contains a cycle")
    return seq


def extensions_from_fk(p: Poset, orders: Sequence[Sequence[int]]) -> Realizer:
    """Turn witness orders into honest linear extensions realizing p.

    Each element is keyed by the best rank anything above it reaches in the
    witness order (itself included) and re-sorted by that key, ties broken
    by one fixed linear extension.  Smaller elements have larger up-sets, so
    keys never decrease downward and the result extends p; and when a
    witness order puts x before the whole up-set of y, x's key stays
    strictly below y's, so every witnessed pair stays reversed.
    """
    base = _base_extension(p)
    base_pos = {v: i for i, v in enumerate(base)}
    exts = []
    for order in orders:
        ranks = list(order)
        if len(ranks) != p.n:
            raise StructuralError("order length does not match the poset")
        key = [min(ranks[z] for z in p.up_set(v)) for v in range(p.n)]
        seq = sorted(range(p.n), key=lambda v: (key[v], base_pos[v]))
        exts.append(order_from_sequence(seq))
    return Realizer(p.n, exts)


@dataclass(frozen=True)
class DimensionResult:
    """Verified dimension certificate: orders plus the box certificate."""

    realizer: Realizer
    fk_orders: Tuple[Tuple[int, ...], ...]
    box_certificate: Certificate

    @property
    def k(self) -> int:
        return self.realizer.k

    def to_json(self) -> dict:
        return {
            "format": "boxlab-realizer",
            "k": self.k,
            "orders": [list(order_sequence(o)) for o in self.realizer.orders],
            "fk_orders": [list(order_sequence(o)) for o in self.fk_orders],
            "certificate": self.box_certificate.to_json(),
        }


def dimension_pipeline(p: Poset, seed: int) -> DimensionResult:
    """Bound the dimension of p through the boxicity of its comparability graph.

    Builds a degree-pipeline representation of the comparability graph,
    reads off 2d witness orders, checks the witness condition, converts the
    orders to linear extensions, and checks that those realize p.  Both
    checks always run; failure raises instead of returning.
    """
    comp = comparability_graph(p)
    cert = bounded_degree_rep(comp, seed)
    fk = realizer_from_boxes(p, cert.rep)
    report = verify_fk_realizer(p, fk)
    if not report.ok:
        raise VerificationError(f"witness condition failed: {report.summary()}", report)
    realizer = extensions_from_fk(p, fk)
    report = verify_realizer(p, realizer)
    if not report.ok:
        raise VerificationError(f"extensions do not realize the poset: {report.summary()}", report)
    return DimensionResult(realizer, tuple(fk), cert)
