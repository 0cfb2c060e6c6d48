"""Core types and verifiers.

Coordinates are extended integers (integers plus -inf/+inf sentinels), never
floats: every construction in this package places interval ends at positions
like 2b or 2b+1, so integer arithmetic is exact.  Intervals are closed, which
keeps "touching counts as intersecting" true at integer coordinates.

All types are immutable after construction (by convention: no mutators).
Operations are pure functions.  Verifiers return a VerifyReport instead of
raising, so callers can inspect violating pairs; structural problems
(mismatched vertex sets, malformed orders) raise StructuralError instead.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

import numpy as np

from .errors import ParameterError, StructuralError

# ---------------------------------------------------------------------------
# extended integers


class ExtInt:
    """An integer extended with -inf / +inf sentinels, totally ordered."""

    __slots__ = ("_kind", "_value")

    # _kind: -1 below all integers, 0 finite, +1 above all integers
    def __init__(self, value: int, _kind: int = 0):
        if _kind == 0 and not isinstance(value, int):
            raise StructuralError(f"ExtInt needs an int, got {type(value).__name__}")
        object.__setattr__(self, "_kind", _kind)
        object.__setattr__(self, "_value", int(value) if _kind == 0 else 0)

    def __setattr__(self, name, value):
        raise AttributeError("ExtInt is immutable")

    @property
    def is_finite(self) -> bool:
        return self._kind == 0

    @property
    def value(self) -> int:
        if self._kind != 0:
            raise StructuralError("infinite ExtInt has no integer value")
        return self._value

    def _key(self) -> Tuple[int, int]:
        return (self._kind, self._value)

    def __eq__(self, other) -> bool:
        return isinstance(other, ExtInt) and self._key() == other._key()

    def __lt__(self, other: "ExtInt") -> bool:
        return self._key() < other._key()

    def __le__(self, other: "ExtInt") -> bool:
        return self._key() <= other._key()

    def __gt__(self, other: "ExtInt") -> bool:
        return self._key() > other._key()

    def __ge__(self, other: "ExtInt") -> bool:
        return self._key() >= other._key()

    def __hash__(self) -> int:
        return hash(self._key())

    def __repr__(self) -> str:
        if self._kind < 0:
            return "-inf"
        if self._kind > 0:
            return "+inf"
        return str(self._value)

    def to_float(self) -> float:
        if self._kind < 0:
            return float("-inf")
        if self._kind > 0:
            return float("inf")
        return float(self._value)

    def to_json(self):
        if self._kind < 0:
            return "-inf"
        if self._kind > 0:
            return "+inf"
        return self._value

    @staticmethod
    def from_json(obj) -> "ExtInt":
        if obj == "-inf":
            return NEG_INF
        if obj == "+inf":
            return POS_INF
        if isinstance(obj, bool) or not isinstance(obj, int):
            raise StructuralError(f"bad coordinate {obj!r}")
        return ExtInt(obj)


NEG_INF = ExtInt(0, _kind=-1)
POS_INF = ExtInt(0, _kind=1)


def _coerce_coord(x) -> ExtInt:
    if isinstance(x, ExtInt):
        return x
    if isinstance(x, bool):
        raise StructuralError("bool is not a coordinate")
    if isinstance(x, int):
        return ExtInt(x)
    raise StructuralError(f"bad coordinate {x!r}")


# ---------------------------------------------------------------------------
# intervals and boxes


class Interval:
    """Closed interval [lo, hi] with extended-integer ends."""

    __slots__ = ("lo", "hi")

    def __init__(self, lo, hi):
        lo = _coerce_coord(lo)
        hi = _coerce_coord(hi)
        if hi < lo:
            raise StructuralError(f"empty interval [{lo}, {hi}]")
        object.__setattr__(self, "lo", lo)
        object.__setattr__(self, "hi", hi)

    def __setattr__(self, name, value):
        raise AttributeError("Interval is immutable")

    def intersects(self, other: "Interval") -> bool:
        return self.lo <= other.hi and other.lo <= self.hi

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Interval) and self.lo == other.lo and self.hi == other.hi
        )

    def __hash__(self) -> int:
        return hash((self.lo, self.hi))

    def __repr__(self) -> str:
        return f"[{self.lo}, {self.hi}]"

    def to_json(self):
        return [self.lo.to_json(), self.hi.to_json()]


FULL_LINE = Interval(NEG_INF, POS_INF)


class Box:
    """A product of closed intervals, one per dimension."""

    __slots__ = ("intervals",)

    def __init__(self, intervals: Iterable[Interval]):
        ivs = tuple(intervals)
        for iv in ivs:
            if not isinstance(iv, Interval):
                raise StructuralError("Box takes Interval components")
        object.__setattr__(self, "intervals", ivs)

    def __setattr__(self, name, value):
        raise AttributeError("Box is immutable")

    @property
    def d(self) -> int:
        return len(self.intervals)

    def intersects(self, other: "Box") -> bool:
        if self.d != other.d:
            raise StructuralError("boxes of different dimension")
        return all(a.intersects(b) for a, b in zip(self.intervals, other.intervals))

    def __eq__(self, other) -> bool:
        return isinstance(other, Box) and self.intervals == other.intervals

    def __hash__(self) -> int:
        return hash(self.intervals)

    def __repr__(self) -> str:
        return "Box(" + " x ".join(map(repr, self.intervals)) + ")"

    def to_json(self):
        return [iv.to_json() for iv in self.intervals]


def full_box(d: int) -> Box:
    return Box([FULL_LINE] * d)


class BoxRepresentation:
    """An assignment of a d-dimensional box to every vertex."""

    __slots__ = ("d", "boxes")

    def __init__(self, d: int, boxes: Dict[int, Box]):
        if d < 1:
            raise StructuralError("a representation needs at least one dimension")
        boxes = dict(boxes)
        for v, box in boxes.items():
            if box.d != d:
                raise StructuralError(
                    f"vertex {v} has a {box.d}-dimensional box, expected {d}"
                )
        object.__setattr__(self, "d", d)
        object.__setattr__(self, "boxes", boxes)

    def __setattr__(self, name, value):
        raise AttributeError("BoxRepresentation is immutable")

    def vertices(self) -> List[int]:
        return sorted(self.boxes)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, BoxRepresentation)
            and self.d == other.d
            and self.boxes == other.boxes
        )

    def to_json(self):
        return {str(v): self.boxes[v].to_json() for v in self.vertices()}

    @staticmethod
    def from_json(d: int, obj) -> "BoxRepresentation":
        boxes = {}
        for key, pairs in obj.items():
            try:
                v = int(key)
            except ValueError as exc:
                raise StructuralError(f"bad vertex key {key!r}") from exc
            ivs = []
            for pair in pairs:
                if not isinstance(pair, (list, tuple)) or len(pair) != 2:
                    raise StructuralError(f"bad interval {pair!r} for vertex {v}")
                ivs.append(Interval(ExtInt.from_json(pair[0]), ExtInt.from_json(pair[1])))
            boxes[v] = Box(ivs)
        return BoxRepresentation(d, boxes)

    def endpoint_arrays(self, order: Sequence[int]) -> Tuple[np.ndarray, np.ndarray]:
        """(lo, hi) float arrays of shape (d, len(order)).

        Finite coordinates in this package are small integers, so the float
        mapping is exact; the sentinels map to IEEE infinities.
        """
        m = len(order)
        lo = np.empty((self.d, m), dtype=np.float64)
        hi = np.empty((self.d, m), dtype=np.float64)
        for j, v in enumerate(order):
            box = self.boxes[v]
            for i, iv in enumerate(box.intervals):
                lo[i, j] = iv.lo.to_float()
                hi[i, j] = iv.hi.to_float()
        return lo, hi


def relabel_rep(rep: BoxRepresentation, mapping: Dict[int, int]) -> BoxRepresentation:
    """Rename the vertices of a representation through an injective mapping."""
    out = {}
    for v, box in rep.boxes.items():
        w = mapping[v]
        if w in out:
            raise StructuralError("relabel mapping is not injective")
        out[w] = box
    return BoxRepresentation(rep.d, out)


# ---------------------------------------------------------------------------
# graphs


class Graph:
    """Simple undirected graph on vertices 0..n-1, immutable."""

    __slots__ = ("n", "_edges", "_adj", "_adj_matrix")

    def __init__(self, n: int, edges: Iterable[Tuple[int, int]] = ()):
        if n < 0:
            raise StructuralError("negative vertex count")
        norm = set()
        adj: List[set] = [set() for _ in range(n)]
        for u, v in edges:
            u, v = int(u), int(v)
            if not (0 <= u < n and 0 <= v < n):
                raise StructuralError(f"edge ({u},{v}) outside 0..{n - 1}")
            if u == v:
                raise StructuralError(f"loop at vertex {u}")
            if u > v:
                u, v = v, u
            norm.add((u, v))
            adj[u].add(v)
            adj[v].add(u)
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "_edges", frozenset(norm))
        object.__setattr__(self, "_adj", tuple(frozenset(s) for s in adj))
        object.__setattr__(self, "_adj_matrix", None)

    def __setattr__(self, name, value):
        raise AttributeError("Graph is immutable")

    @property
    def edges(self) -> frozenset:
        return self._edges

    @property
    def m(self) -> int:
        return len(self._edges)

    def has_edge(self, u: int, v: int) -> bool:
        return v in self._adj[u]

    def neighbors(self, v: int) -> frozenset:
        return self._adj[v]

    def degree(self, v: int) -> int:
        return len(self._adj[v])

    def max_degree(self) -> int:
        return max((len(s) for s in self._adj), default=0)

    def is_complete(self) -> bool:
        return self.m == self.n * (self.n - 1) // 2

    def non_edges(self) -> List[Tuple[int, int]]:
        out = []
        for u in range(self.n):
            for v in range(u + 1, self.n):
                if v not in self._adj[u]:
                    out.append((u, v))
        return out

    def adjacency_matrix(self) -> np.ndarray:
        cached = self._adj_matrix
        if cached is None:
            mat = np.zeros((self.n, self.n), dtype=bool)
            for u, v in self._edges:
                mat[u, v] = True
                mat[v, u] = True
            object.__setattr__(self, "_adj_matrix", mat)
            cached = mat
        return cached

    def induced(self, vertices: Sequence[int]) -> Tuple["Graph", List[int]]:
        """Induced subgraph relabeled to 0..k-1; returns (graph, old ids)."""
        order = sorted(set(vertices))
        index = {v: i for i, v in enumerate(order)}
        edges = [
            (index[u], index[v])
            for u, v in self._edges
            if u in index and v in index
        ]
        return Graph(len(order), edges), order

    def complement(self) -> "Graph":
        return Graph(self.n, self.non_edges())

    def degeneracy_ordering(self) -> Tuple[List[int], int]:
        """Min-degree elimination order and the degeneracy it witnesses."""
        remaining = set(range(self.n))
        deg = {v: self.degree(v) for v in remaining}
        order: List[int] = []
        k = 0
        while remaining:
            v = min(remaining, key=lambda x: (deg[x], x))
            k = max(k, deg[v])
            order.append(v)
            remaining.remove(v)
            for w in self._adj[v]:
                if w in remaining:
                    deg[w] -= 1
        return order, k

    def __eq__(self, other) -> bool:
        return isinstance(other, Graph) and self.n == other.n and self._edges == other._edges

    def __hash__(self) -> int:
        return hash((self.n, self._edges))

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self.m})"


def complete_graph(n: int) -> Graph:
    return Graph(n, [(u, v) for u in range(n) for v in range(u + 1, n)])


# ---------------------------------------------------------------------------
# verification reports


@dataclass(frozen=True)
class VerifyReport:
    """Outcome of a verifier: all violations found, capped for storage.

    total counts every violation; violations stores at most `cap` of them.
    """

    total: int
    violations: Tuple[Tuple, ...]
    cap: int = 100

    @property
    def ok(self) -> bool:
        return self.total == 0

    def summary(self) -> str:
        if self.ok:
            return "ok"
        shown = "; ".join(str(v) for v in self.violations[:5])
        more = "" if self.total <= 5 else f" (+{self.total - 5} more)"
        return f"{self.total} violations: {shown}{more}"


def _make_report(violations: List[Tuple], total: int, cap: int) -> VerifyReport:
    return VerifyReport(total=total, violations=tuple(violations[:cap]), cap=cap)


# ---------------------------------------------------------------------------
# box-representation operations


def _pair_intersection_matrix(rep: BoxRepresentation, order: Sequence[int]) -> np.ndarray:
    lo, hi = rep.endpoint_arrays(order)
    m = len(order)
    inter = np.ones((m, m), dtype=bool)
    for i in range(rep.d):
        l, h = lo[i], hi[i]
        inter &= (l[:, None] <= h[None, :]) & (l[None, :] <= h[:, None])
    return inter


def intersection_graph(rep: BoxRepresentation) -> Graph:
    """The graph whose edges are exactly the pairwise box intersections."""
    order = rep.vertices()
    if order != list(range(len(order))):
        raise StructuralError("intersection_graph needs vertices 0..n-1")
    inter = _pair_intersection_matrix(rep, order)
    n = len(order)
    edges = [(u, v) for u in range(n) for v in range(u + 1, n) if inter[u, v]]
    return Graph(n, edges)


def verify_box_rep(g: Graph, rep: BoxRepresentation, cap: int = 100) -> VerifyReport:
    """Check rep against g: every edge intersects, every non-edge does not.

    O(d n^2) pair checks, vectorized.  Missing boxes are structural errors,
    not violations.
    """
    order = list(range(g.n))
    for v in order:
        if v not in rep.boxes:
            raise StructuralError(f"vertex {v} has no box")
    inter = _pair_intersection_matrix(rep, order)
    adj = g.adjacency_matrix()
    missing = adj & ~inter
    spurious = ~adj & inter
    np.fill_diagonal(spurious, False)
    violations: List[Tuple] = []
    total = 0
    for kind, mat in (("missing_edge", missing), ("spurious_intersection", spurious)):
        us, vs = np.nonzero(np.triu(mat, k=1))
        total += len(us)
        for u, v in zip(us.tolist(), vs.tolist()):
            if len(violations) < cap:
                violations.append((kind, u, v))
    return _make_report(violations, total, cap)


def product_compose(reps: Sequence[BoxRepresentation]) -> BoxRepresentation:
    """Concatenate representations; realizes the intersection of their graphs."""
    if not reps:
        raise StructuralError("nothing to compose")
    verts = set(reps[0].boxes)
    for rep in reps[1:]:
        if set(rep.boxes) != verts:
            raise StructuralError("mismatched vertex sets in composition")
    d = sum(rep.d for rep in reps)
    boxes = {}
    for v in verts:
        ivs: List[Interval] = []
        for rep in reps:
            ivs.extend(rep.boxes[v].intervals)
        boxes[v] = Box(ivs)
    return BoxRepresentation(d, boxes)


def extend_full(rep: BoxRepresentation, extra: Iterable[int]) -> BoxRepresentation:
    """Add vertices covering the whole space in every dimension."""
    boxes = dict(rep.boxes)
    filler = full_box(rep.d)
    for v in extra:
        if v in boxes:
            raise StructuralError(f"vertex {v} already present")
        boxes[v] = filler
    return BoxRepresentation(rep.d, boxes)


# ---------------------------------------------------------------------------
# graph completions


def local_supergraph(g: Graph, x: Iterable[int]) -> Graph:
    """Complete every pair that meets V minus X; non-edges inside X survive."""
    xs = set(x)
    for v in xs:
        if not (0 <= v < g.n):
            raise StructuralError(f"vertex {v} outside graph")
    edges = set(g.edges)
    for u in range(g.n):
        for v in range(u + 1, g.n):
            if u not in xs or v not in xs:
                edges.add((u, v))
    return Graph(g.n, edges)


def bipartite_supergraph(g: Graph, x: Iterable[int], y: Iterable[int]) -> Graph:
    """Keep only the X-Y non-edges of g; every other pair becomes an edge."""
    xs, ys = set(x), set(y)
    if xs & ys:
        raise StructuralError("X and Y overlap")
    for v in xs | ys:
        if not (0 <= v < g.n):
            raise StructuralError(f"vertex {v} outside graph")
    edges = set(g.edges)
    for u in range(g.n):
        for v in range(u + 1, g.n):
            crosses = (u in xs and v in ys) or (u in ys and v in xs)
            if not crosses:
                edges.add((u, v))
    return Graph(g.n, edges)


# ---------------------------------------------------------------------------
# posets


class Poset:
    """A strict partial order on 0..n-1, stored transitively closed."""

    __slots__ = ("n", "_lt", "_succ", "_pred")

    def __init__(self, n: int, lt: Iterable[Tuple[int, int]]):
        if n < 0:
            raise StructuralError("negative element count")
        rel = set()
        for a, b in lt:
            a, b = int(a), int(b)
            if not (0 <= a < n and 0 <= b < n):
                raise StructuralError(f"pair ({a},{b}) outside 0..{n - 1}")
            if a == b:
                raise StructuralError(f"reflexive pair at {a}")
            rel.add((a, b))
        succ: List[set] = [set() for _ in range(n)]
        pred: List[set] = [set() for _ in range(n)]
        for a, b in rel:
            if (b, a) in rel:
                raise StructuralError(f"antisymmetry violated on ({a},{b})")
            succ[a].add(b)
            pred[b].add(a)
        for a, b in rel:
            for c in succ[b]:
                if (a, c) not in rel:
                    raise StructuralError(
                        f"not transitively closed: ({a},{b}),({b},{c}) without ({a},{c})"
                    )
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "_lt", frozenset(rel))
        object.__setattr__(self, "_succ", tuple(frozenset(s) for s in succ))
        object.__setattr__(self, "_pred", tuple(frozenset(s) for s in pred))

    def __setattr__(self, name, value):
        raise AttributeError("Poset is immutable")

    @staticmethod
    def from_relations(n: int, pairs: Iterable[Tuple[int, int]]) -> "Poset":
        """Build from generating pairs: closes transitively, rejects cycles."""
        succ: List[set] = [set() for _ in range(n)]
        for a, b in pairs:
            a, b = int(a), int(b)
            if not (0 <= a < n and 0 <= b < n):
                raise StructuralError(f"pair ({a},{b}) outside 0..{n - 1}")
            if a == b:
                raise StructuralError(f"reflexive pair at {a}")
            succ[a].add(b)
        # transitive closure by DFS from every element
        closed: List[set] = [set() for _ in range(n)]
        for a in range(n):
            stack = list(succ[a])
            seen = set()
            while stack:
                b = stack.pop()
                if b in seen:
                    continue
                seen.add(b)
                stack.extend(succ[b])
            if a in seen:
                raise StructuralError(f"cycle through element {a}")
            closed[a] = seen
        return Poset(n, [(a, b) for a in range(n) for b in closed[a]])

    @property
    def lt(self) -> frozenset:
        return self._lt

    def less(self, a: int, b: int) -> bool:
        return (a, b) in self._lt

    def up_set(self, y: int) -> frozenset:
        """All z with y <= z, including y itself."""
        return self._succ[y] | {y}

    def succ(self, a: int) -> frozenset:
        return self._succ[a]

    def pred(self, a: int) -> frozenset:
        return self._pred[a]

    def incomparable_pairs(self) -> List[Tuple[int, int]]:
        """Ordered pairs (x, y), x != y, unrelated in the order."""
        out = []
        for x in range(self.n):
            for y in range(self.n):
                if x != y and (x, y) not in self._lt and (y, x) not in self._lt:
                    out.append((x, y))
        return out

    def minimal_cover_pairs(self) -> List[Tuple[int, int]]:
        """Covering pairs (a, b): a < b with nothing strictly between."""
        out = []
        for a, b in self._lt:
            if not any((a, c) in self._lt and (c, b) in self._lt for c in self._succ[a]):
                out.append((a, b))
        return sorted(out)

    def __eq__(self, other) -> bool:
        return isinstance(other, Poset) and self.n == other.n and self._lt == other._lt

    def __hash__(self) -> int:
        return hash((self.n, self._lt))

    def __repr__(self) -> str:
        return f"Poset(n={self.n}, |<|={len(self._lt)})"


def comparability_graph(p: Poset) -> Graph:
    return Graph(p.n, list(p.lt))


# ---------------------------------------------------------------------------
# realizers and total orders
#
# A total order on 0..n-1 is stored in position form: order[x] is the rank of
# element x, a bijection onto 1..n.  Rank 1 comes first ("least").


def check_order(order: Sequence[int], n: int) -> Tuple[int, ...]:
    order = tuple(int(r) for r in order)
    if len(order) != n or sorted(order) != list(range(1, n + 1)):
        raise StructuralError("order is not a bijection onto ranks 1..n")
    return order


def order_sequence(order: Sequence[int]) -> List[int]:
    """Elements from least to greatest rank."""
    return sorted(range(len(order)), key=lambda x: order[x])


def order_from_sequence(seq: Sequence[int]) -> Tuple[int, ...]:
    ranks = [0] * len(seq)
    for pos, x in enumerate(seq, start=1):
        ranks[x] = pos
    return tuple(ranks)


class Realizer:
    """A list of total orders whose intersection is meant to be a poset."""

    __slots__ = ("n", "orders")

    def __init__(self, n: int, orders: Iterable[Sequence[int]]):
        checked = tuple(check_order(o, n) for o in orders)
        if not checked:
            raise StructuralError("a realizer needs at least one order")
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "orders", checked)

    def __setattr__(self, name, value):
        raise AttributeError("Realizer is immutable")

    @property
    def k(self) -> int:
        return len(self.orders)

    def to_json(self):
        return [list(o) for o in self.orders]


def verify_realizer(p: Poset, realizer: Realizer, cap: int = 100) -> VerifyReport:
    """Empty report iff the intersection of the orders equals the poset."""
    if realizer.n != p.n:
        raise StructuralError("realizer and poset sizes differ")
    n = p.n
    ranks = np.array(realizer.orders, dtype=np.int64)  # (k, n)
    before_all = np.ones((n, n), dtype=bool)
    for i in range(ranks.shape[0]):
        r = ranks[i]
        before_all &= r[:, None] < r[None, :]
    rel = np.zeros((n, n), dtype=bool)
    for a, b in p.lt:
        rel[a, b] = True
    mismatch = before_all ^ rel
    np.fill_diagonal(mismatch, False)
    violations: List[Tuple] = []
    total = 0
    us, vs = np.nonzero(mismatch)
    for a, b in zip(us.tolist(), vs.tolist()):
        total += 1
        if len(violations) < cap:
            kind = "missing_relation" if rel[a, b] else "extra_relation"
            violations.append((kind, a, b))
    return _make_report(violations, total, cap)


def verify_fk_realizer(
    p: Poset, orders: Iterable[Sequence[int]], cap: int = 100
) -> VerifyReport:
    """Check the witness condition for arbitrary total orders.

    Empty report iff for every incomparable ordered pair (x, y) some order
    puts x strictly before every z with y <= z (y itself included).  Orders
    need not be linear extensions of the poset.
    """
    order_list = [check_order(o, p.n) for o in orders]
    if not order_list:
        raise StructuralError("no orders given")
    n = p.n
    ranks = np.array(order_list, dtype=np.int64)  # (k, n)
    k = ranks.shape[0]
    # min rank over the up-set of each y, for every order
    up_min = np.empty((k, n), dtype=np.int64)
    for y in range(n):
        members = sorted(p.up_set(y))
        up_min[:, y] = ranks[:, members].min(axis=1)
    violations: List[Tuple] = []
    total = 0
    for x, y in p.incomparable_pairs():
        if not bool((ranks[:, x] < up_min[:, y]).any()):
            total += 1
            if len(violations) < cap:
                violations.append(("unwitnessed_pair", x, y))
    return _make_report(violations, total, cap)
