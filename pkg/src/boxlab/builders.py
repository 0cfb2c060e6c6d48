"""Box-representation builders.

Each builder returns a representation that has already been checked against
its target graph; callers never receive an unverified result.  The public
functions return the representation alone.  Matching ``_*_with_witness``
variants also return a dict of reproduction data (permutations, colourings,
orderings) that certificates embed.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, FrozenSet, Iterable, List, Optional, Sequence, Tuple

import numpy as np

from .core import (
    NEG_INF,
    POS_INF,
    Box,
    BoxRepresentation,
    Graph,
    Interval,
    bipartite_supergraph,
    full_box,
    product_compose,
    relabel_rep,
    verify_box_rep,
)
from .errors import (
    ParameterError,
    RandomizedFailureError,
    StructuralError,
    VerificationError,
)
from .exact import _model_from_order
from .formulas import bipartite_params, caught_t, degen_t, degen_target
from .resampling import family_colourings
from .seeds import derive_seed, resolve_retry_cap, rng_for
from .suitable import PermutationFamily, build_suitable


def _check_self(g: Graph, rep: BoxRepresentation, who: str) -> None:
    report = verify_box_rep(g, rep)
    if not report.ok:
        raise StructuralError(f"{who} produced an invalid representation: {report.summary()}")


# ---------------------------------------------------------------------------
# the two-dimensional span gadget


@dataclass(frozen=True)
class SpanGadgetSpec:
    """Inputs of the span gadget.

    order lists one side of a bipartite-style pattern in left-to-right
    position order (positions are 1-based).  spans maps each vertex of the
    other side either to the 1-based position range of its neighbours in
    that order, or to None when it has none.
    """

    order: Tuple[int, ...]
    spans: Dict[int, Optional[Tuple[int, int]]] = field(default_factory=dict)


def span_gadget(spec: SpanGadgetSpec, vertices: Iterable[int]) -> BoxRepresentation:
    """Two dimensions realizing exactly the pairs (a, b) with b inside a's span.

    A vertex b at position p gets the quadrant (-inf, 2p] x [2p, +inf); a
    vertex a with span (lo, hi) gets [2lo-1, +inf) x (-inf, 2hi+1].  Those
    intersect exactly when lo <= p <= hi.  A span-less vertex sits at the
    point (2m, -2m), m = len(order), which misses every quadrant but meets
    every other span box.  Vertices in neither role cover the whole plane.
    """
    verts = sorted(set(int(v) for v in vertices))
    vert_set = set(verts)
    m = len(spec.order)
    if len(set(spec.order)) != m:
        raise StructuralError("span gadget order repeats a vertex")
    boxes: Dict[int, Box] = {}
    for p, b in enumerate(spec.order, start=1):
        if b not in vert_set:
            raise StructuralError(f"ordered vertex {b} not in the vertex set")
        boxes[b] = Box([Interval(NEG_INF, 2 * p), Interval(2 * p, POS_INF)])
    for a, span in spec.spans.items():
        if a not in vert_set:
            raise StructuralError(f"span vertex {a} not in the vertex set")
        if a in boxes:
            raise StructuralError(f"vertex {a} is on both sides of the gadget")
        if span is None:
            boxes[a] = Box([Interval(2 * m, 2 * m), Interval(-2 * m, -2 * m)])
        else:
            lo, hi = span
            if not (1 <= lo <= hi <= m):
                raise StructuralError(f"span {span} of vertex {a} out of range 1..{m}")
            boxes[a] = Box([Interval(2 * lo - 1, POS_INF), Interval(NEG_INF, 2 * hi + 1)])
    filler = full_box(2)
    for v in verts:
        if v not in boxes:
            boxes[v] = filler
    return BoxRepresentation(2, boxes)


# ---------------------------------------------------------------------------
# pair elimination


def _pair_elimination_with_witness(g: Graph):
    n = g.n
    alive = set(range(n))
    columns: List[Dict[int, Interval]] = []
    pairs: List[Tuple[int, int]] = []
    while True:
        pick = None
        live = sorted(alive)
        for i, a in enumerate(live):
            for b in live[i + 1 :]:
                if not g.has_edge(a, b):
                    pick = (a, b)
                    break
            if pick:
                break
        if pick is None:
            break
        a, b = pick
        col: Dict[int, Interval] = {}
        for v in range(n):
            if v == a:
                col[v] = Interval(-2, -1)
            elif v == b:
                col[v] = Interval(1, 2)
            elif v not in alive:
                col[v] = Interval(NEG_INF, POS_INF)
            else:
                hit_a = g.has_edge(v, a)
                hit_b = g.has_edge(v, b)
                if hit_a and hit_b:
                    col[v] = Interval(-2, 2)
                elif hit_a:
                    col[v] = Interval(-2, 0)
                elif hit_b:
                    col[v] = Interval(0, 2)
                else:
                    col[v] = Interval(0, 0)
        columns.append(col)
        pairs.append((a, b))
        alive.discard(a)
        alive.discard(b)
    if columns:
        boxes = {v: Box([col[v] for col in columns]) for v in range(n)}
        rep = BoxRepresentation(len(columns), boxes)
    else:
        rep = BoxRepresentation(1, {v: Box([Interval(0, 0)]) for v in range(n)})
    _check_self(g, rep, "pair_elimination_rep")
    return rep, {"pairs": [[a, b] for a, b in pairs]}


def pair_elimination_rep(g: Graph) -> BoxRepresentation:
    """Roberts-style elimination: one dimension per deleted non-adjacent pair.

    Picks the lexicographically lowest non-adjacent pair {a, b} among the
    remaining vertices, emits one dimension separating every non-edge at a
    or b, deletes both, and repeats.  A graph left complete needs nothing
    more, so the dimension never exceeds max(1, n // 2).
    """
    rep, _ = _pair_elimination_with_witness(g)
    return rep


# ---------------------------------------------------------------------------
# caught permutations


def _span_in(order: Sequence[int], nbrs) -> Optional[Tuple[int, int]]:
    pos = None
    lo = hi = 0
    for p, w in enumerate(order, start=1):
        if w in nbrs:
            if pos is None:
                lo = p
            hi = p
            pos = p
    if pos is None:
        return None
    return lo, hi


def _catches(order_pos: Dict[int, int], span: Optional[Tuple[int, int]], w: int) -> bool:
    if span is None:
        return False
    lo, hi = span
    return lo < order_pos[w] < hi


def _caught_with_witness(g: Graph, a_side, b_side, k: int, seed: int):
    a = sorted(set(int(v) for v in a_side))
    b = sorted(set(int(v) for v in b_side))
    if set(a) & set(b):
        raise ParameterError("the two sides overlap")
    for v in a + b:
        if not (0 <= v < g.n):
            raise ParameterError(f"vertex {v} outside the graph")
    if k < 1:
        raise ParameterError("degree bound k must be at least 1")
    b_set = set(b)
    nbrs_in_b = {v: g.neighbors(v) & b_set for v in a}
    worst = max((len(nb) for nb in nbrs_in_b.values()), default=0)
    if worst > k:
        raise ParameterError(f"a vertex on the small side has {worst} > k = {k} neighbours")
    target = bipartite_supergraph(g, a, b)
    non_edges = [(v, w) for v in a for w in b if not g.has_edge(v, w)]
    if not non_edges or g.n < 2:
        rep = BoxRepresentation(1, {v: Box([Interval(0, 0)]) for v in range(g.n)})
        _check_self(target, rep, "caught_permutation_rep")
        return rep, {"k": k, "t": 0, "perms": []}
    t = caught_t(k, g.n)
    rng = rng_for(seed, "caught")
    cap = resolve_retry_cap(64)
    for _ in range(cap):
        perms = []
        for _i in range(t):
            seq = b[:]
            rng.shuffle(seq)
            perms.append(seq)
        data = []
        for seq in perms:
            pos = {w: p for p, w in enumerate(seq, start=1)}
            spans = {v: _span_in(seq, nbrs_in_b[v]) for v in a}
            data.append((pos, spans))
        if all(
            any(not _catches(pos, spans[v], w) for pos, spans in data)
            for v, w in non_edges
        ):
            gadgets = [
                span_gadget(SpanGadgetSpec(tuple(seq), spans), range(g.n))
                for seq, (_pos, spans) in zip(perms, data)
            ]
            rep = product_compose(gadgets)
            _check_self(target, rep, "caught_permutation_rep")
            return rep, {"k": k, "t": t, "perms": [list(seq) for seq in perms]}
    raise RandomizedFailureError(
        f"no catch-free family of {t} permutations found", attempts=cap
    )


def caught_permutation_rep(
    g: Graph, a_side, b_side, k: int, seed: int
) -> BoxRepresentation:
    """Realize the cross non-edges between two sides via random permutations.

    Requires every a_side vertex to have at most k neighbours in b_side.  A
    permutation sigma of b_side catches the non-edge vw when w falls strictly
    between v's leftmost and rightmost neighbour; a family where every
    non-edge escapes some permutation yields two dimensions per permutation
    through the span gadget.  Samples t = ceil(1.5 (k+1) ln n) permutations
    and resamples the whole family until catch-free.
    """
    rep, _ = _caught_with_witness(g, a_side, b_side, k, seed)
    return rep


# ---------------------------------------------------------------------------
# sparse graphs: hull dimensions from random vertex orders


def _closed_hulls(g: Graph):
    flat: List[int] = []
    offsets: List[int] = []
    for v in range(g.n):
        offsets.append(len(flat))
        flat.append(v)
        flat.extend(sorted(g.neighbors(v)))
    return np.asarray(flat, dtype=np.int64), np.asarray(offsets, dtype=np.int64)


def _degenerate_with_witness(g: Graph, k: int, seed: int):
    if k < 0:
        raise ParameterError("degeneracy bound must be non-negative")
    _, degen = g.degeneracy_ordering()
    if degen > k:
        raise ParameterError(f"graph is {degen}-degenerate, above the stated k = {k}")
    n = g.n
    base = {"k": k, "fallback": False}
    if n <= 1 or g.is_complete():
        rep = BoxRepresentation(1, {v: Box([Interval(0, 0)]) for v in range(n)})
        _check_self(g, rep, "degenerate_rep")
        return rep, dict(base, route="complete", target_d=1, perms=[])
    target_d = degen_target(k, n)
    if max(1, n // 2) <= target_d:
        # pair elimination already meets the target and is far cheaper at
        # this size; it doubles as the sanctioned fallback below.
        rep, w = _pair_elimination_with_witness(g)
        return rep, dict(base, route="pairs", target_d=target_d, pairs=w["pairs"])
    t = degen_t(k, n)
    non_edges = g.non_edges()
    u_arr = np.asarray([u for u, _ in non_edges], dtype=np.int64)
    v_arr = np.asarray([v for _, v in non_edges], dtype=np.int64)
    flat, offsets = _closed_hulls(g)
    rng = rng_for(seed, "degenerate")
    pos = np.empty(n, dtype=np.int64)
    for _restart in range(8):
        perms = []
        for _i in range(t):
            seq = list(range(n))
            rng.shuffle(seq)
            perms.append(seq)
        uncaught_rows = []
        for seq in perms:
            pos[np.asarray(seq, dtype=np.int64)] = np.arange(1, n + 1, dtype=np.int64)
            p = pos[flat]
            lo = np.minimum.reduceat(p, offsets)
            hi = np.maximum.reduceat(p, offsets)
            caught = (
                (lo[v_arr] <= pos[u_arr])
                & (pos[u_arr] <= hi[v_arr])
                & (lo[u_arr] <= pos[v_arr])
                & (pos[v_arr] <= hi[u_arr])
            )
            uncaught_rows.append(~caught)
        covered = np.zeros(len(non_edges), dtype=bool)
        for row in uncaught_rows:
            covered |= row
        if not covered.all():
            continue
        remaining = np.ones(len(non_edges), dtype=bool)
        chosen: List[int] = []
        used = set()
        while remaining.any():
            best, best_cnt = -1, 0
            for i, row in enumerate(uncaught_rows):
                if i in used:
                    continue
                cnt = int(np.count_nonzero(row & remaining))
                if cnt > best_cnt:
                    best, best_cnt = i, cnt
            if best < 0:
                break
            used.add(best)
            chosen.append(best)
            remaining &= ~uncaught_rows[best]
        if remaining.any() or 2 * len(chosen) + 1 > target_d:
            continue
        dims: List[BoxRepresentation] = []
        for i in chosen:
            seq = perms[i]
            pos[np.asarray(seq, dtype=np.int64)] = np.arange(1, n + 1, dtype=np.int64)
            p = pos[flat]
            lo = np.minimum.reduceat(p, offsets)
            hi = np.maximum.reduceat(p, offsets)
            boxes = {
                v: Box(
                    [
                        Interval(2 * int(lo[v]) - 1, 2 * int(pos[v])),
                        Interval(2 * int(pos[v]), 2 * int(hi[v]) + 1),
                    ]
                )
                for v in range(n)
            }
            dims.append(BoxRepresentation(2, boxes))
        dims.append(BoxRepresentation(1, {v: Box([Interval(0, 0)]) for v in range(n)}))
        rep = product_compose(dims)
        _check_self(g, rep, "degenerate_rep")
        witness = dict(
            base,
            route="perms",
            target_d=target_d,
            t=t,
            perms=[perms[i] for i in chosen],
        )
        return rep, witness
    rep, w = _pair_elimination_with_witness(g)
    witness = dict(base, route="pairs", target_d=target_d, pairs=w["pairs"])
    witness["fallback"] = True
    return rep, witness


def degenerate_rep(g: Graph, k: int, seed: int) -> BoxRepresentation:
    """Representation of a k-degenerate graph from random vertex orders.

    Each sampled order sigma contributes two dimensions per vertex built
    from the hull of its closed neighbourhood: [2L-1, 2 sigma(v)] x
    [2 sigma(v), 2R+1] with L, R the extreme positions of N[v].  Edges
    always intersect; the non-edge uv survives unless sigma(u) lands in v's
    hull and vice versa.  A greedy pass keeps just enough orders to cover
    every non-edge, plus one all-identical dimension, retrying up to 8
    times before falling back to pair elimination (marked in the witness).
    """
    rep, _ = _degenerate_with_witness(g, k, seed)
    return rep


# ---------------------------------------------------------------------------
# bipartite patterns through colourings and suitable families


def _greedy_colouring(adj: List[set]) -> List[int]:
    """Greedy classes in descending-degree order, 1-based, <= maxdeg + 1."""
    m = len(adj)
    order = sorted(range(m), key=lambda i: (-len(adj[i]), i))
    colour = [0] * m
    for i in order:
        taken = {colour[j] for j in adj[i] if colour[j]}
        c = 1
        while c in taken:
            c += 1
        colour[i] = c
    return colour


def _suitable_over_classes(h: int, k: int, seed: int) -> List[Tuple[int, ...]]:
    if h == 1:
        return [(1,)]
    fam = build_suitable(h, min(k, h), seed)
    return list(fam.perms)


def _bipartite_suitable_with_witness(g: Graph, a_side, b_side, d: int, delta: int, seed: int):
    a = sorted(set(int(v) for v in a_side))
    b = sorted(set(int(v) for v in b_side))
    if set(a) & set(b):
        raise ParameterError("the two sides overlap")
    for v in a + b:
        if not (0 <= v < g.n):
            raise ParameterError(f"vertex {v} outside the graph")
    if not (2 <= d <= delta):
        raise ParameterError("need degree bounds delta >= d >= 2")
    b_set = set(b)
    a_set = set(a)
    d_act = max((len(g.neighbors(v) & b_set) for v in a), default=0)
    delta_act = max((len(g.neighbors(w) & a_set) for w in b), default=0)
    if d_act > d:
        raise ParameterError(f"small-side degree {d_act} exceeds d = {d}")
    if delta_act > delta:
        raise ParameterError(f"large-side degree {delta_act} exceeds delta = {delta}")
    r, ell, t = bipartite_params(d, delta)
    target = bipartite_supergraph(g, a, b)
    base = {"r": r, "ell": ell, "t": t, "d": d, "delta": delta}
    if not any(not g.has_edge(v, w) for v in a for w in b):
        rep = BoxRepresentation(1, {v: Box([Interval(0, 0)]) for v in range(g.n)})
        _check_self(target, rep, "bipartite_suitable_rep")
        return rep, dict(base, p_max=0, blocks=[])
    fam = family_colourings(g, a, b, r, ell, t, seed)
    by_index: Dict[int, List[int]] = {}
    for v in a:
        by_index.setdefault(fam.assignment[v], []).append(v)
    dims: List[BoxRepresentation] = []
    blocks = []
    p_max = 0
    for j in range(1, t + 1):
        a_j = by_index.get(j)
        if not a_j:
            continue
        cmap = fam.colour_map(j)
        buckets: Dict[int, List[int]] = {}
        for w in b:
            buckets.setdefault(cmap[w], []).append(w)
        for alpha in sorted(buckets):
            b_ja = buckets[alpha]
            index_of = {w: i for i, w in enumerate(b_ja)}
            adj: List[set] = [set() for _ in b_ja]
            nbrs_here = {}
            for v in a_j:
                nb = sorted(g.neighbors(v) & set(b_ja))
                nbrs_here[v] = nb
                for x in range(len(nb)):
                    for y in range(x + 1, len(nb)):
                        i1, i2 = index_of[nb[x]], index_of[nb[y]]
                        adj[i1].add(i2)
                        adj[i2].add(i1)
            colour = _greedy_colouring(adj)
            h = max(colour)
            classes = [
                [w for w in b_ja if colour[index_of[w]] == c] for c in range(1, h + 1)
            ]
            perms = _suitable_over_classes(
                h, r + 1, derive_seed(seed, "block", j, alpha)
            )
            p_max = max(p_max, len(perms))
            for pa in perms:
                class_order = sorted(range(h), key=lambda c: pa[c])
                fwd: List[int] = []
                rev: List[int] = []
                for c in class_order:
                    fwd.extend(classes[c])
                    rev.extend(reversed(classes[c]))
                for seq in (fwd, rev):
                    pos = {w: p for p, w in enumerate(seq, start=1)}
                    spans = {}
                    for v in a_j:
                        nb = nbrs_here[v]
                        if nb:
                            ps = [pos[w] for w in nb]
                            spans[v] = (min(ps), max(ps))
                        else:
                            spans[v] = None
                    dims.append(span_gadget(SpanGadgetSpec(tuple(seq), spans), range(g.n)))
            blocks.append(
                {
                    "j": j,
                    "alpha": alpha,
                    "classes": classes,
                    "perms": [list(pa) for pa in perms],
                }
            )
    rep = product_compose(dims)
    _check_self(target, rep, "bipartite_suitable_rep")
    witness = dict(base, p_max=p_max, blocks=blocks, colourings=fam.to_json())
    return rep, witness


def bipartite_suitable_rep(
    g: Graph, a_side, b_side, d: int, delta: int, seed: int
) -> BoxRepresentation:
    """Realize the cross non-edges of an unbalanced bipartite pattern.

    Degrees must stay within d on a_side and delta on b_side, delta >= d >= 2.
    Draws t colourings of b_side in ell colours until every a_side vertex
    certifies one (at most r neighbours of every colour), groups b_side by
    certified colouring and colour, splits each group into classes with no
    common a-neighbour, and runs an (r+1)-suitable family of class orders
    through the span gadget, forwards and reversed within classes.  The
    dimension is at most 4 t ell p with p the largest family used.
    """
    rep, _ = _bipartite_suitable_with_witness(g, a_side, b_side, d, delta, seed)
    return rep


# ---------------------------------------------------------------------------
# tree decompositions


@dataclass(frozen=True)
class TreeDecomposition:
    """Bags keyed by 1-based id plus tree edges between bag ids."""

    bags: Dict[int, FrozenSet[int]]
    tree_edges: Tuple[Tuple[int, int], ...]

    @property
    def width(self) -> int:
        return max((len(bag) for bag in self.bags.values()), default=1) - 1


def validate_tree_decomposition(g: Graph, td: TreeDecomposition) -> int:
    """Check the three decomposition properties; returns the width."""
    ids = sorted(td.bags)
    if not ids:
        raise StructuralError("decomposition has no bags")
    neigh: Dict[int, List[int]] = {i: [] for i in ids}
    for i, j in td.tree_edges:
        if i not in td.bags or j not in td.bags:
            raise StructuralError(f"tree edge ({i},{j}) references a missing bag")
        neigh[i].append(j)
        neigh[j].append(i)
    if len(td.tree_edges) != len(ids) - 1:
        raise StructuralError("bag tree must have exactly #bags - 1 edges")
    seen = {ids[0]}
    stack = [ids[0]]
    while stack:
        x = stack.pop()
        for y in neigh[x]:
            if y not in seen:
                seen.add(y)
                stack.append(y)
    if len(seen) != len(ids):
        raise StructuralError("bag tree is disconnected")
    holds: Dict[int, List[int]] = {}
    for i in ids:
        for v in td.bags[i]:
            if not (0 <= v < g.n):
                raise StructuralError(f"bag {i} contains vertex {v} outside the graph")
            holds.setdefault(v, []).append(i)
    for v in range(g.n):
        nodes = holds.get(v)
        if not nodes:
            raise StructuralError(f"vertex {v} is in no bag")
        node_set = set(nodes)
        comp = {nodes[0]}
        stack = [nodes[0]]
        while stack:
            x = stack.pop()
            for y in neigh[x]:
                if y in node_set and y not in comp:
                    comp.add(y)
                    stack.append(y)
        if len(comp) != len(node_set):
            raise StructuralError(f"bags containing vertex {v} are not connected")
    for u, v in g.edges:
        if not any(u in td.bags[i] and v in td.bags[i] for i in ids):
            raise StructuralError(f"edge ({u},{v}) is in no bag")
    return td.width


def min_degree_decomposition(g: Graph) -> TreeDecomposition:
    """Heuristic decomposition from the min-degree elimination ordering."""
    if g.n == 0:
        return TreeDecomposition({1: frozenset()}, ())
    work = {v: set(g.neighbors(v)) for v in range(g.n)}
    bags: Dict[int, FrozenSet[int]] = {}
    elim_pos: Dict[int, int] = {}
    fill_nbrs: List[set] = []
    for step in range(1, g.n + 1):
        v = min(work, key=lambda u: (len(work[u]), u))
        nb = set(work[v])
        bags[step] = frozenset(nb | {v})
        elim_pos[v] = step
        fill_nbrs.append(nb)
        for x in nb:
            work[x].discard(v)
            work[x] |= nb - {x}
        del work[v]
    edges = []
    for step in range(1, g.n):
        nb = fill_nbrs[step - 1]
        if nb:
            parent = min(elim_pos[x] for x in nb)
        else:
            parent = step + 1
        edges.append((step, parent))
    return TreeDecomposition(bags, tuple(edges))


def _split_sides(td: TreeDecomposition, edge: Tuple[int, int]):
    """Bag ids on each side of a removed tree edge."""
    i, j = edge
    neigh: Dict[int, List[int]] = {x: [] for x in td.bags}
    for x, y in td.tree_edges:
        if (x, y) != edge and (y, x) != edge:
            neigh[x].append(y)
            neigh[y].append(x)
    side = {i}
    stack = [i]
    while stack:
        x = stack.pop()
        for y in neigh[x]:
            if y not in side:
                side.add(y)
                stack.append(y)
    return side, set(td.bags) - side


def _order_candidates(g: Graph, td: TreeDecomposition) -> List[List[int]]:
    """Vertex orders suggested by the decomposition's structure."""
    cands: List[List[int]] = []
    for edge in td.tree_edges:
        left_ids, right_ids = _split_sides(td, edge)
        on_left = set().union(*(td.bags[i] for i in left_ids)) if left_ids else set()
        on_right = set().union(*(td.bags[i] for i in right_ids)) if right_ids else set()
        sep = on_left & on_right
        l_only = sorted(on_left - sep)
        r_only = sorted(on_right - sep)
        mid = sorted(sep)
        cands.append(l_only + mid + r_only)
        cands.append(r_only + mid + l_only)
    ids = sorted(td.bags)
    root = ids[0]
    neigh: Dict[int, List[int]] = {x: [] for x in ids}
    for x, y in td.tree_edges:
        neigh[x].append(y)
        neigh[y].append(x)
    depth = {root: 0}
    visit = {root: 0}
    stack = [root]
    clock = 0
    while stack:
        x = stack.pop()
        for y in sorted(neigh[x], reverse=True):
            if y not in depth:
                clock += 1
                depth[y] = depth[x] + 1
                visit[y] = clock
                stack.append(y)
    anchor = {}
    for v in range(g.n):
        holders = [i for i in ids if v in td.bags[i]]
        if holders:
            anchor[v] = min(holders, key=lambda i: (depth[i], visit[i]))
    keyed = sorted(anchor, key=lambda v: (depth[anchor[v]], visit[anchor[v]], v))
    rest = sorted(set(range(g.n)) - set(keyed))
    cands.append(keyed + rest)
    cands.append(list(reversed(keyed + rest)))
    return [c for c in cands if len(c) == g.n]


def _point_dim_for_independent(g: Graph, weight: Dict[int, int]) -> Dict[int, Interval]:
    """One interval dimension separating a greedy independent set."""
    chosen: List[int] = []
    for v in sorted(weight, key=lambda u: (-weight[u], u)):
        if all(not g.has_edge(v, u) for u in chosen):
            chosen.append(v)
    col = {v: Interval(NEG_INF, POS_INF) for v in range(g.n)}
    for rank, v in enumerate(sorted(chosen)):
        col[v] = Interval(3 * rank, 3 * rank)
    return col


def _treewidth_with_witness(g: Graph, td: TreeDecomposition):
    width = validate_tree_decomposition(g, td)
    target_d = width + 2
    base = {"width": width, "target_d": target_d}
    if g.n <= 1 or g.is_complete():
        rep = BoxRepresentation(1, {v: Box([Interval(0, 0)]) for v in range(g.n)})
        _check_self(g, rep, "treewidth_rep")
        return rep, dict(base, orders=[], point_sets=[])
    non_edges = g.non_edges()
    u_arr = np.asarray([u for u, _ in non_edges], dtype=np.int64)
    v_arr = np.asarray([v for _, v in non_edges], dtype=np.int64)
    flat, offsets = _closed_hulls(g)
    pos = np.empty(g.n, dtype=np.int64)

    def realized_by(seq: List[int]) -> np.ndarray:
        pos[np.asarray(seq, dtype=np.int64)] = np.arange(1, g.n + 1, dtype=np.int64)
        right = np.maximum.reduceat(pos[flat], offsets)
        return (right[u_arr] < pos[v_arr]) | (right[v_arr] < pos[u_arr])

    candidates = _order_candidates(g, td)
    realized = [realized_by(seq) for seq in candidates]
    remaining = np.ones(len(non_edges), dtype=bool)
    columns: List[Dict[int, Interval]] = []
    orders: List[List[int]] = []
    point_sets: List[List[int]] = []
    while remaining.any():
        best, best_cnt = -1, 0
        for i, mask in enumerate(realized):
            cnt = int(np.count_nonzero(mask & remaining))
            if cnt > best_cnt:
                best, best_cnt = i, cnt
        weight: Dict[int, int] = {v: 0 for v in range(g.n)}
        for idx in np.nonzero(remaining)[0].tolist():
            u, v = non_edges[idx]
            weight[u] += 1
            weight[v] += 1
        col = _point_dim_for_independent(g, weight)
        points = sorted(v for v, iv in col.items() if iv.lo == iv.hi)
        point_set = set(points)
        covered = np.asarray(
            [u in point_set and v in point_set for u, v in non_edges], dtype=bool
        )
        if int(np.count_nonzero(covered & remaining)) > best_cnt:
            columns.append(col)
            point_sets.append(points)
            remaining &= ~covered
            continue
        if best < 0:
            u, v = non_edges[int(np.nonzero(remaining)[0][0])]
            seq = sorted(set(range(g.n)) - {u, v}) + [u, v]
            mask = realized_by(seq)
            columns.append(_model_from_order(g, seq))
            orders.append(seq)
            remaining &= ~mask
            continue
        columns.append(_model_from_order(g, candidates[best]))
        orders.append(list(candidates[best]))
        remaining &= ~realized[best]
    boxes = {v: Box([col[v] for col in columns]) for v in range(g.n)}
    rep = BoxRepresentation(len(columns), boxes)
    _check_self(g, rep, "treewidth_rep")
    return rep, dict(base, orders=orders, point_sets=point_sets)


def treewidth_rep(g: Graph, td: TreeDecomposition) -> BoxRepresentation:
    """Greedy cover of the non-edges by interval supergraphs of g.

    Candidate interval models come from vertex orders that follow the
    decomposition: for every tree edge, the separated sides around their
    shared bag, plus top-down and bottom-up orders by bag depth.  Each
    round keeps whichever candidate (or a point dimension on a greedy
    independent set, or a targeted order for the lowest stuck pair)
    realizes the most still-uncovered non-edges.  Aims at width + 2
    dimensions without guaranteeing it; the certificate records both.
    """
    rep, _ = _treewidth_with_witness(g, td)
    return rep


# ---------------------------------------------------------------------------
# putting a deleted vertex back


def vertex_deletion_lift(rep: BoxRepresentation, g: Graph, v: int) -> BoxRepresentation:
    """Extend a representation of g minus v to one including v.

    rep must cover a vertex subset S of g with v outside S and verify
    against the induced subgraph on S.  One new dimension separates v
    ([-4, 2]) from its non-neighbours ([4, 8]) while meeting N(v) ([0, 8]);
    v covers all old dimensions.  The dimension grows by exactly one.
    """
    if not (0 <= v < g.n):
        raise ParameterError(f"vertex {v} outside the graph")
    present = rep.vertices()
    if v in present:
        raise ParameterError(f"vertex {v} already has a box")
    sub, old_ids = g.induced(present)
    to_new = {u: i for i, u in enumerate(old_ids)}
    report = verify_box_rep(sub, relabel_rep(rep, to_new))
    if not report.ok:
        raise VerificationError(
            f"supplied representation does not match the graph minus {v}", report
        )
    nbrs = g.neighbors(v) & set(present)
    boxes: Dict[int, Box] = {}
    for u in present:
        extra = Interval(0, 8) if u in nbrs else Interval(4, 8)
        boxes[u] = Box(list(rep.boxes[u].intervals) + [extra])
    boxes[v] = Box(list(full_box(rep.d).intervals) + [Interval(-4, 2)])
    out = BoxRepresentation(rep.d + 1, boxes)
    lifted_sub, lifted_ids = g.induced(sorted(present + [v]))
    lifted_map = {u: i for i, u in enumerate(lifted_ids)}
    _check_self(lifted_sub, relabel_rep(out, lifted_map), "vertex_deletion_lift")
    return out
