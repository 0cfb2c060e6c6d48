"""Exact brute-force computations for small instances.

These are the reference answers the randomized constructions are tested
against.  Everything here is exponential and deliberately capped:
interval recognition at n <= 12, exact boxicity and exact dimension at
n <= 8.

Interval recognition works over vertex orders: a graph is interval iff
some order v_1..v_n satisfies "i < j < k and v_i v_k an edge implies
v_i v_j an edge", and such an order yields a model directly (left end =
position, right end = last adjacent position).  The search runs over
(placed set, still-extendable set) states, so it is exponential only in
the state count, not in n!.

Exact boxicity enumerates, for every vertex order, the interval
supergraph induced by that order; every minimal interval supergraph
arises this way.  The realized non-edge sets are pruned to the
inclusion-maximal ones and covered exactly by iterative deepening.
Exact dimension does the same with linear extensions covering
incomparable ordered pairs.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple

from .core import (
    Box,
    BoxRepresentation,
    Graph,
    Interval,
    Poset,
    Realizer,
    order_from_sequence,
    product_compose,
    verify_box_rep,
    verify_realizer,
)
from .errors import ParameterError, StructuralError

INTERVAL_N_CAP = 12
EXACT_N_CAP = 8


@dataclass(frozen=True)
class IntervalModel:
    """A one-dimensional witness: vertex -> closed interval."""

    intervals: Dict[int, Interval]

    def to_rep(self) -> BoxRepresentation:
        return BoxRepresentation(1, {v: Box([iv]) for v, iv in self.intervals.items()})


def _neighbor_masks(g: Graph) -> List[int]:
    masks = [0] * g.n
    for u, v in g.edges:
        masks[u] |= 1 << v
        masks[v] |= 1 << u
    return masks


def _model_from_order(g: Graph, seq: Sequence[int]) -> Dict[int, Interval]:
    """Interval model induced by a vertex order.

    Left end = own position, right end = last adjacent position.  The result
    is always an interval supergraph of g; it equals g exactly when the order
    satisfies the recognition property.
    """
    pos = {v: i for i, v in enumerate(seq, start=1)}
    intervals = {}
    for i, v in enumerate(seq, start=1):
        right = max([pos[w] for w in g.neighbors(v) if pos[w] > i], default=i)
        intervals[v] = Interval(i, right)
    return intervals


def is_interval_graph(g: Graph) -> Optional[IntervalModel]:
    """An interval model of g, or None if none exists.  n <= 12."""
    if g.n > INTERVAL_N_CAP:
        raise ParameterError(f"interval recognition capped at n = {INTERVAL_N_CAP}")
    if g.n == 0:
        return IntervalModel({})
    nb = _neighbor_masks(g)
    full = (1 << g.n) - 1
    # state: (placed mask, open mask); open = placed vertices whose placed
    # suffix is entirely adjacent, the only ones allowed to gain neighbours
    start = (0, 0)
    parents: Dict[Tuple[int, int], Tuple[Tuple[int, int], int]] = {start: (None, -1)}
    stack = [start]
    goal = None
    while stack:
        placed, open_ = stack.pop()
        if placed == full:
            goal = (placed, open_)
            break
        rest = full & ~placed
        z = rest
        while z:
            bit = z & -z
            z ^= bit
            v = bit.bit_length() - 1
            if nb[v] & placed & ~open_:
                continue  # v is adjacent to an already-closed vertex
            state = (placed | bit, (open_ & nb[v]) | bit)
            if state not in parents:
                parents[state] = ((placed, open_), v)
                stack.append(state)
    if goal is None:
        return None
    seq: List[int] = []
    state = goal
    while parents[state][1] != -1:
        state, v = parents[state]
        seq.append(v)
    seq.reverse()
    return IntervalModel(_model_from_order(g, seq))


def _order_realized_mask(
    g_nb: List[int], seq: Sequence[int], non_edges: Sequence[Tuple[int, int]]
) -> int:
    """Non-edges separated by the interval supergraph of this order."""
    n = len(seq)
    pos = [0] * n
    for i, v in enumerate(seq):
        pos[v] = i
    # right[i]: last position adjacent to the vertex at position i (or i)
    right = list(range(n))
    for i, v in enumerate(seq):
        m = g_nb[v]
        while m:
            bit = m & -m
            m ^= bit
            j = pos[bit.bit_length() - 1]
            if j > right[i]:
                right[i] = j
    mask = 0
    for t, (u, v) in enumerate(non_edges):
        i, j = pos[u], pos[v]
        if i > j:
            i, j = j, i
        if j > right[i]:
            mask |= 1 << t
    return mask


def _maximal_masks(masks: Dict[int, Sequence[int]]) -> List[Tuple[int, Tuple[int, ...]]]:
    """Drop masks contained in another; returns (mask, witness order) pairs."""
    items = sorted(masks.items(), key=lambda kv: -bin(kv[0]).count("1"))
    kept: List[Tuple[int, Tuple[int, ...]]] = []
    for mask, seq in items:
        if mask == 0:
            continue
        if any(mask | other == other for other, _ in kept):
            continue
        kept.append((mask, tuple(seq)))
    return kept


def _min_cover(
    universe: int, sets: List[Tuple[int, Tuple]], max_depth: int
) -> Optional[List[int]]:
    """Smallest selection of set indices covering the universe, if any."""
    by_bit: Dict[int, List[int]] = {}
    for idx, (mask, _) in enumerate(sets):
        m = mask
        while m:
            bit = m & -m
            m ^= bit
            by_bit.setdefault(bit, []).append(idx)

    for depth in range(1, max_depth + 1):
        failed = set()

        def dfs(uncovered: int, left: int, chosen: List[int]) -> Optional[List[int]]:
            if uncovered == 0:
                return chosen
            if left == 0:
                return None
            key = (uncovered, left)
            if key in failed:
                return None
            bit = uncovered & -uncovered
            candidates = by_bit.get(bit)
            if not candidates:
                return None
            ranked = sorted(
                candidates, key=lambda i: -bin(sets[i][0] & uncovered).count("1")
            )
            for idx in ranked:
                got = dfs(uncovered & ~sets[idx][0], left - 1, chosen + [idx])
                if got is not None:
                    return got
            failed.add(key)
            return None

        result = dfs(universe, depth, [])
        if result is not None:
            return result
    return None


def exact_boxicity(g: Graph) -> Tuple[int, BoxRepresentation]:
    """Exact boxicity and a verified witness representation.  n <= 8."""
    if g.n > EXACT_N_CAP:
        raise ParameterError(f"exact boxicity capped at n = {EXACT_N_CAP}")
    if g.n == 0:
        raise ParameterError("empty vertex set")
    non_edges = g.non_edges()
    if not non_edges:
        rep = BoxRepresentation(1, {v: Box([Interval(0, 0)]) for v in range(g.n)})
        return 1, rep
    model = is_interval_graph(g)
    if model is not None:
        rep = model.to_rep()
        report = verify_box_rep(g, rep)
        if not report.ok:
            raise StructuralError(f"interval model failed verification: {report.summary()}")
        return 1, rep

    nb = _neighbor_masks(g)
    masks: Dict[int, Sequence[int]] = {}
    for seq in itertools.permutations(range(g.n)):
        mask = _order_realized_mask(nb, seq, non_edges)
        if mask and mask not in masks:
            masks[mask] = seq
    sets = _maximal_masks(masks)
    universe = (1 << len(non_edges)) - 1
    chosen = _min_cover(universe, sets, max_depth=max(2, g.n // 2))
    if chosen is None:
        raise StructuralError("no interval cover found below the n/2 bound")

    reps = []
    for idx in chosen:
        _, seq = sets[idx]
        intervals = _model_from_order(g, seq)
        reps.append(BoxRepresentation(1, {v: Box([iv]) for v, iv in intervals.items()}))
    rep = product_compose(reps)
    report = verify_box_rep(g, rep)
    if not report.ok:
        raise StructuralError(f"boxicity witness failed verification: {report.summary()}")
    return len(chosen), rep


def _linear_extensions(p: Poset) -> List[Tuple[int, ...]]:
    preds = [set(p.pred(v)) for v in range(p.n)]
    out: List[Tuple[int, ...]] = []
    seq: List[int] = []
    placed = set()

    def rec():
        if len(seq) == p.n:
            out.append(tuple(seq))
            return
        for v in range(p.n):
            if v not in placed and preds[v] <= placed:
                placed.add(v)
                seq.append(v)
                rec()
                seq.pop()
                placed.remove(v)

    rec()
    return out


def exact_dimension(p: Poset) -> Tuple[int, Realizer]:
    """Exact order dimension and a verified minimum realizer.  n <= 8."""
    if p.n > EXACT_N_CAP:
        raise ParameterError(f"exact dimension capped at n = {EXACT_N_CAP}")
    if p.n == 0:
        raise ParameterError("empty poset")
    extensions = _linear_extensions(p)
    inc = p.incomparable_pairs()
    if not inc:
        realizer = Realizer(p.n, [order_from_sequence(extensions[0])])
        return 1, realizer

    pair_index = {pair: t for t, pair in enumerate(inc)}
    masks: Dict[int, Tuple[int, ...]] = {}
    for seq in extensions:
        pos = {v: i for i, v in enumerate(seq)}
        mask = 0
        for (x, y), t in pair_index.items():
            if pos[y] < pos[x]:
                mask |= 1 << t
        if mask not in masks:
            masks[mask] = seq
    sets = _maximal_masks(masks)
    universe = (1 << len(inc)) - 1
    cap = 2 if p.n <= 3 else max(2, p.n // 2)
    chosen = _min_cover(universe, sets, max_depth=cap)
    if chosen is None:
        raise StructuralError("no realizer found below the n/2 bound")
    realizer = Realizer(p.n, [order_from_sequence(sets[i][1]) for i in chosen])
    report = verify_realizer(p, realizer)
    if not report.ok:
        raise StructuralError(f"realizer failed verification: {report.summary()}")
    return len(chosen), realizer
