"""Deterministic instance generators for graphs and posets."""

from typing import List, Optional, Set, Tuple

from .core import Graph, Poset
from .errors import ParameterError
from .seeds import rng_for


def _repair_degrees(n: int, adj: List[Set[int]], cap: int, rng) -> None:
    """Remove random incident edges until every degree is at most cap.

    Removals only ever lower degrees, so one pass over the offenders is
    enough.
    """
    for v in range(n):
        while len(adj[v]) > cap:
            u = rng.choice(sorted(adj[v]))
            adj[v].discard(u)
            adj[u].discard(v)


def gnp_graph(n: int, p: float, seed: int, max_degree: Optional[int] = None) -> Graph:
    """Erdos-Renyi graph, optionally repaired down to a degree cap.

    Edges are sampled independently in sorted pair order, then vertices
    over the cap shed random incident edges until they comply.  The result
    is a deterministic function of (n, p, max_degree, seed).
    """
    if n < 1:
        raise ParameterError("need at least one vertex")
    if not 0.0 <= p <= 1.0:
        raise ParameterError("edge probability must lie in [0, 1]")
    if max_degree is not None and max_degree < 0:
        raise ParameterError("degree cap must be non-negative")
    rng = rng_for(seed, "gnp", n)
    adj: List[Set[int]] = [set() for _ in range(n)]
    for u in range(n):
        for v in range(u + 1, n):
            if rng.random() < p:
                adj[u].add(v)
                adj[v].add(u)
    if max_degree is not None:
        _repair_degrees(n, adj, max_degree, rng)
    edges = [(u, v) for u in range(n) for v in sorted(adj[u]) if u < v]
    return Graph(n, edges)


def bipartite_graph(na: int, nb: int, p: float, seed: int,
                    cap_a: Optional[int] = None,
                    cap_b: Optional[int] = None) -> Graph:
    """Random bipartite graph on sides [0, na) and [na, na+nb).

    Cross edges appear independently with probability p; each side can be
    given its own degree cap, enforced by random edge removal.
    """
    if na < 1 or nb < 1:
        raise ParameterError("both sides need at least one vertex")
    if not 0.0 <= p <= 1.0:
        raise ParameterError("edge probability must lie in [0, 1]")
    n = na + nb
    rng = rng_for(seed, "bipartite", na, nb)
    adj: List[Set[int]] = [set() for _ in range(n)]
    for a in range(na):
        for b in range(na, n):
            if rng.random() < p:
                adj[a].add(b)
                adj[b].add(a)
    for cap, lo, hi in ((cap_a, 0, na), (cap_b, na, n)):
        if cap is None:
            continue
        if cap < 0:
            raise ParameterError("degree cap must be non-negative")
        for v in range(lo, hi):
            while len(adj[v]) > cap:
                u = rng.choice(sorted(adj[v]))
                adj[v].discard(u)
                adj[u].discard(v)
    edges = [(u, v) for u in range(n) for v in sorted(adj[u]) if u < v]
    return Graph(n, edges)


def grid_graph(rows: int, cols: int) -> Graph:
    """Planar grid with unit horizontal and vertical adjacencies."""
    if rows < 1 or cols < 1:
        raise ParameterError("grid needs positive dimensions")
    edges: List[Tuple[int, int]] = []
    for r in range(rows):
        for c in range(cols):
            v = r * cols + c
            if c + 1 < cols:
                edges.append((v, v + 1))
            if r + 1 < rows:
                edges.append((v, v + cols))
    return Graph(rows * cols, edges)


def comatching_graph(n: int) -> Graph:
    """Complement of a perfect matching on n vertices (n even).

    The extremal family for the n/2 interval bound: partner pairs
    (2i, 2i+1) are the only non-edges.
    """
    if n < 2 or n % 2:
        raise ParameterError("comatching needs an even number of vertices, at least 2")
    edges = [(u, v) for u in range(n) for v in range(u + 1, n)
             if not (u // 2 == v // 2)]
    return Graph(n, edges)


def crown_poset(n: int) -> Poset:
    """Standard example S_n: a_i below b_j exactly when i differs from j."""
    if n < 2:
        raise ParameterError("crown needs at least 2 minimal elements")
    rel = [(i, n + j) for i in range(n) for j in range(n) if i != j]
    return Poset.from_relations(2 * n, rel)


def height2_poset(na: int, nb: int, p: float, seed: int) -> Poset:
    """Random bipartite poset: na minimal and nb maximal elements."""
    if na < 1 or nb < 1:
        raise ParameterError("need at least one element on each level")
    if not 0.0 <= p <= 1.0:
        raise ParameterError("relation probability must lie in [0, 1]")
    rng = rng_for(seed, "height2", na, nb)
    rel = [(a, na + b) for a in range(na) for b in range(nb)
           if rng.random() < p]
    return Poset.from_relations(na + nb, rel)
