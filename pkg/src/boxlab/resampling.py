"""Randomized constructions by resampling, in the Moser-Tardos style.

Two builders live here.  partition_bounded_mono splits the vertex set into k
classes so that no vertex has more than d neighbours in any one class.
family_colourings produces t colourings of a set B so that every vertex of A
has some colouring under which none of its colour groups exceeds r.

Both draw all variables uniformly at random and then repeatedly resample the
variables of the lowest-indexed violated constraint until none remains.  The
parameter preconditions are the ones that make the local lemma argument go
through; they can be bypassed with unsafe=True, in which case the verified
postcondition is the only guarantee and the retry cap may bite.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, Iterable, List, Tuple

from .core import Graph
from .errors import ParameterError, RandomizedFailureError, StructuralError
from .formulas import (
    auto_partition_params,
    colouring_l_min,
    colouring_t_min,
    meets_bound,
    stepzero_threshold,
)
from .seeds import resolve_retry_cap, rng_for


@dataclass(frozen=True)
class Partition:
    """Assignment of each vertex to a class in 1..k."""

    k: int
    cls: Tuple[int, ...]

    def classes(self) -> List[List[int]]:
        out = [[] for _ in range(self.k)]
        for v, c in enumerate(self.cls):
            out[c - 1].append(v)
        return out

    def to_json(self):
        return {"k": self.k, "classes": list(self.cls)}


def verify_partition(g: Graph, part: Partition, d: int) -> bool:
    """Every vertex has at most d neighbours in every class."""
    if len(part.cls) != g.n or any(not 1 <= c <= part.k for c in part.cls):
        return False
    for v in range(g.n):
        counts = [0] * part.k
        for u in g.neighbors(v):
            counts[part.cls[u] - 1] += 1
            if counts[part.cls[u] - 1] > d:
                return False
    return True


def partition_bounded_mono(
    g: Graph, d: int, k: int, seed: int, unsafe: bool = False
) -> Partition:
    """Partition V(G) into k classes with <= d neighbours of any vertex per
    class.

    Needs k at least (4d+4)^(1/d) e/d Delta^(1+1/d) unless d >= Delta, where
    any assignment works.  Resamples the lowest-indexed offending
    (d+1)-subset of a neighbourhood until no class holds more than d
    neighbours of any vertex.
    """
    if d < 1 or k < 1:
        raise ParameterError("partition needs d >= 1 and k >= 1")
    delta = g.max_degree()
    if delta > 0 and d < delta:
        threshold = stepzero_threshold(d, delta)
        if not meets_bound(k, threshold) and not unsafe:
            raise ParameterError(
                f"k={k} below the class-count threshold {threshold:.6f} "
                f"for d={d}, Delta={delta}; pass unsafe to force"
            )
    rng = rng_for(seed, "partition")
    n = g.n
    cls = [rng.randrange(k) for _ in range(n)]
    cnt = [[0] * k for _ in range(n)]
    for v in range(n):
        for u in g.neighbors(v):
            cnt[v][cls[u]] += 1
    cap = resolve_retry_cap(10**4 * max(1, n * k))
    steps = 0
    while True:
        cell = None
        for v in range(n):
            row = cnt[v]
            for i in range(k):
                if row[i] > d:
                    cell = (v, i)
                    break
            if cell:
                break
        if cell is None:
            break
        if steps >= cap:
            raise RandomizedFailureError("partition resampling cap exceeded", steps)
        steps += 1
        v, i = cell
        offenders = [u for u in sorted(g.neighbors(v)) if cls[u] == i][: d + 1]
        for u in offenders:
            old = cls[u]
            new = rng.randrange(k)
            if new == old:
                continue
            cls[u] = new
            for w in g.neighbors(u):
                cnt[w][old] -= 1
                cnt[w][new] += 1
    part = Partition(k=k, cls=tuple(c + 1 for c in cls))
    if not verify_partition(g, part, d):
        raise StructuralError("partition postcondition failed after resampling")
    return part


@dataclass(frozen=True)
class ColouringFamily:
    """t colourings of b_vertices with colours 1..ell, plus one certifying
    colouring index (1..t) per A-vertex.

    colours[i] is aligned with b_vertices; assignment maps each A-vertex to
    the lowest index whose colouring gives it at most r same-coloured
    neighbours per colour.
    """

    t: int
    ell: int
    b_vertices: Tuple[int, ...]
    colours: Tuple[Tuple[int, ...], ...]
    assignment: Dict[int, int]

    def colour_of(self, i: int, w: int) -> int:
        return self.colours[i - 1][self.b_vertices.index(w)]

    def colour_map(self, i: int) -> Dict[int, int]:
        row = self.colours[i - 1]
        return {w: row[j] for j, w in enumerate(self.b_vertices)}

    def to_json(self):
        return {
            "t": self.t,
            "ell": self.ell,
            "b_vertices": list(self.b_vertices),
            "colours": [list(row) for row in self.colours],
            "assignment": {str(v): i for v, i in sorted(self.assignment.items())},
        }


def _certifies(row: Tuple[int, ...], positions: List[int], r: int, ell: int) -> bool:
    counts = [0] * ell
    for j in positions:
        c = row[j] - 1
        counts[c] += 1
        if counts[c] > r:
            return False
    return True


def verify_colouring_family(
    g: Graph, a_side: Iterable[int], b_side: Iterable[int], r: int, fam: ColouringFamily
) -> bool:
    """Each A-vertex has <= r same-coloured B-neighbours per colour under its
    assigned colouring."""
    b_index = {w: j for j, w in enumerate(fam.b_vertices)}
    if set(b_index) != set(b_side):
        return False
    for v in sorted(a_side):
        i = fam.assignment.get(v)
        if i is None or not 1 <= i <= fam.t:
            return False
        positions = [b_index[u] for u in g.neighbors(v) if u in b_index]
        if not _certifies(fam.colours[i - 1], positions, r, fam.ell):
            return False
    return True


def family_colourings(
    g: Graph,
    a_side: Iterable[int],
    b_side: Iterable[int],
    r: int,
    ell: int,
    t: int,
    seed: int,
    unsafe: bool = False,
) -> ColouringFamily:
    """t colourings of B with ell colours such that every A-vertex has a
    certifying colouring (no colour on more than r of its B-neighbours).

    Requires ell >= e (e d/(r+1))^(1+1/r) and t >= ln(4 d Delta), where d
    and Delta are the A-into-B and B-into-A degree maxima; both checks are
    vacuous when d <= r since no constraint can then be violated.
    """
    a_list = sorted(set(a_side))
    b_list = sorted(set(b_side))
    if set(a_list) & set(b_list):
        raise ParameterError("A and B must be disjoint")
    if r < 1 or ell < 1 or t < 1:
        raise ParameterError("family_colourings needs r, ell, t >= 1")
    b_index = {w: j for j, w in enumerate(b_list)}
    nbrs = {v: sorted(u for u in g.neighbors(v) if u in b_index) for v in a_list}
    d = max((len(ns) for ns in nbrs.values()), default=0)
    a_set = set(a_list)
    delta = 0
    for w in b_list:
        delta = max(delta, sum(1 for u in g.neighbors(w) if u in a_set))
    if d > r and not unsafe:
        if not meets_bound(ell, colouring_l_min(d, r)):
            raise ParameterError(
                f"ell={ell} below the colour-count bound "
                f"{colouring_l_min(d, r):.6f} for d={d}, r={r}; pass unsafe to force"
            )
        if not meets_bound(t, colouring_t_min(d, delta)):
            raise ParameterError(
                f"t={t} below the colouring-count bound "
                f"{colouring_t_min(d, delta):.6f} for d={d}, Delta={delta}; "
                "pass unsafe to force"
            )
    rng = rng_for(seed, "colourings")
    colours = [[rng.randrange(ell) + 1 for _ in b_list] for _ in range(t)]

    def certifying_index(v: int) -> int:
        positions = [b_index[u] for u in nbrs[v]]
        for i in range(t):
            if _certifies(colours[i], positions, r, ell):
                return i
        return -1

    cap = resolve_retry_cap(10**4 * max(1, len(a_list)))
    steps = 0
    while True:
        bad = None
        for v in a_list:
            if certifying_index(v) < 0:
                bad = v
                break
        if bad is None:
            break
        if steps >= cap:
            raise RandomizedFailureError("colouring resampling cap exceeded", steps)
        steps += 1
        for i in range(t):
            row = colours[i]
            for u in nbrs[bad]:
                row[b_index[u]] = rng.randrange(ell) + 1
    assignment = {v: certifying_index(v) + 1 for v in a_list}
    fam = ColouringFamily(
        t=t,
        ell=ell,
        b_vertices=tuple(b_list),
        colours=tuple(tuple(row) for row in colours),
        assignment=assignment,
    )
    if not verify_colouring_family(g, a_list, b_list, r, fam):
        raise StructuralError("colouring postcondition failed after resampling")
    return fam


__all__ = [
    "Partition",
    "ColouringFamily",
    "partition_bounded_mono",
    "auto_partition_params",
    "family_colourings",
    "verify_partition",
    "verify_colouring_family",
]
