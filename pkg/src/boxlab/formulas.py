"""Parameter arithmetic shared by the builders and the certificate checker.

Every derived parameter that ends up inside a certificate is computed here
and nowhere else, so that re-checking a certificate reproduces the recorded
values bit for bit.  All logarithms are natural.
"""

from __future__ import annotations

import math

from .errors import ParameterError

# Relative margin applied toward strictness when a transcendental bound is
# checked in floating point: parameters within a 1e-9 sliver of the boundary
# are rejected rather than accepted.
STRICTNESS = 1e-9


def stepzero_threshold(d: int, max_degree: int) -> float:
    """Minimum class count for the bounded-monochromatic-neighbour partition:
    (4d+4)^(1/d) * e/d * Delta^(1+1/d)."""
    if d < 1 or max_degree < 1:
        raise ParameterError("stepzero_threshold needs d >= 1 and Delta >= 1")
    return (4 * d + 4) ** (1 / d) * math.e / d * max_degree ** (1 + 1 / d)


def auto_partition_params(max_degree: int) -> tuple:
    """The (d, k) choices d = ceil(100 ln Delta), k = ceil(3 Delta / d),
    clamped to (Delta, 1) when d >= Delta (the trivial single class is then
    already valid)."""
    if max_degree < 2:
        raise ParameterError("auto partition parameters need Delta >= 2")
    d = math.ceil(100 * math.log(max_degree))
    if d >= max_degree:
        return max_degree, 1
    return d, math.ceil(3 * max_degree / d)


def colouring_l_min(d: int, r: int) -> float:
    """Minimum colour count: e * (e d / (r+1))^(1 + 1/r)."""
    if d < 1 or r < 1:
        raise ParameterError("colouring bounds need d >= 1 and r >= 1")
    return math.e * (math.e * d / (r + 1)) ** (1 + 1 / r)


def colouring_t_min(d: int, max_degree: int) -> float:
    """Minimum colouring count: ln(4 d Delta)."""
    if d < 1 or max_degree < 1:
        raise ParameterError("colouring bounds need d >= 1 and Delta >= 1")
    return math.log(4 * d * max_degree)


def bipartite_params(d: int, max_degree: int) -> tuple:
    """(r, ell, t) for the unbalanced bipartite construction:
    r = ceil(sqrt(ln d)), ell = ceil(e (e d/(r+1))^(1+1/r)),
    t = ceil(ln(4 d Delta))."""
    if d < 2 or max_degree < d:
        raise ParameterError("bipartite parameters need Delta >= d >= 2")
    r = math.ceil(math.sqrt(math.log(d)))
    ell = math.ceil(colouring_l_min(d, r))
    while not meets_bound(ell, colouring_l_min(d, r)):
        ell += 1
    t = math.ceil(colouring_t_min(d, max_degree))
    while not meets_bound(t, colouring_t_min(d, max_degree)):
        t += 1
    return r, ell, t


def caught_t(k: int, n: int) -> int:
    """Permutation count for the catch-free search: ceil(3/2 (k+1) ln n)."""
    if k < 1 or n < 2:
        raise ParameterError("caught_t needs k >= 1 and n >= 2")
    return math.ceil(1.5 * (k + 1) * math.log(n))


def degen_target(k: int, n: int) -> int:
    """Dimension target for k-degenerate graphs: (k+2) ceil(2e ln n)."""
    if k < 0 or n < 2:
        raise ParameterError("degen_target needs k >= 0 and n >= 2")
    return (k + 2) * math.ceil(2 * math.e * math.log(n))


def degen_t(k: int, n: int) -> int:
    """Permutations sampled by the degenerate builder:
    ceil(3/2 (k+1) 2e ln n)."""
    if k < 0 or n < 2:
        raise ParameterError("degen_t needs k >= 0 and n >= 2")
    return math.ceil(1.5 * (k + 1) * 2 * math.e * math.log(n))


def genus_split_k(g: int) -> int:
    """Degree threshold for the A/B split of the genus pipeline:
    7 + ceil(sqrt(g / ln g)), with the degenerate g <= 1 case pinned to 8."""
    if g < 0:
        raise ParameterError("genus must be non-negative")
    if g <= 1:
        return 8
    return 7 + math.ceil(math.sqrt(g / math.log(g)))


def ltw_target(ltw: int) -> int:
    """Dimension bound from layered treewidth: 6 ltw + 4."""
    if ltw < 1:
        raise ParameterError("layered treewidth must be >= 1")
    return 6 * ltw + 4


def meets_bound(value: float, minimum: float) -> bool:
    """value >= minimum with a relative 1e-9 margin toward strictness."""
    return value >= minimum * (1 + STRICTNESS)
