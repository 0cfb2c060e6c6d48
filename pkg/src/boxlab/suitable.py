"""Scrambling set families and suitable permutation families.

A family of sets over a ground set is t-scrambling when every Venn cell over
at most t of the sets is non-empty.  A family of permutations of 0..n-1 is
k-suitable when for every k-subset S and every x in S some permutation puts
x before the rest of S.

The permutation builder follows the probabilistic route: pick the smallest
ground size s whose scrambling capacity reaches ceil(log2 n) sets, draw a
scrambling family over [s] by rejection sampling, give every element a
distinct subset code, and read one permutation off each ground element by
comparing codes at their lowest differing bit.  For midget inputs where that
machinery is worth more than the trivial answer, the n cyclic rotations of a
fixed order are used instead (the rotation starting at x puts x first, so
the family is k-suitable for every k).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import combinations
from typing import List, Optional, Tuple

import numpy as np

from .errors import ParameterError, RandomizedFailureError, StructuralError
from .seeds import resolve_retry_cap, rng_for

EXHAUSTIVE_BUDGET = 10**8


@dataclass(frozen=True)
class ScramblingFamily:
    """Subsets of ground set 0..ground-1, stored as bitmasks."""

    ground: int
    t: int
    sets: Tuple[int, ...]

    def member(self, i: int, j: int) -> bool:
        """Is ground element i in set j?"""
        return bool(self.sets[j] >> i & 1)

    def as_frozensets(self) -> List[frozenset]:
        return [
            frozenset(i for i in range(self.ground) if mask >> i & 1)
            for mask in self.sets
        ]


@dataclass(frozen=True)
class PermutationFamily:
    """Permutations of 0..n-1 in position form: perm[x] is the rank 1..n."""

    n: int
    k: int
    perms: Tuple[Tuple[int, ...], ...]
    method: str

    @property
    def size(self) -> int:
        return len(self.perms)

    def to_json(self):
        return {"n": self.n, "k": self.k, "method": self.method,
                "perms": [list(p) for p in self.perms]}


def verify_scrambling(fam: ScramblingFamily, t: Optional[int] = None) -> bool:
    """Every Venn cell over at most t sets is non-empty.

    t defaults to the family's declared scrambling order.  Checking cells
    over exactly min(t, #sets) sets suffices: a cell over fewer sets is a
    union of cells over more.
    """
    if t is None:
        t = fam.t
    if t < 1:
        raise ParameterError("t must be positive")
    if fam.ground < 1:
        return False
    full = (1 << fam.ground) - 1
    r = len(fam.sets)
    size = min(t, r)
    if size == 0:
        return True
    for idx in combinations(range(r), size):
        masks = [fam.sets[j] for j in idx]
        for bits in range(1 << size):
            cell = full
            for pos, mask in enumerate(masks):
                cell &= mask if bits >> pos & 1 else ~mask & full
                if not cell:
                    break
            if not cell:
                return False
    return True


def scrambling_feasible(ground: int, t: int, m: int) -> bool:
    """Exact check of 2^t * C(m,t) * (1 - 2^-t)^ground < 1.

    Evaluated in integers: 2^t * C(m,t) * (2^t - 1)^ground < 2^(t*(ground+1)).
    Guarantees rejection sampling succeeds with positive probability.
    """
    if t < 1 or m < t or ground < 1:
        return False
    lhs = (1 << t) * math.comb(m, t) * (2**t - 1) ** ground
    return lhs < 1 << (t * (ground + 1))


def build_scrambling(ground: int, t: int, m: int, seed: int) -> ScramblingFamily:
    """Draw a t-scrambling family of m subsets of [ground] by rejection."""
    if not scrambling_feasible(ground, t, m):
        raise ParameterError(
            f"scrambling parameters infeasible: ground={ground}, t={t}, m={m}"
        )
    rng = rng_for(seed, "scrambling")
    cap = resolve_retry_cap(64)
    for attempt in range(cap):
        fam = ScramblingFamily(
            ground=ground,
            t=t,
            sets=tuple(rng.getrandbits(ground) for _ in range(m)),
        )
        if verify_scrambling(fam):
            return fam
    raise RandomizedFailureError("no scrambling family found", cap)


def scrambling_capacity(ground: int, t: int) -> int:
    """Largest set count the constructive bound certifies for this ground."""
    # floor((t / 2e) * e^(ground / (t 2^t))), clipped to feasibility
    m = math.floor(t / (2 * math.e) * math.exp(ground / (t * 2**t)))
    while m >= t and not scrambling_feasible(ground, t, m):
        m -= 1
    return m


def suitable_size_bound(n: int, k: int) -> float:
    """k * 2^k * log log n, the size bound claimed for n >= 10^4."""
    return k * 2**k * math.log(math.log(n))


def _bit_reverse_table(width: int) -> List[int]:
    table = [0] * (1 << width)
    for x in range(1 << width):
        table[x] = int(f"{x:0{width}b}"[::-1], 2) if width else 0
    return table


def _perms_from_scrambling(n: int, fam: ScramblingFamily) -> List[Tuple[int, ...]]:
    """One permutation per ground element.

    Element a gets code Q_a = binary(a) over the set indices.  For ground
    element i, a precedes b iff at the lowest bit where their codes differ,
    a's code agrees with i's membership pattern.  Equivalently: sort by the
    bit-reversed value of Q_a xor mask_i, where mask_i collects i's
    membership across the sets.
    """
    m = len(fam.sets)
    if n > 1 << m:
        raise StructuralError("not enough code space for distinct codes")
    rev = _bit_reverse_table(m)
    perms = []
    for i in range(fam.ground):
        mask_i = 0
        for j, s in enumerate(fam.sets):
            if s >> i & 1:
                mask_i |= 1 << j
        keys = [(rev[a ^ mask_i], a) for a in range(n)]
        keys.sort()
        ranks = [0] * n
        for pos, (_, a) in enumerate(keys, start=1):
            ranks[a] = pos
        perms.append(tuple(ranks))
    return perms


def _rotation_perms(n: int) -> List[Tuple[int, ...]]:
    return [tuple((x - r) % n + 1 for x in range(n)) for r in range(n)]


def build_suitable(n: int, k: int, seed: int) -> PermutationFamily:
    """A k-suitable family of permutations of 0..n-1, self-checked."""
    if n < 2 or k < 2:
        raise ParameterError("build_suitable needs n >= 2 and k >= 2")
    fam = None
    if k < n:
        t = k - 1
        target_m = max(1, math.ceil(math.log2(n)))
        s = None
        probe = 1
        while probe <= 10**6:
            m = scrambling_capacity(probe, t)
            if m >= target_m and scrambling_feasible(probe, t, m):
                s = probe
                break
            probe += 1
        if s is not None and s <= math.factorial(min(n, 13)):
            try:
                scram = build_scrambling(s, t, scrambling_capacity(s, t), seed)
                perms = _perms_from_scrambling(n, scram)
                fam = PermutationFamily(n=n, k=k, perms=tuple(perms), method="scrambling")
            except RandomizedFailureError:
                if n >= 10**4:
                    raise
                fam = None
    if fam is None:
        fam = PermutationFamily(
            n=n, k=k, perms=tuple(_rotation_perms(n)), method="rotations"
        )
    _self_check(fam, seed)
    if n >= 10**4 and fam.method == "scrambling":
        bound = suitable_size_bound(n, k)
        if fam.size > bound:
            raise StructuralError(
                f"family size {fam.size} exceeds claimed bound {bound:.2f}"
            )
    return fam


def _self_check(fam: PermutationFamily, seed: int) -> None:
    if fam.k >= fam.n:
        return  # nothing of size k to witness beyond what rotations give
    cost = math.comb(fam.n, fam.k) * fam.k * fam.size
    if cost <= 2 * 10**6:
        ok = verify_suitable(fam, mode="exhaustive")
    else:
        ok = verify_suitable(fam, mode="sampled", trials=10**4, seed=seed)
    if not ok:
        raise StructuralError("constructed family failed its suitability check")


def verify_suitable(
    fam: PermutationFamily,
    mode: str = "exhaustive",
    trials: int = 10**6,
    seed: int = 0,
) -> bool:
    """Check k-suitability exhaustively or on sampled k-subsets."""
    n, k = fam.n, fam.k
    if k > n:
        return True
    ranks = np.array(fam.perms, dtype=np.int64)  # (p, n)
    if mode == "exhaustive":
        if math.comb(n, k) * k > EXHAUSTIVE_BUDGET:
            raise ParameterError("exhaustive check exceeds its budget; use sampled")
        perms = [list(p) for p in fam.perms]
        for subset in combinations(range(n), k):
            firsts = set()
            for p in perms:
                best = subset[0]
                best_rank = p[best]
                for x in subset[1:]:
                    if p[x] < best_rank:
                        best, best_rank = x, p[x]
                firsts.add(best)
            if len(firsts) != k:
                return False
        return True
    if mode == "sampled":
        rng = np.random.default_rng(seed)
        remaining = trials
        chunk = 10**5
        while remaining > 0:
            batch = min(chunk, remaining)
            remaining -= batch
            subs = rng.integers(0, n, size=(batch, k), dtype=np.int64)
            # redraw rows with repeated vertices
            while True:
                bad = np.zeros(batch, dtype=bool)
                for a in range(k):
                    for b in range(a + 1, k):
                        bad |= subs[:, a] == subs[:, b]
                if not bad.any():
                    break
                subs[bad] = rng.integers(0, n, size=(int(bad.sum()), k), dtype=np.int64)
            vals = ranks[:, subs]  # (p, batch, k)
            arg = vals.argmin(axis=2)  # (p, batch)
            for c in range(k):
                if not (arg == c).any(axis=0).all():
                    return False
        return True
    raise ParameterError(f"unknown mode {mode!r}")
