"""Deterministic seed handling.

Every randomized operation takes a single 64-bit master seed.  Sub-tasks never
share a stream: each one derives its own 64-bit seed by hashing the master
seed together with a label path (e.g. ("degree", "class", 3, "colourings")).
Rebuilding with the same master seed therefore replays every random choice,
no matter how the internal work is ordered or batched.
"""

from __future__ import annotations

import hashlib
import os
import random

MASK64 = (1 << 64) - 1

RETRY_CAP_ENV = "BOXLAB_RETRY_CAP"


def derive_seed(master: int, *labels) -> int:
    """Derive a child seed from a master seed and a label path."""
    h = hashlib.sha256()
    h.update(int(master & MASK64).to_bytes(8, "big"))
    for label in labels:
        h.update(b"/")
        h.update(repr(label).encode("utf-8"))
    return int.from_bytes(h.digest()[:8], "big")


def rng_for(master: int, *labels) -> random.Random:
    """A private random.Random for one sub-task."""
    return random.Random(derive_seed(master, *labels))


def fresh_seed() -> int:
    """A random 64-bit seed, for runs where the caller gave none."""
    return random.SystemRandom().getrandbits(64)


def resolve_retry_cap(default: int) -> int:
    """Retry/iteration cap, overridable through BOXLAB_RETRY_CAP."""
    raw = os.environ.get(RETRY_CAP_ENV)
    if raw is None:
        return default
    try:
        cap = int(raw)
    except ValueError:
        return default
    return cap if cap > 0 else default
