"""Deterministic seed derivation.

One master seed drives every random stream in the toolkit.  Sub-streams are
derived by feeding the tuple ``(master_seed, *path)`` into
``numpy.random.SeedSequence``, where ``path`` is a fixed sequence of small
non-negative integers identifying the consumer (a stream id, then counters
such as grid index and repeat index).  The scheme is purely functional, so
any module's stream can be reproduced in isolation: for example, repeat
``r`` of grid point ``i`` in a learning curve always uses
``(seed, STREAM_CURVE, 1 + i, r)`` regardless of what else ran before.
"""

from __future__ import annotations

import numpy as np

from .errors import DomainError

# Stream identifiers, one per consumer.  Values are stable public API.
STREAM_SIMULATE = 1
STREAM_CURVE = 2
STREAM_PERMUTATION = 3
STREAM_ROTATION = 4
STREAM_MULTIMODAL = 5


def seed_sequence(master_seed: int, *path: int) -> np.random.SeedSequence:
    """SeedSequence for the sub-stream at ``path`` under ``master_seed``."""
    if master_seed < 0:
        raise DomainError(f"master seed must be non-negative, got {master_seed}")
    if any(p < 0 for p in path):
        raise DomainError(f"seed path entries must be non-negative, got {path}")
    return np.random.SeedSequence((int(master_seed), *map(int, path)))


def derive_rng(master_seed: int, *path: int) -> np.random.Generator:
    """Seeded generator for the sub-stream at ``path`` under ``master_seed``."""
    return np.random.default_rng(seed_sequence(master_seed, *path))
