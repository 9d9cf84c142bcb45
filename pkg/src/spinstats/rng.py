"""Seed handling for reproducible sampling.

Every stochastic operation takes either an explicit ``numpy.random.Generator``
or a 64-bit seed.  Batches of a larger experiment never share a stream:
each batch seeds its own generator through :func:`derive_rng`, so merged
counts do not depend on execution order or degree of parallelism.
"""

from __future__ import annotations

import secrets

import numpy as np


def make_rng(seed: int) -> np.random.Generator:
    return np.random.default_rng(np.random.SeedSequence(entropy=int(seed)))


def derive_rng(master_seed: int, *key: int) -> np.random.Generator:
    """Generator for one batch, keyed by (master seed, batch indices).

    The derivation hashes the master seed together with the index tuple
    (numpy's SeedSequence spawn-key mechanism), so distinct keys give
    statistically independent streams and the same key always replays the
    same stream.
    """
    ss = np.random.SeedSequence(entropy=int(master_seed), spawn_key=tuple(int(k) for k in key))
    return np.random.default_rng(ss)


def fresh_seed() -> int:
    """Draw a 64-bit seed from system entropy."""
    return secrets.randbits(64)
