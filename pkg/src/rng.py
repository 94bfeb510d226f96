"""
Seed derivation for every random choice in the lab.

All randomness flows from one root seed. A purpose tag ("graph", "stream",
"hash", ...) and any number of indices (grid point, replicate, ...) are hashed
together with the root seed through numpy's SeedSequence, and the derived value
seeds a PCG64 generator. PCG64 and SeedSequence are portable, so identical
inputs produce identical streams on every platform.
"""

import logging

import numpy as np
import xxhash

logger = logging.getLogger(__name__)


def purpose_tag(purpose):
    """Map a purpose name to a stable 32-bit integer."""
    return xxhash.xxh32_intdigest(purpose.encode("utf-8"))


def derive_seed(root_seed, purpose, *indices):
    """
    Derive a 64-bit seed for one purpose of one task.

    Args:
        root_seed (int): The experiment's root seed.
        purpose (str): Purpose tag such as 'graph' or 'stream'.
        *indices (int): Task coordinates, e.g. grid index then replicate.

    Returns:
        int: Derived seed in [0, 2**64).
    """
    if root_seed < 0:
        raise ValueError(f"Seeds must be non-negative, got {root_seed}")
    sequence = np.random.SeedSequence(
        entropy=int(root_seed),
        spawn_key=(purpose_tag(purpose), *(int(i) for i in indices)),
    )
    return int(sequence.generate_state(1, dtype=np.uint64)[0])


def make_rng(seed):
    """Build the lab's generator (PCG64) from a seed."""
    return np.random.Generator(np.random.PCG64(int(seed)))
