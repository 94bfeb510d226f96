"""
Seeded hash family mapping keys to counter positions.

Function i hashes the key bytes with xxh64 under its own 64-bit seed, derived
from the sketch's hash_seed, and reduces the digest to [0, n) by multiply-shift:
(h * n) >> 64.
"""

import logging

import numpy as np
import xxhash

from src.rng import derive_seed

logger = logging.getLogger(__name__)


def key_bytes(key):
    """Keys are opaque byte strings; str is UTF-8 encoded and integers use their decimal text."""
    if isinstance(key, (bytes, bytearray, memoryview)):
        return bytes(key)
    if isinstance(key, str):
        return key.encode('utf-8')
    if isinstance(key, (int, np.integer)):
        return str(int(key)).encode('ascii')
    raise TypeError(f"Unsupported key type: {type(key).__name__}")


class HashFamily:
    """k hash functions into [0, n), fixed by hash_seed."""

    def __init__(self, n, k, hash_seed):
        self.n = n
        self.k = k
        self.hash_seed = hash_seed
        self.seeds = tuple(derive_seed(hash_seed, 'sketch-hash', i) for i in range(k))

    def raw_positions(self, key):
        """The k positions in function order, repeats kept."""
        data = key_bytes(key)
        n = self.n
        return tuple((xxhash.xxh64_intdigest(data, seed=s) * n) >> 64 for s in self.seeds)

    def positions(self, key):
        """Distinct positions of a key, sorted."""
        return tuple(sorted(set(self.raw_positions(key))))

    def __repr__(self):
        return f"HashFamily(n={self.n}, k={self.k}, hash_seed={self.hash_seed})"
