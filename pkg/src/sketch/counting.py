"""
Counting sketch over one shared counter array (spectral Bloom layout).

All k hash functions index the same array of n counters. Positions that collide
for one key are treated as a set, so each counter moves at most once per update
and the key's edge in the induced hypergraph may be shorter than k.
"""

import json
import logging
from collections import Counter

import numpy as np

from src.errors import ValidationError
from src.hypergraph import Hypergraph
from src.persistence import get_writer
from src.process.state import Strategy
from src.sketch.hashing import HashFamily

logger = logging.getLogger(__name__)

COUNTER_DTYPE = np.dtype('<u8')


class CountingSketch:
    """
    Count-Min style sketch with a CM or CU update rule.

    Attributes:
        n (int): Width, the number of counters.
        k (int): Depth, the number of hash functions.
        hash_seed (int): Seed fixing the hash functions.
        strategy (Strategy): Update rule.
        counters (numpy.ndarray): int64 counter array.
    """

    def __init__(self, n, k, hash_seed, strategy, counters=None):
        self.n = n
        self.k = k
        self.hash_seed = hash_seed
        self.strategy = Strategy(strategy)
        self.hashes = HashFamily(n, k, hash_seed)
        self.counters = np.zeros(n, dtype=np.int64) if counters is None else counters

    def positions(self, key):
        return self.hashes.positions(key)

    def update(self, key):
        positions = self.positions(key)
        counters = self.counters
        if self.strategy is Strategy.CU:
            low = min(counters[p] for p in positions)
            for p in positions:
                if counters[p] == low:
                    counters[p] += 1
        else:
            for p in positions:
                counters[p] += 1

    def extend(self, keys):
        """
        Apply updates for every key in order.

        CM counters do not depend on the update order, so each distinct key is
        hashed once and its multiplicity added in bulk.
        """
        if self.strategy is Strategy.CU:
            for key in keys:
                self.update(key)
            return
        for key, count in Counter(keys).items():
            self.counters[list(self.positions(key))] += count

    def query(self, key):
        counters = self.counters
        return int(min(counters[p] for p in self.positions(key)))

    def hash_hypergraph(self, distinct_keys):
        """
        Build the hypergraph the sketch induces on a list of distinct keys.

        Edge i holds the positions of distinct_keys[i]. Keys whose positions
        collide give edges of order < k; they are logged and the result is then
        not uniform.

        Raises:
            ValidationError: If a key repeats.
        """
        distinct_keys = list(distinct_keys)
        if len(set(distinct_keys)) != len(distinct_keys):
            raise ValidationError("hash_hypergraph needs distinct keys")
        edges = [self.positions(key) for key in distinct_keys]
        short = sum(1 for edge in edges if len(edge) < self.k)
        if short:
            logger.warning(f"{short} of {len(edges)} keys have colliding hash positions (edge order < {self.k})")
        return Hypergraph(n=self.n, k=self.k, edges=edges)

    def degenerate_keys(self, keys):
        """Keys whose k positions are not all distinct."""
        return [key for key in keys if len(self.positions(key)) < self.k]

    def header(self):
        return {'n': self.n, 'k': self.k, 'hash_seed': self.hash_seed, 'strategy': self.strategy.value}

    def to_bytes(self):
        """One JSON header line, then the counters as little-endian unsigned 64-bit integers."""
        head = json.dumps(self.header(), sort_keys=True).encode('utf-8') + b'\n'
        return head + self.counters.astype(COUNTER_DTYPE).tobytes()

    @classmethod
    def from_bytes(cls, data):
        head, sep, body = bytes(data).partition(b'\n')
        if not sep:
            raise ValidationError("Sketch state is missing its header line")
        try:
            header = json.loads(head.decode('utf-8'))
            n, k, hash_seed, strategy = header['n'], header['k'], header['hash_seed'], header['strategy']
        except (ValueError, KeyError) as e:
            raise ValidationError(f"Invalid sketch header: {e}")
        if len(body) != n * COUNTER_DTYPE.itemsize:
            raise ValidationError(f"Sketch state holds {len(body)} counter bytes, expected {n * COUNTER_DTYPE.itemsize}")
        counters = np.frombuffer(body, dtype=COUNTER_DTYPE).astype(np.int64)
        return new_sketch(n, k, hash_seed, strategy, counters=counters)

    def save(self, path):
        get_writer().write_bytes(path, self.to_bytes())
        logger.info(f"Saved {self!r} to {path}")
        return path

    @classmethod
    def load(cls, path):
        with open(path, 'rb') as f:
            return cls.from_bytes(f.read())

    def __repr__(self):
        return f"CountingSketch(n={self.n}, k={self.k}, hash_seed={self.hash_seed}, strategy={self.strategy.value})"


def new_sketch(n, k, hash_seed, strategy, counters=None):
    """
    Create a sketch with zeroed counters.

    Args:
        n (int): Width, at least 1.
        k (int): Number of hash functions, at least 1.
        hash_seed (int): Non-negative seed for the hash family.
        strategy (str): 'cm' or 'cu'.
        counters (numpy.ndarray, optional): Initial counters, used when importing state.

    Raises:
        ValidationError: On a zero width or depth, a negative seed or an unknown strategy.
    """
    if n < 1 or k < 1:
        raise ValidationError(f"Sketch width and depth must be at least 1, got n={n}, k={k}")
    if hash_seed < 0:
        raise ValidationError(f"Hash seed must be non-negative, got {hash_seed}")
    try:
        strategy = Strategy(strategy)
    except ValueError:
        raise ValidationError(f"Unsupported strategy: {strategy}")
    return CountingSketch(int(n), int(k), int(hash_seed), strategy, counters=counters)
