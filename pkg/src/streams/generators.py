"""
Key-sequence generators for the input models.

Keys are edge indices in [0, m). Every generator is a pure function of its
arguments and returns an int64 numpy array.
"""

import logging

import numpy as np

from src.errors import ValidationError
from src.rng import make_rng

logger = logging.getLogger(__name__)


def _check_sizes(m, N):
    if m < 1:
        raise ValidationError(f"Key count m must be at least 1, got {m}")
    if N < 1:
        raise ValidationError(f"Multiplicity N must be at least 1, got {N}")


def n_balanced(m, N, seed):
    """Random permutation (Fisher-Yates) of N copies of every key in [0, m)."""
    _check_sizes(m, N)
    keys = np.repeat(np.arange(m, dtype=np.int64), N)
    make_rng(seed).shuffle(keys)
    return keys


def n_uniform(m, N, seed):
    """N*m independent uniform draws over [0, m)."""
    _check_sizes(m, N)
    return make_rng(seed).integers(0, m, size=N * m, dtype=np.int64)


def zipf_probs(m, beta):
    """
    Zipf probabilities for ranks 1..m: p_i proportional to 1/i**beta.

    Key id is rank - 1, so key 0 is the most frequent.

    Args:
        m (int): Number of keys, at least 1.
        beta (float): Skewness, at least 0; beta=0 is uniform.

    Returns:
        numpy.ndarray: Probability vector of length m.
    """
    if m < 1:
        raise ValidationError(f"Key count m must be at least 1, got {m}")
    if beta < 0:
        raise ValidationError(f"Zipf skewness must be non-negative, got {beta}")
    weights = np.arange(1, m + 1, dtype=np.float64) ** -float(beta)
    return weights / weights.sum()


def zipf_stream(m, N, beta, seed):
    """
    N*m independent Zipf draws by inverse CDF.

    Each uniform variate is located in the cumulative table with a binary
    search, so a draw costs O(log m). With beta = 0 the draws are exactly those
    of n_uniform for the same seed.
    """
    _check_sizes(m, N)
    if beta == 0:
        return n_uniform(m, N, seed)
    cumulative = np.cumsum(zipf_probs(m, beta))
    uniforms = make_rng(seed).random(N * m)
    keys = np.searchsorted(cumulative, uniforms, side='right')
    # guards against the last cumulative entry rounding below 1.0
    return np.minimum(keys, m - 1).astype(np.int64)
