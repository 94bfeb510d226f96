"""Sketch dimensioning: the classical (epsilon, delta) sizing and peeling-threshold widths."""

import logging
import math

import numpy as np

from src.errors import ValidationError

logger = logging.getLogger(__name__)


def guarantee_dimensions(epsilon, delta):
    """
    Count-Min dimensions for additive error epsilon*N with probability 1 - delta.

    Returns:
        tuple[int, int]: (k, n) with k = ceil(ln(1/delta)) and n = ceil(k*e/epsilon).
    """
    if not (0 < epsilon < 1 and 0 < delta < 1):
        raise ValidationError(f"epsilon and delta must lie in (0, 1), got {epsilon}, {delta}")
    k = math.ceil(math.log(1 / delta))
    n = math.ceil(k * math.e / epsilon)
    return k, n


def peeling_threshold(k):
    """
    Density below which a random k-uniform hypergraph has an empty 2-core w.h.p.

    lambda_k = min over x > 0 of x / (k * (1 - exp(-x))**(k - 1)); for k = 2 the
    infimum 1/2 is reached as x -> 0.
    """
    if k < 2:
        raise ValidationError(f"Peeling thresholds need k >= 2, got {k}")
    if k == 2:
        return 0.5
    x = np.linspace(1e-3, 20.0, 400001)
    return float(np.min(x / (k * (1 - np.exp(-x)) ** (k - 1))))


def threshold_width(m, k):
    """Smallest width n with m/n strictly below the peeling threshold of order k."""
    if m < 1:
        raise ValidationError(f"Key count must be at least 1, got {m}")
    return math.floor(m / peeling_threshold(k)) + 1
