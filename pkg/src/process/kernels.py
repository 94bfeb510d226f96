"""Compiled step loops for long runs; same rules as state.step_cu / state.step_cm."""

import numpy as np
from numba import njit

_SATURATED = np.iinfo(np.int64).max - 1


@njit(cache=True)
def run_stream(edge_ptr, edge_vertices, counters, occurrences, stream, conservative):
    """
    Apply every key of the stream in order, updating counters and occurrences in place.

    Args:
        edge_ptr (int64[:]): CSR offsets of the edges.
        edge_vertices (int64[:]): Concatenated edge vertex ids.
        counters (int64[:]): Vertex counters, modified in place.
        occurrences (int64[:]): Edge occurrence counts, modified in place.
        stream (int64[:]): Edge indices, already validated.
        conservative (bool): CU when True, CM otherwise.
    """
    for s in range(stream.shape[0]):
        e = stream[s]
        lo = edge_ptr[e]
        hi = edge_ptr[e + 1]
        if conservative:
            low = counters[edge_vertices[lo]]
            for j in range(lo + 1, hi):
                value = counters[edge_vertices[j]]
                if value < low:
                    low = value
            if low < _SATURATED:
                for j in range(lo, hi):
                    v = edge_vertices[j]
                    if counters[v] == low:
                        counters[v] += 1
        else:
            for j in range(lo, hi):
                v = edge_vertices[j]
                if counters[v] < _SATURATED:
                    counters[v] += 1
        occurrences[e] += 1
