"""
Counter state of a CM or CU process on a hypergraph, and its single-step rules.

Counters are 64-bit naturals. INF is a sentinel above every finite value; it
marks vertices whose counters start (and stay) at +infinity. Finite counters
saturate at SATURATED.
"""

import enum
import logging
import math

import numpy as np

from src.errors import ValidationError

logger = logging.getLogger(__name__)

INF = int(np.iinfo(np.int64).max)
SATURATED = INF - 1


class Strategy(str, enum.Enum):
    CM = 'cm'
    CU = 'cu'


class CounterState:
    """
    Mutable counters of one process execution.

    Attributes:
        hypergraph (Hypergraph): The structure the process runs on.
        vertex_counter (numpy.ndarray): int64 counter per vertex, INF for marked vertices.
        edge_occurrences (numpy.ndarray): int64 number of times each edge was drawn.
        t (int): Step clock.
        initial (numpy.ndarray): Copy of the starting counters.
    """

    def __init__(self, hypergraph, vertex_counter):
        self.hypergraph = hypergraph
        self.vertex_counter = vertex_counter
        self.edge_occurrences = np.zeros(hypergraph.m, dtype=np.int64)
        self.t = 0
        self.initial = vertex_counter.copy()

    @property
    def marked(self):
        return frozenset(np.flatnonzero(self.initial == INF).tolist())

    @property
    def zero_start(self):
        """True when every counter started at 0 or at INF (a marked vertex)."""
        return bool(np.all((self.initial == 0) | (self.initial == INF)))

    def edge_counters(self):
        """c_e = min over the vertices of e, for every edge."""
        hypergraph = self.hypergraph
        if hypergraph.m == 0:
            return np.zeros(0, dtype=np.int64)
        values = self.vertex_counter[hypergraph.edge_vertices]
        return np.minimum.reduceat(values, hypergraph.edge_ptr[:-1])

    def snapshot(self):
        return {
            't': self.t,
            'vertex_counter': self.vertex_counter.tolist(),
            'edge_occurrences': self.edge_occurrences.tolist(),
        }


def _counter_value(value):
    if value is None or value == math.inf or value == INF:
        return INF
    value = int(value)
    if value < 0 or value > SATURATED:
        raise ValidationError(f"Initial counter values must be naturals or +inf, got {value}")
    return value


def init_state(hypergraph, initial=None):
    """
    Create the counter state for a run.

    Args:
        hypergraph (Hypergraph): The structure to run on.
        initial (Sequence, optional): Initial value per vertex; naturals, or
            math.inf / INF / None for +infinity. Defaults to all zeros.

    Returns:
        CounterState: Fresh state with t = 0.

    Raises:
        ValidationError: If the assignment length differs from the vertex count
            or holds a value that is not a natural or +inf.
    """
    if initial is None:
        counters = np.zeros(hypergraph.n, dtype=np.int64)
    else:
        initial = list(initial)
        if len(initial) != hypergraph.n:
            raise ValidationError(
                f"Initial assignment has {len(initial)} values for {hypergraph.n} vertices"
            )
        counters = np.array([_counter_value(v) for v in initial], dtype=np.int64)
    return CounterState(hypergraph, counters)


def marked_assignment(n, marked):
    """Initial assignment with 0 everywhere except +inf on the marked vertices."""
    values = [0] * n
    for v in marked:
        values[v] = INF
    return values


def _edge(state, e):
    if not 0 <= e < state.hypergraph.m:
        raise ValidationError(f"Edge index {e} out of range [0, {state.hypergraph.m})")
    return state.hypergraph.edges[e]


def step_cu(state, e):
    """Conservative update: increment only the incident counters equal to their minimum."""
    vertices = _edge(state, e)
    counters = state.vertex_counter
    low = min(counters[v] for v in vertices)
    # an all-INF edge has no finite counter to move
    if low < SATURATED:
        for v in vertices:
            if counters[v] == low:
                counters[v] += 1
    state.edge_occurrences[e] += 1
    state.t += 1


def step_cm(state, e):
    """Regular Count-Min: increment every finite incident counter."""
    vertices = _edge(state, e)
    counters = state.vertex_counter
    for v in vertices:
        if counters[v] < SATURATED:
            counters[v] += 1
    state.edge_occurrences[e] += 1
    state.t += 1



def get_step(strategy):
    """
    Factory function to get the single-step rule of a strategy.

    Args:
        strategy (str | Strategy): 'cm' or 'cu'.

    Returns:
        Callable[[CounterState, int], None]: The step function.

    Raises:
        ValueError: If the strategy is unsupported.
    """
    logger.debug(f"Selecting {strategy} step rule")

    if strategy == Strategy.CM:
        return step_cm
    elif strategy == Strategy.CU:
        return step_cu
    else:
        raise ValueError(f"Unsupported strategy: {strategy}")
