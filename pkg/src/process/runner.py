"""
Running a CM or CU process over a whole stream.

Long runs go through the compiled kernel. With check_invariants the steps are
applied one at a time and the counters are checked after each of them.
"""

import logging

import numpy as np

from src.errors import InvariantViolation, ValidationError
from src.process.kernels import run_stream
from src.process.report import ErrorReport
from src.process.state import INF, Strategy, get_step, init_state
from src.streams import StreamSpec

logger = logging.getLogger(__name__)


def _keys_of(hypergraph, stream, keys=None):
    if isinstance(stream, StreamSpec):
        if keys is None:
            keys = stream.generate(hypergraph.m)
        return np.asarray(keys, dtype=np.int64), stream.multiplicity(hypergraph.m), stream.label, stream.seed
    keys = np.asarray(stream, dtype=np.int64).reshape(-1)
    N = keys.size / hypergraph.m if hypergraph.m else 0.0
    return keys, N, 'explicit', None


def _validate_keys(hypergraph, keys):
    if keys.size and (keys.min() < 0 or keys.max() >= hypergraph.m):
        bad = keys[(keys < 0) | (keys >= hypergraph.m)][0]
        raise ValidationError(f"Edge index {bad} out of range [0, {hypergraph.m})")


def witnessed_vertices(state):
    """Boolean mask of vertices with an incident edge e such that c_e = c_v."""
    hypergraph = state.hypergraph
    tight = state.edge_counters()[hypergraph.incidence_edges] == state.vertex_counter[hypergraph.edge_vertices]
    witnessed = np.zeros(hypergraph.n, dtype=bool)
    witnessed[hypergraph.edge_vertices[tight]] = True
    return witnessed


def cm_counter_identity(state):
    """True when every finite counter equals its start plus the occurrences of its edges."""
    hypergraph = state.hypergraph
    expected = state.initial.copy()
    finite = expected != INF
    np.add.at(expected, hypergraph.edge_vertices, np.where(
        finite[hypergraph.edge_vertices], state.edge_occurrences[hypergraph.incidence_edges], 0
    ))
    return bool(np.array_equal(expected[finite], state.vertex_counter[finite]))


def check_state(state, strategy):
    """
    Assert the per-step invariants of a run.

    Always: c_e >= o_e for every edge and marked counters unchanged. Under CU from
    a zero start, every unmarked vertex with an incident edge has an incident edge
    whose counter equals its own. Under CM the counter identity holds.

    Raises:
        InvariantViolation: With the current step and a counter snapshot.
    """
    hypergraph = state.hypergraph
    counters = state.edge_counters()
    under = np.flatnonzero(counters < state.edge_occurrences)
    if under.size:
        raise InvariantViolation(
            f"Edge {under[0]} undercounts: c_e={counters[under[0]]} < o_e={state.edge_occurrences[under[0]]}",
            step=state.t, snapshot=state.snapshot(),
        )

    marked = state.initial == INF
    if np.any(state.vertex_counter[marked] != INF):
        raise InvariantViolation("A marked counter left +inf", step=state.t, snapshot=state.snapshot())

    if Strategy(strategy) is Strategy.CU:
        if not state.zero_start:
            return
        needs = (hypergraph.degree > 0) & ~marked
        missing = np.flatnonzero(needs & ~witnessed_vertices(state))
        if missing.size:
            raise InvariantViolation(
                f"Vertex {missing[0]} has no incident edge with c_e = c_v",
                step=state.t, snapshot=state.snapshot(),
            )
    elif not cm_counter_identity(state):
        raise InvariantViolation(
            "CM counters differ from initial values plus incident occurrences",
            step=state.t, snapshot=state.snapshot(),
        )


def execute(hypergraph, keys, strategy, initial=None, check_invariants=False):
    """
    Apply a key sequence to fresh counters.

    Args:
        hypergraph (Hypergraph): Structure to run on.
        keys (Sequence[int]): Edge indices in stream order.
        strategy (str | Strategy): 'cm' or 'cu'.
        initial (Sequence, optional): Initial counter assignment (see init_state).
        check_invariants (bool): Check the counters after every step.

    Returns:
        CounterState: The final state.
    """
    strategy = Strategy(strategy)
    keys = np.ascontiguousarray(keys, dtype=np.int64)
    _validate_keys(hypergraph, keys)
    state = init_state(hypergraph, initial)

    if check_invariants:
        step = get_step(strategy)
        for e in keys.tolist():
            step(state, e)
            check_state(state, strategy)
    elif keys.size:
        run_stream(
            hypergraph.edge_ptr,
            hypergraph.edge_vertices,
            state.vertex_counter,
            state.edge_occurrences,
            keys,
            strategy is Strategy.CU,
        )
        state.t = int(keys.size)
    return state


def run(hypergraph, stream, strategy, check_invariants=False, initial=None, seed=None, keys=None):
    """
    Run the process on a stream and report per-edge errors.

    Args:
        hypergraph (Hypergraph): Structure to run on.
        stream (StreamSpec | Sequence[int]): Stream description or explicit edge sequence.
        strategy (str | Strategy): 'cm' or 'cu'.
        check_invariants (bool): Check invariants after every step (small instances).
        initial (Sequence, optional): Initial counter assignment.
        seed (int, optional): Seed recorded in the report; defaults to the stream seed.
        keys (numpy.ndarray, optional): Keys already generated from a StreamSpec, so that
            several strategies can share one stream without generating it again.

    Returns:
        ErrorReport: Errors of the run.

    Raises:
        ValidationError: If a stream index is out of range.
        InvariantViolation: If a checked invariant fails; carries the step index.
    """
    keys, N, model, stream_seed = _keys_of(hypergraph, stream, keys)
    logger.debug(f"Running {Strategy(strategy).value} on {hypergraph!r} with {keys.size} keys ({model})")
    try:
        state = execute(hypergraph, keys, strategy, initial=initial, check_invariants=check_invariants)
    except InvariantViolation as e:
        logger.error(f"Invariant violated on {hypergraph!r}: {e}")
        raise
    return ErrorReport.from_state(
        state, N=N, model=model, strategy=Strategy(strategy).value,
        seed=stream_seed if seed is None else seed,
    )
