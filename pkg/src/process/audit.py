"""Step-by-step audit of CU on the dual complete graph K'_n."""

import logging
from math import comb

import numpy as np
from attrs import define, field

from src.errors import InvariantViolation, ValidationError
from src.process.state import init_state, step_cu

logger = logging.getLogger(__name__)


@define(frozen=True)
class DualAuditRecord:
    """
    One audited step.

    Attributes:
        t (int): Step clock before the step.
        edge (int): Drawn edge.
        minedges (tuple[int]): Edges with minimal counter before the step.
        p (int): Minimal edge counter before the step.
        q (int): Maximal edge counter before the step.
        increased (tuple[int]): Edges whose counter grew during the step.
        counter_sum (int): Sum of edge counters after the step.
    """

    t: int
    edge: int
    minedges: tuple = field(converter=tuple)
    p: int
    q: int
    increased: tuple = field(converter=tuple)
    counter_sum: int


def is_dual_complete(hypergraph):
    """True for K'_n: C(m, 2) vertices, each shared by exactly two of the m edges."""
    m = hypergraph.m
    return (
        m >= 2
        and hypergraph.n == comb(m, 2)
        and hypergraph.k == m - 1
        and hypergraph.is_uniform
        and bool(np.all(hypergraph.degree == 2))
    )


def dual_step_audit(hypergraph, state, e):
    """
    Apply one CU step to K'_n and check how the edge counters move.

    Before the step at least two edges hold the minimal counter. Afterwards only
    the drawn edge has grown by one, unless exactly two edges were minimal and the
    drawn edge is one of them, in which case both grew by one. The counter sum
    equals t + p after the step.

    Raises:
        ValidationError: If the hypergraph is not K'_n or the state did not start at zero.
        InvariantViolation: If any of the checks fails; carries t and a snapshot.
    """
    if not is_dual_complete(hypergraph):
        raise ValidationError(f"{hypergraph!r} is not a dual complete graph")
    if not np.all(state.initial == 0):
        raise ValidationError("The dual audit needs counters that started at zero")

    before = state.edge_counters()
    p, q = int(before.min()), int(before.max())
    minedges = tuple(np.flatnonzero(before == p).tolist())
    t = state.t
    if len(minedges) < 2:
        raise InvariantViolation(f"Only {len(minedges)} minimal edge before drawing {e}", step=t, snapshot=state.snapshot())

    step_cu(state, e)
    after = state.edge_counters()
    delta = after - before
    increased = tuple(np.flatnonzero(delta).tolist())

    expected = {e}
    if len(minedges) == 2 and e in minedges:
        expected.update(minedges)
    if set(increased) != expected or np.any(delta[list(increased)] != 1):
        raise InvariantViolation(
            f"Drawing edge {e} increased edges {increased}, expected {sorted(expected)}",
            step=t, snapshot=state.snapshot(),
        )

    counter_sum = int(after.sum())
    if counter_sum != state.t + int(after.min()):
        raise InvariantViolation(
            f"Edge counters sum to {counter_sum}, expected t + p = {state.t + int(after.min())}",
            step=state.t, snapshot=state.snapshot(),
        )
    return DualAuditRecord(t=t, edge=e, minedges=minedges, p=p, q=q, increased=increased, counter_sum=counter_sum)


def audit_run(hypergraph, keys):
    """Audit every step of a CU run on K'_n from zero counters; returns the records."""
    state = init_state(hypergraph)
    records = [dual_step_audit(hypergraph, state, int(e)) for e in np.asarray(keys).tolist()]
    logger.info(f"Audited {len(records)} CU steps on {hypergraph!r}")
    return records
