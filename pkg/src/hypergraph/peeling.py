"""
Peeling of (marked) hypergraphs.

Peeling runs in synchronous rounds: in round i every unmarked vertex that is a
leaf (degree 1) or isolated (degree 0) in the residual hypergraph H_i is removed
together with its incident edges, and those vertices get level i. Marked
vertices are never removed. What remains at the fixpoint is the core.
"""

import logging

import numpy as np
from attrs import define, field

from src.errors import ValidationError, VertexInCoreError
from src.hypergraph.model import Hypergraph

logger = logging.getLogger(__name__)

# Level value for vertices never peeled (core or marked).
UNPEELED = -1


@define(frozen=True)
class PeelResult:
    """
    Outcome of peeling.

    Attributes:
        level (tuple[int]): Peeling level per vertex, UNPEELED for core and marked vertices.
        core_vertices (frozenset): Unmarked vertices left at the fixpoint.
        core_edges (frozenset): Edge indices left at the fixpoint.
        marked (frozenset): Marked vertices (never peeled, never in the core set).
        rounds (int): Number of rounds that removed at least one vertex.
    """

    level: tuple = field(converter=tuple)
    core_vertices: frozenset = field(converter=frozenset)
    core_edges: frozenset = field(converter=frozenset)
    marked: frozenset = field(converter=frozenset, factory=frozenset)
    rounds: int = 0

    @property
    def peelable(self):
        return not self.core_vertices

    def core_fraction(self):
        """Fraction of all vertices that sit in the core."""
        return len(self.core_vertices) / len(self.level) if self.level else 0.0

    def in_core(self, v):
        return v in self.core_vertices


def _check_marked(hypergraph, marked):
    marked = frozenset(int(v) for v in marked)
    outside = [v for v in marked if v < 0 or v >= hypergraph.n]
    if outside:
        raise ValidationError(f"Marked vertices outside [0, {hypergraph.n}): {sorted(outside)}")
    return marked


def peel(hypergraph, marked=frozenset()):
    """
    Peel a hypergraph by synchronous rounds.

    Args:
        hypergraph (Hypergraph): Hypergraph to peel.
        marked (iterable[int], optional): Vertices that may never be peeled.

    Returns:
        PeelResult: Levels, core and peelability.

    Raises:
        ValidationError: If a marked vertex is out of range.
    """
    marked = _check_marked(hypergraph, marked)
    n = hypergraph.n
    degree = hypergraph.degree.copy()
    incident = hypergraph.vertex_edges
    edge_alive = np.ones(hypergraph.m, dtype=bool)
    level = np.full(n, UNPEELED, dtype=np.int64)

    frontier = [v for v in range(n) if v not in marked and degree[v] <= 1]
    round_index = 0
    while frontier:
        for v in frontier:
            level[v] = round_index

        touched = set()
        for v in frontier:
            for e in incident[v]:
                if not edge_alive[e]:
                    continue
                edge_alive[e] = False
                for u in hypergraph.edges[e]:
                    degree[u] -= 1
                    touched.add(u)

        frontier = sorted(
            u for u in touched
            if level[u] == UNPEELED and u not in marked and degree[u] <= 1
        )
        round_index += 1

    core_vertices = [v for v in range(n) if level[v] == UNPEELED and v not in marked]
    core_edges = np.flatnonzero(edge_alive).tolist()
    logger.debug(
        f"Peeled {hypergraph!r} in {round_index} rounds: "
        f"{len(core_vertices)} core vertices, {len(core_edges)} core edges"
    )
    return PeelResult(
        level=level.tolist(),
        core_vertices=core_vertices,
        core_edges=core_edges,
        marked=marked,
        rounds=round_index,
    )


def descendant_closure(hypergraph, v, peel_result=None):
    """
    Build the marked hypergraph H_v around a vertex of finite level.

    D_v holds v and every vertex reachable from v by a chain of vertices sharing
    edges along which the level strictly decreases. H_v keeps the vertex ids of
    the input and holds exactly the edges incident to D_v; every vertex outside
    D_v is marked. H_v is always peelable.

    Args:
        hypergraph (Hypergraph): The unmarked hypergraph.
        v (int): Vertex of finite level.
        peel_result (PeelResult, optional): Reuse an existing peeling of hypergraph.

    Returns:
        tuple: (Hypergraph H_v, frozenset marked, frozenset D_v)

    Raises:
        ValidationError: If v is out of range.
        VertexInCoreError: If v has no finite level.
    """
    if v < 0 or v >= hypergraph.n:
        raise ValidationError(f"Vertex {v} outside [0, {hypergraph.n})")
    result = peel_result or peel(hypergraph)
    level = result.level
    if level[v] == UNPEELED:
        raise VertexInCoreError(v)

    descendants = {v}
    stack = [v]
    while stack:
        w = stack.pop()
        for e in hypergraph.vertex_edges[w]:
            for u in hypergraph.edges[e]:
                if u in descendants or level[u] == UNPEELED:
                    continue
                if level[u] < level[w]:
                    descendants.add(u)
                    stack.append(u)

    edge_indices = sorted({e for w in descendants for e in hypergraph.vertex_edges[w]})
    closure = Hypergraph(
        n=hypergraph.n,
        k=hypergraph.k,
        edges=[hypergraph.edges[e] for e in edge_indices],
    )
    marked = frozenset(range(hypergraph.n)) - descendants
    return closure, marked, frozenset(descendants)


def restrict(hypergraph, edge_subset):
    """
    Restrict a hypergraph to a subset of its edges, marking the boundary.

    The unmarked vertices W are those incident only to edges of the subset (and
    to at least one of them); every other vertex is marked. Vertex ids are kept.

    Args:
        hypergraph (Hypergraph): The full hypergraph.
        edge_subset (iterable[int]): Edge indices to keep, in the order to keep them.

    Returns:
        tuple: (Hypergraph restricted, frozenset marked)
    """
    edge_subset = list(dict.fromkeys(int(e) for e in edge_subset))
    if any(e < 0 or e >= hypergraph.m for e in edge_subset):
        raise ValidationError(f"Edge subset has indices outside [0, {hypergraph.m})")
    kept = set(edge_subset)
    inner = {
        v for v in range(hypergraph.n)
        if hypergraph.vertex_edges[v] and all(e in kept for e in hypergraph.vertex_edges[v])
    }
    restricted = Hypergraph(
        n=hypergraph.n,
        k=hypergraph.k,
        edges=[hypergraph.edges[e] for e in edge_subset],
    )
    return restricted, frozenset(range(hypergraph.n)) - inner
