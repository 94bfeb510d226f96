import logging
from functools import cached_property

import numpy as np
from attrs import define, field

from src.errors import ValidationError

logger = logging.getLogger(__name__)


def _as_edges(edges):
    return tuple(tuple(int(v) for v in edge) for edge in edges)


@define(frozen=True, slots=False, eq=False)
class Hypergraph:
    """
    A hypergraph whose vertices are counter cells and whose edges are key position sets.

    Vertices are the integers [0, n). Edges keep their generation order and are
    stored as tuples of distinct vertex ids. ``k`` is the edge order; generators
    produce k-uniform hypergraphs, while hypergraphs induced by a sketch may hold
    shorter edges when hash positions collide (``is_uniform`` is then False).

    Derived incidence arrays are computed lazily and cached; the instance itself
    never changes after construction.
    """

    n: int = field(converter=int)
    k: int = field(converter=int)
    edges: tuple = field(converter=_as_edges)

    def __attrs_post_init__(self):
        if self.n < 0:
            raise ValidationError(f"Vertex count must be non-negative, got {self.n}")
        for index, edge in enumerate(self.edges):
            if not edge:
                raise ValidationError(f"Edge {index} is empty")
            if len(edge) > self.k:
                raise ValidationError(f"Edge {index} has order {len(edge)} > k={self.k}")
            if len(set(edge)) != len(edge):
                raise ValidationError(f"Edge {index} repeats a vertex: {edge}")
            if min(edge) < 0 or max(edge) >= self.n:
                raise ValidationError(f"Edge {index} has a vertex outside [0, {self.n}): {edge}")

    @property
    def m(self):
        return len(self.edges)

    @property
    def density(self):
        """The ratio lambda = m/n."""
        return self.m / self.n if self.n else float('inf')

    @property
    def is_uniform(self):
        return all(len(edge) == self.k for edge in self.edges)

    @property
    def is_simple(self):
        """True when no two edges hold the same vertex set."""
        return len({frozenset(edge) for edge in self.edges}) == self.m

    @cached_property
    def edge_ptr(self):
        """CSR offsets: edge e spans edge_vertices[edge_ptr[e]:edge_ptr[e + 1]]."""
        ptr = np.zeros(self.m + 1, dtype=np.int64)
        ptr[1:] = np.cumsum([len(edge) for edge in self.edges])
        return ptr

    @cached_property
    def edge_vertices(self):
        if not self.edges:
            return np.zeros(0, dtype=np.int64)
        return np.fromiter((v for edge in self.edges for v in edge), dtype=np.int64)

    @cached_property
    def incidence_edges(self):
        """Edge index of every entry of edge_vertices."""
        return np.repeat(np.arange(self.m, dtype=np.int64), np.diff(self.edge_ptr))

    @cached_property
    def degree(self):
        return np.bincount(self.edge_vertices, minlength=self.n).astype(np.int64)

    @cached_property
    def vertex_edges(self):
        """Incident edge indices per vertex, in edge order."""
        incident = [[] for _ in range(self.n)]
        for index, edge in enumerate(self.edges):
            for v in edge:
                incident[v].append(index)
        return tuple(tuple(edges) for edges in incident)

    def degree_sum(self):
        return int(self.degree.sum())

    def edge_sets(self):
        """Edges as a set of frozensets, for isomorphism-free comparisons."""
        return {frozenset(edge) for edge in self.edges}

    def __repr__(self):
        return f"Hypergraph(n={self.n}, m={self.m}, k={self.k})"
