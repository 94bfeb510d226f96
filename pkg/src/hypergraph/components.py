import logging

from attrs import define, field

logger = logging.getLogger(__name__)


@define(frozen=True)
class Component:
    vertices: frozenset = field(converter=frozenset)
    edges: frozenset = field(converter=frozenset)

    @property
    def excess(self):
        """|E'| - |V'|; -1 for a tree (an isolated vertex counts as a tree)."""
        return len(self.edges) - len(self.vertices)


@define(frozen=True)
class ComponentReport:
    """
    Connected components of a hypergraph.

    Components are ordered by their smallest vertex id. ``giant`` is the index of
    the component with most vertices, the lowest index winning ties, or None for
    a hypergraph without vertices, whose giant excess is 0.
    """

    components: tuple = field(converter=tuple)
    giant: int = None

    @property
    def giant_component(self):
        return None if self.giant is None else self.components[self.giant]

    @property
    def giant_excess(self):
        return 0 if self.giant is None else self.giant_component.excess

    def total_excess(self):
        return sum(c.excess for c in self.components)


class _UnionFind:
    def __init__(self, size):
        self.parent = list(range(size))
        self.rank = [0] * size

    def find(self, x):
        root = x
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[x] != root:
            self.parent[x], x = root, self.parent[x]
        return root

    def union(self, a, b):
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return
        if self.rank[ra] < self.rank[rb]:
            ra, rb = rb, ra
        self.parent[rb] = ra
        if self.rank[ra] == self.rank[rb]:
            self.rank[ra] += 1


def components(hypergraph):
    """
    Find connected components with union-find over edge incidences.

    Args:
        hypergraph (Hypergraph): Hypergraph to analyse.

    Returns:
        ComponentReport: Components with their vertex and edge sets and the giant index.
    """
    uf = _UnionFind(hypergraph.n)
    for edge in hypergraph.edges:
        first = edge[0]
        for v in edge[1:]:
            uf.union(first, v)

    vertex_groups = {}
    for v in range(hypergraph.n):
        vertex_groups.setdefault(uf.find(v), []).append(v)
    edge_groups = {}
    for index, edge in enumerate(hypergraph.edges):
        edge_groups.setdefault(uf.find(edge[0]), []).append(index)

    # dict insertion order follows the smallest vertex of each component
    found = tuple(
        Component(vertices=members, edges=edge_groups.get(root, ()))
        for root, members in vertex_groups.items()
    )
    giant = 0 if found else None
    for index, component in enumerate(found):
        if len(component.vertices) > len(found[giant].vertices):
            giant = index

    logger.debug(f"{hypergraph!r} has {len(found)} components, giant has {len(found[giant].vertices) if found else 0} vertices")
    return ComponentReport(components=found, giant=giant)
