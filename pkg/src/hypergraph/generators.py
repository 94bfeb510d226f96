"""
Generators for the hypergraph families used by the experiments.

- gen_erdos_renyi: uniform m-subset of the k-subsets of [0, n)
- gen_dual_complete / gen_dual_complete_r: duals of complete (r-uniform) hypergraphs
- gen_2regular_3uniform: sparsest non-peelable 3-uniform hypergraphs

Every generator is a pure function of its arguments; randomness comes only from
the seed.
"""

import logging
import math
from itertools import combinations

import numpy as np

from src.errors import RejectionBudgetExceeded, ValidationError
from src.hypergraph.model import Hypergraph
from src.rng import make_rng

logger = logging.getLogger(__name__)

DEFAULT_RETRY_BUDGET = 1000

# Below this many candidate edges, and when m is a large share of them,
# enumerating every k-subset beats rejection sampling.
_ENUMERATION_LIMIT = 200_000


def gen_erdos_renyi(n, m, k, seed):
    """
    Draw a uniformly random k-uniform hypergraph with n vertices and m distinct edges.

    Each edge holds k distinct vertices; duplicate edges are rejected against a
    hash set, so the result is a uniform m-subset of all k-subsets of [0, n).
    Edge order is the order in which edges were accepted.

    Args:
        n (int): Vertex count.
        m (int): Edge count.
        k (int): Edge order, at least 2.
        seed (int): Generator seed.

    Returns:
        Hypergraph: The sampled hypergraph.

    Raises:
        ValidationError: If k < 2, k > n, m < 0 or m > C(n, k).
    """
    if k < 2:
        raise ValidationError(f"Edge order k must be at least 2, got {k}")
    if k > n:
        raise ValidationError(f"Edge order k={k} exceeds vertex count n={n}")
    if m < 0:
        raise ValidationError(f"Edge count must be non-negative, got {m}")
    total = math.comb(n, k)
    if m > total:
        raise ValidationError(f"Cannot draw {m} distinct edges: only C({n},{k})={total} exist")

    rng = make_rng(seed)
    if total <= _ENUMERATION_LIMIT and 2 * m >= total:
        candidates = list(combinations(range(n), k))
        chosen = rng.choice(len(candidates), size=m, replace=False)
        edges = [candidates[i] for i in chosen]
    else:
        edges = _rejection_edges(rng, n, m, k)

    logger.debug(f"Generated Erdos-Renyi hypergraph n={n} m={m} k={k} seed={seed}")
    return Hypergraph(n=n, k=k, edges=edges)


def _rejection_edges(rng, n, m, k):
    seen = set()
    edges = []
    while len(edges) < m:
        batch = max(16, int(1.2 * (m - len(edges))))
        draws = np.sort(rng.integers(0, n, size=(batch, k)), axis=1)
        distinct = np.all(draws[:, 1:] != draws[:, :-1], axis=1)
        for row in draws[distinct]:
            edge = tuple(int(v) for v in row)
            if edge in seen:
                continue
            seen.add(edge)
            edges.append(edge)
            if len(edges) == m:
                break
    return edges


def gen_dual_complete(n):
    """
    Build K'_n, the dual of the complete graph K_n.

    Vertices are the C(n, 2) edges of K_n (in lexicographic order); edge i lists
    the K_n edges incident to K_n vertex i, so every edge has order n-1 and every
    vertex has degree 2.
    """
    if n < 2:
        raise ValidationError(f"The dual complete graph needs n >= 2, got {n}")
    return gen_dual_complete_r(n, 2)


def gen_dual_complete_r(n, r):
    """
    Build K'_{n,r}, the dual of the complete r-uniform hypergraph on n vertices.

    Args:
        n (int): Vertex count of the base hypergraph.
        r (int): Edge order of the base hypergraph.

    Returns:
        Hypergraph: C(n, r) vertices and n edges of order C(n-1, r-1); every
        vertex has degree r.

    Raises:
        ValidationError: If r < 2 or r > n.
    """
    if r < 2:
        raise ValidationError(f"Base edge order r must be at least 2, got {r}")
    if r > n:
        raise ValidationError(f"Base edge order r={r} exceeds base vertex count n={n}")

    base_edges = list(combinations(range(n), r))
    incident = [[] for _ in range(n)]
    for index, base_edge in enumerate(base_edges):
        for base_vertex in base_edge:
            incident[base_vertex].append(index)

    order = math.comb(n - 1, r - 1)
    return Hypergraph(n=len(base_edges), k=order, edges=incident)


def gen_2regular_3uniform(t, seed, retry_budget=DEFAULT_RETRY_BUDGET):
    """
    Sample a simple 2-regular 3-uniform hypergraph with 3t vertices and 2t edges.

    Configuration model: every vertex contributes two stubs, the 6t stubs are
    shuffled and cut into triples. A shuffle is rejected when a triple repeats a
    vertex or two triples coincide.

    Args:
        t (int): Size parameter, at least 1.
        seed (int): Generator seed.
        retry_budget (int, optional): Maximum number of shuffles.

    Returns:
        Hypergraph: The sampled hypergraph.

    Raises:
        ValidationError: If t < 1.
        RejectionBudgetExceeded: If no simple pairing was found within the budget.
    """
    if t < 1:
        raise ValidationError(f"Size parameter t must be at least 1, got {t}")

    rng = make_rng(seed)
    stubs = np.repeat(np.arange(3 * t, dtype=np.int64), 2)
    for attempt in range(retry_budget):
        triples = np.sort(rng.permutation(stubs).reshape(2 * t, 3), axis=1)
        if np.any(triples[:, 1:] == triples[:, :-1]):
            continue
        edges = [tuple(int(v) for v in row) for row in triples]
        if len(set(edges)) != len(edges):
            continue
        logger.debug(f"2-regular 3-uniform hypergraph t={t} accepted after {attempt + 1} shuffles")
        return Hypergraph(n=3 * t, k=3, edges=edges)

    raise RejectionBudgetExceeded(
        f"No simple 2-regular 3-uniform hypergraph with t={t} after {retry_budget} shuffles"
    )
