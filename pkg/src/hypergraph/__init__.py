from .model import Hypergraph
from .generators import (
    gen_erdos_renyi,
    gen_dual_complete,
    gen_dual_complete_r,
    gen_2regular_3uniform,
)
from .peeling import PeelResult, UNPEELED, peel, descendant_closure, restrict
from .components import Component, ComponentReport, components
from .io import read_edge_list, write_edge_list, parse_edge_list, format_edge_list
import logging

logger = logging.getLogger(__name__)

GRAPH_KINDS = ('erdos-renyi', 'dual', 'dual-r', 'regular')

def generate(kind, n=None, m=None, k=None, r=None, t=None, seed=0, retry_budget=None):
    """
    Factory function to build a hypergraph of the requested family.

    Args:
        kind (str): One of 'erdos-renyi', 'dual', 'dual-r' or 'regular'.
        n (int, optional): Vertex count ('erdos-renyi') or base vertex count ('dual', 'dual-r').
        m (int, optional): Edge count ('erdos-renyi').
        k (int, optional): Edge order ('erdos-renyi').
        r (int, optional): Base edge order ('dual-r').
        t (int, optional): Size parameter ('regular').
        seed (int, optional): Generator seed for the random families.
        retry_budget (int, optional): Shuffle budget for 'regular'.

    Returns:
        Hypergraph: The generated hypergraph.

    Raises:
        ValueError: If the kind is unsupported or a required parameter is missing.
    """
    logger.info(f"Generating {kind} hypergraph")

    def require(**params):
        missing = [name for name, value in params.items() if value is None]
        if missing:
            raise ValueError(f"Hypergraph kind '{kind}' requires: {', '.join(missing)}")

    if kind == 'erdos-renyi':
        require(n=n, m=m, k=k)
        return gen_erdos_renyi(n, m, k, seed)
    elif kind == 'dual':
        require(n=n)
        return gen_dual_complete(n)
    elif kind == 'dual-r':
        require(n=n, r=r)
        return gen_dual_complete_r(n, r)
    elif kind == 'regular':
        require(t=t)
        if retry_budget is None:
            return gen_2regular_3uniform(t, seed)
        return gen_2regular_3uniform(t, seed, retry_budget=retry_budget)
    else:
        raise ValueError(f"Unsupported hypergraph kind: {kind}")
