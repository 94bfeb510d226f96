"""Hypothesis strategies shared by the property tests."""

from math import comb

from hypothesis import strategies as st

from src.hypergraph import gen_erdos_renyi
from src.process import INF

seeds = st.integers(min_value=0, max_value=2**32 - 1)


@st.composite
def hypergraphs(draw, orders=(2, 3, 4), max_n=12, max_m=20):
    """Small random Erdos-Renyi hypergraphs."""
    k = draw(st.sampled_from(orders))
    n = draw(st.integers(min_value=k, max_value=max_n))
    m = draw(st.integers(min_value=1, max_value=min(max_m, comb(n, k))))
    return gen_erdos_renyi(n, m, k, draw(seeds))


@st.composite
def hypergraph_and_keys(draw, orders=(2, 3, 4), max_n=12, max_m=20, max_len=80):
    hypergraph = draw(hypergraphs(orders=orders, max_n=max_n, max_m=max_m))
    keys = draw(st.lists(st.integers(min_value=0, max_value=hypergraph.m - 1), max_size=max_len))
    return hypergraph, keys


@st.composite
def ordered_assignments(draw, n):
    """Two initial assignments f <= g pointwise; +inf in f forces +inf in g."""
    low, high = [], []
    for _ in range(n):
        f = draw(st.one_of(st.integers(min_value=0, max_value=6), st.just(INF)))
        if f == INF:
            g = INF
        else:
            g = draw(st.one_of(st.integers(min_value=f, max_value=f + 6), st.just(INF)))
        low.append(f)
        high.append(g)
    return low, high
