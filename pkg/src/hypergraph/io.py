"""
Edge-list text format.

    # optional comments
    k n m
    v1 v2 ... vk        (one edge per line, m lines)

Edges read from a file may repeat (parallel edges) and may be shorter than k,
which is how sketch-induced hypergraphs with colliding positions round-trip.
"""

import logging

from src.errors import ValidationError
from src.hypergraph.model import Hypergraph
from src.persistence import get_writer

logger = logging.getLogger(__name__)


def _data_lines(lines):
    for number, line in enumerate(lines, start=1):
        text = line.split('#', 1)[0].strip()
        if text:
            yield number, text


def parse_edge_list(lines):
    """Parse edge-list text (an iterable of lines) into a Hypergraph."""
    data = _data_lines(lines)
    try:
        number, header = next(data)
    except StopIteration:
        raise ValidationError("Edge list is empty: missing 'k n m' header")
    fields = header.split()
    if len(fields) != 3:
        raise ValidationError(f"Line {number}: expected header 'k n m', got '{header}'")
    k, n, m = (int(x) for x in fields)

    edges = []
    for number, text in data:
        try:
            edges.append(tuple(int(x) for x in text.split()))
        except ValueError:
            raise ValidationError(f"Line {number}: non-integer vertex id in '{text}'")
    if len(edges) != m:
        raise ValidationError(f"Header announces {m} edges but {len(edges)} were read")
    return Hypergraph(n=n, k=k, edges=edges)


def read_edge_list(path):
    with open(path, 'r') as f:
        hypergraph = parse_edge_list(f)
    logger.info(f"Read {hypergraph!r} from {path}")
    return hypergraph


def format_edge_list(hypergraph, comment=None):
    lines = []
    if comment:
        lines.append(f"# {comment}")
    lines.append(f"{hypergraph.k} {hypergraph.n} {hypergraph.m}")
    lines.extend(" ".join(str(v) for v in edge) for edge in hypergraph.edges)
    return "\n".join(lines) + "\n"


def write_edge_list(hypergraph, path, comment=None):
    """Write a hypergraph atomically (temp file in the same directory, then rename)."""
    get_writer().write_text(path, format_edge_list(hypergraph, comment))
    logger.info(f"Wrote {hypergraph!r} to {path}")
