import logging
import math

import numpy as np
from attrs import define, field

from src.process.state import INF

logger = logging.getLogger(__name__)

EDGE_COLUMNS = ('edge_id', 'o_e', 'c_e', 'R_e')


@define(frozen=True)
class Histogram:
    """Counts of R_e per bin [start, start + bin_width), starting at 0."""

    bin_width: float
    starts: tuple = field(converter=tuple)
    counts: tuple = field(converter=tuple)

    def mode(self):
        """Centre of the fullest bin; the lowest bin wins ties. None when empty."""
        if not self.counts or max(self.counts) == 0:
            return None
        index = int(np.argmax(self.counts))
        return self.starts[index] + self.bin_width / 2

    def mode_span(self, smoothing=2):
        """
        Bin indices (lo, hi) of the main mode around the fullest bin.

        Counts are averaged over 2 * smoothing + 1 bins. From the fullest bin the
        span first climbs to the local maximum of the smoothed counts, then grows
        on each side while they do not rise again, so it ends at the valleys that
        separate it from neighbouring modes. None when empty.
        """
        if not self.counts or max(self.counts) == 0:
            return None
        if smoothing < 0:
            raise ValueError(f"Smoothing half-width must be non-negative, got {smoothing}")
        counts = np.asarray(self.counts, dtype=np.float64)
        width = 2 * smoothing + 1
        smooth = np.convolve(np.pad(counts, smoothing), np.ones(width) / width, mode='valid')
        last = counts.size - 1

        peak = int(np.argmax(counts))
        while True:
            if peak > 0 and smooth[peak - 1] > smooth[peak]:
                peak -= 1
            elif peak < last and smooth[peak + 1] > smooth[peak]:
                peak += 1
            else:
                break

        lo = hi = peak
        while lo > 0 and smooth[lo - 1] <= smooth[lo]:
            lo -= 1
        while hi < last and smooth[hi + 1] <= smooth[hi]:
            hi += 1
        return lo, hi

    def mode_mass(self, smoothing=2):
        """Share of all counted values that fall in mode_span."""
        span = self.mode_span(smoothing)
        if span is None:
            return math.nan
        lo, hi = span
        return sum(self.counts[lo:hi + 1]) / sum(self.counts)

    def rows(self):
        return list(zip(self.starts, self.counts))


def histogram(values, bin_width):
    values = np.asarray(values, dtype=np.float64)
    values = values[~np.isnan(values)]
    if bin_width <= 0:
        raise ValueError(f"Histogram bin width must be positive, got {bin_width}")
    if values.size == 0:
        return Histogram(bin_width=bin_width, starts=(), counts=())
    indices = np.floor(values / bin_width).astype(np.int64)
    counts = np.bincount(indices)
    starts = [i * bin_width for i in range(counts.size)]
    return Histogram(bin_width=bin_width, starts=starts, counts=counts.tolist())


@define(frozen=True, eq=False)
class ErrorReport:
    """
    Per-edge outcome of one run and its aggregates.

    Edges made only of marked vertices have c_e = +inf and are left out of every
    aggregate (``unreported_edges``). Edges never drawn (o_e = 0) keep their row
    with an undefined R_e, are excluded from ``err_unweighted`` and listed in
    ``zero_occurrence_edges``; their c_e still counts towards ``err_weighted``.

    Attributes:
        n, m, k (int): Hypergraph sizes.
        N (float): Stream multiplicity (length / m for explicit streams).
        model (str): Stream model label.
        strategy (str): 'cm' or 'cu'.
        seed (int): Seed recorded for the run.
        occurrences (numpy.ndarray): o_e per edge.
        edge_counters (numpy.ndarray): c_e per edge, INF for all-marked edges.
        vertex_counters (numpy.ndarray): c_v per vertex, INF for marked vertices.
        relative_errors (numpy.ndarray): R_e per edge, NaN where undefined.
    """

    n: int
    m: int
    k: int
    N: float
    model: str
    strategy: str
    seed: int
    occurrences: np.ndarray
    edge_counters: np.ndarray
    vertex_counters: np.ndarray
    relative_errors: np.ndarray
    zero_occurrence_edges: tuple
    unreported_edges: tuple
    err_unweighted: float
    err_weighted: float
    positive_error_fraction: float

    @classmethod
    def from_state(cls, state, N, model, strategy, seed):
        hypergraph = state.hypergraph
        counters = state.edge_counters()
        occurrences = state.edge_occurrences.copy()

        reportable = counters != INF
        included = reportable & (occurrences > 0)
        zero = np.flatnonzero(reportable & (occurrences == 0))
        if zero.size:
            logger.warning(f"{zero.size} edges never occur in the stream; excluded from err_unweighted")

        relative = np.full(hypergraph.m, np.nan)
        o_in = occurrences[included]
        diff_in = counters[included] - o_in
        relative[included] = diff_in / o_in

        count = int(included.sum())
        if count == 0:
            err_unweighted = math.nan
            positive = math.nan
        elif np.all(o_in == o_in[0]):
            # one shared denominator keeps this bit-identical to err_weighted
            err_unweighted = int(diff_in.sum()) / (count * int(o_in[0]))
            positive = int((diff_in > 0).sum()) / count
        else:
            err_unweighted = math.fsum(relative[included].tolist()) / count
            positive = int((diff_in > 0).sum()) / count

        reported = int(reportable.sum())
        diff_all = int((counters[reportable] - occurrences[reportable]).sum())
        if reported == 0 or N == 0:
            err_weighted = math.nan
        elif isinstance(N, (int, np.integer)):
            err_weighted = diff_all / (reported * int(N))
        else:
            err_weighted = diff_all / (reported * N)

        return cls(
            n=hypergraph.n,
            m=hypergraph.m,
            k=hypergraph.k,
            N=N,
            model=model,
            strategy=str(strategy),
            seed=seed,
            occurrences=occurrences,
            edge_counters=counters,
            vertex_counters=state.vertex_counter.copy(),
            relative_errors=relative,
            zero_occurrence_edges=tuple(zero.tolist()),
            unreported_edges=tuple(np.flatnonzero(~reportable).tolist()),
            err_unweighted=err_unweighted,
            err_weighted=err_weighted,
            positive_error_fraction=positive,
        )

    def defined_errors(self):
        """R_e of every edge where it is defined, in edge order."""
        return self.relative_errors[~np.isnan(self.relative_errors)]

    def error_sum(self):
        return math.fsum(self.defined_errors().tolist())

    def excess_bound_holds(self, excess):
        """
        Check sum R_e >= excess / 2.

        With one common o_e the comparison is done on integers:
        2 * sum(c_e - o_e) >= excess * o_e.
        """
        mask = ~np.isnan(self.relative_errors)
        o_in = self.occurrences[mask]
        if o_in.size and np.all(o_in == o_in[0]):
            diff = int((self.edge_counters[mask] - o_in).sum())
            return 2 * diff >= excess * int(o_in[0])
        return self.error_sum() >= excess / 2

    def vertex_ratio(self):
        """c_v / N per vertex; NaN for marked vertices."""
        counters = self.vertex_counters.astype(np.float64)
        counters[self.vertex_counters == INF] = np.nan
        return counters / self.N

    def histogram(self, bin_width):
        return histogram(self.defined_errors(), bin_width)

    def rows(self):
        """(edge_id, o_e, c_e, R_e) for every reported edge; R_e is None when undefined."""
        unreported = set(self.unreported_edges)
        for e in range(self.m):
            if e in unreported:
                continue
            r = self.relative_errors[e]
            yield (e, int(self.occurrences[e]), int(self.edge_counters[e]), None if np.isnan(r) else float(r))

    def summary(self):
        return {
            'n': self.n,
            'm': self.m,
            'k': self.k,
            'N': self.N,
            'model': self.model,
            'strategy': self.strategy,
            'seed': self.seed,
            'err_unweighted': self.err_unweighted,
            'err_weighted': self.err_weighted,
            'zero_occurrence_edges': len(self.zero_occurrence_edges),
        }
