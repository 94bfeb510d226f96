"""Single-instance and replicated checks against closed-form predictions."""

import logging
import math

import numpy as np
from attrs import define, field

from src.errors import ValidationError
from src.experiments.config import edge_count
from src.experiments.parallel import run_tasks
from src.hypergraph import gen_2regular_3uniform, gen_dual_complete_r, gen_erdos_renyi
from src.process import run
from src.rng import derive_seed, make_rng
from src.streams import get_stream

logger = logging.getLogger(__name__)

DISTRIBUTION_COLUMNS = ('position', 'edge_id', 'o_e', 'c_e', 'R_e')
HISTOGRAM_COLUMNS = ('bin_start', 'count')


def _mean_std(values):
    values = np.asarray(values, dtype=np.float64)
    std = float(values.std(ddof=1)) if values.size > 1 else math.nan
    return float(values.mean()), std


@define(frozen=True, eq=False)
class DistributionResult:
    """
    Per-edge errors of one instance with a randomized display order.

    Attributes:
        report (ErrorReport): The run.
        order (tuple[int]): Edge ids in display order.
        histogram (Histogram): R_e histogram.
        mode (float): Centre of the fullest histogram bin.
        mode_mass (float): Fraction of defined R_e in the main mode, between the valleys around it.
        mode_span (tuple[float, float]): R_e range [start, end) covered by the main mode.
    """

    report: object
    order: tuple = field(converter=tuple)
    histogram: object = None
    mode: float = None
    mode_mass: float = None
    mode_span: tuple = None
    mode_smoothing: float = 0.04

    def rows(self):
        r = self.report.relative_errors
        for position, e in enumerate(self.order):
            value = None if np.isnan(r[e]) else float(r[e])
            yield (position, e, int(self.report.occurrences[e]), int(self.report.edge_counters[e]), value)

    def summary(self):
        summary = self.report.summary()
        summary.update({
            'bin_width': self.histogram.bin_width,
            'mode': self.mode,
            'mode_smoothing': self.mode_smoothing,
            'mode_mass': self.mode_mass,
            'mode_span': None if self.mode_span is None else list(self.mode_span),
            'histogram': [list(row) for row in self.histogram.rows()],
        })
        return summary


def error_distribution(k, lam, n, N, seed, strategy='cu', model='uniform', beta=None, bin_width=0.02, mode_smoothing=0.04):
    """
    Run one Erdos-Renyi instance and describe the distribution of its per-edge errors.

    Args:
        k (int): Edge order.
        lam (float): Density m/n.
        n (int): Vertex count.
        N (int): Stream multiplicity.
        seed (int): Root seed of the instance, the stream and the display order.
        strategy (str, optional): 'cm' or 'cu'.
        model (str, optional): Stream model.
        beta (float, optional): Zipf skewness.
        bin_width (float, optional): Histogram bin width on R_e.
        mode_smoothing (float, optional): Half-width, in R_e units, of the moving average used to
            locate the valleys that bound the main mode.

    Returns:
        DistributionResult: Report, display order, histogram and dominant mode.
    """
    if mode_smoothing < 0:
        raise ValidationError(f"Mode smoothing must be non-negative, got {mode_smoothing}")
    m = edge_count(lam, n)
    hypergraph = gen_erdos_renyi(n, m, k, derive_seed(seed, 'graph'))
    stream = get_stream(model, N=N, seed=derive_seed(seed, 'stream'), beta=beta)
    report = run(hypergraph, stream, strategy, seed=seed)

    order = make_rng(derive_seed(seed, 'display')).permutation(m).tolist()
    histogram = report.histogram(bin_width)
    smoothing = int(round(mode_smoothing / bin_width))
    mode = histogram.mode()
    span = histogram.mode_span(smoothing)
    if span is None:
        mass, bounds = math.nan, None
    else:
        mass = histogram.mode_mass(smoothing)
        bounds = (histogram.starts[span[0]], histogram.starts[span[1]] + bin_width)
    logger.info(f"Error distribution k={k}, lambda={lam}: dominant mode {mode} holds {mass} of edges")
    return DistributionResult(
        report=report, order=order, histogram=histogram, mode=mode, mode_mass=mass, mode_span=bounds,
        mode_smoothing=mode_smoothing,
    )


@define(frozen=True)
class DualCheckResult:
    n: int
    r: int
    N: int
    model: str
    strategy: str
    measured: float
    predicted: float
    vertex_ratios: tuple = field(converter=tuple)
    predicted_vertex_ratio: float = math.nan

    @property
    def mean_vertex_ratio(self):
        return float(np.mean(self.vertex_ratios))

    def rows(self):
        return [(self.n, self.r, self.N, self.model, self.strategy, self.measured, self.predicted,
                 self.mean_vertex_ratio, self.predicted_vertex_ratio)]

    def summary(self):
        return {
            'n': self.n, 'r': self.r, 'N': self.N, 'model': self.model, 'strategy': self.strategy,
            'measured': self.measured, 'predicted': self.predicted,
            'mean_vertex_ratio': self.mean_vertex_ratio, 'predicted_vertex_ratio': self.predicted_vertex_ratio,
            'vertex_ratios': list(self.vertex_ratios),
        }


DUAL_COLUMNS = ('n', 'r', 'N', 'model', 'strategy', 'measured', 'predicted', 'mean_vertex_ratio', 'predicted_vertex_ratio')


def dual_complete_check(n, r, N, model='balanced', seed=0, strategy='cu'):
    """
    Mean edge error on the dual of the complete r-uniform hypergraph against its limit.

    Under CU the mean R_e tends to (r-1)/(n-r+1) and every c_v/N to n/(n-r+1).
    Under CM with a balanced stream every vertex has degree r, so R_e = r-1 and
    c_v/N = r exactly.
    """
    hypergraph = gen_dual_complete_r(n, r)
    stream = get_stream(model, N=N, seed=derive_seed(seed, 'stream'))
    report = run(hypergraph, stream, strategy, seed=seed)
    measured = float(np.mean(report.defined_errors()))
    if strategy == 'cu':
        predicted = (r - 1) / (n - r + 1)
        predicted_ratio = n / (n - r + 1)
    else:
        predicted = float(r - 1)
        predicted_ratio = float(r)
    logger.info(f"Dual complete n={n}, r={r}, {strategy}: measured {measured}, predicted {predicted}")
    return DualCheckResult(
        n=n, r=r, N=N, model=stream.label, strategy=strategy, measured=measured, predicted=predicted,
        vertex_ratios=report.vertex_ratio().tolist(), predicted_vertex_ratio=predicted_ratio,
    )


@define(frozen=True)
class ReplicateCheckResult:
    """Per-replicate values of a replicated check with their mean, sample std and prediction."""

    name: str
    values: tuple = field(converter=tuple)
    seeds: tuple = field(converter=tuple)
    predicted: float = math.nan

    @property
    def mean(self):
        return _mean_std(self.values)[0]

    @property
    def std(self):
        return _mean_std(self.values)[1]

    def rows(self):
        return [(replicate, seed, value) for replicate, (seed, value) in enumerate(zip(self.seeds, self.values))]

    def summary(self):
        return {'check': self.name, 'replicates': len(self.values), 'mean': self.mean, 'std': self.std, 'predicted': self.predicted}


REPLICATE_COLUMNS = ('replicate', 'seed', 'value')


def _regular_task(task):
    t, N, seed, replicate, strategy, model, retry_budget = task
    task_seed = derive_seed(seed, 'regular', replicate)
    hypergraph = gen_2regular_3uniform(t, derive_seed(task_seed, 'graph'), retry_budget=retry_budget)
    stream = get_stream(model, N=N, seed=derive_seed(task_seed, 'stream'))
    return task_seed, run(hypergraph, stream, strategy).err_unweighted


def regular_core_check(t, N, seed, replicates, strategy='cu', model='uniform', retry_budget=1000, jobs=1):
    """
    Mean error on random 2-regular 3-uniform hypergraphs (3t vertices, 2t edges).

    These hypergraphs are their own core, so CU keeps a constant error of about
    0.217; CM on a balanced stream has error exactly 1.
    """
    if replicates < 1:
        raise ValidationError(f"Replicates must be at least 1, got {replicates}")
    tasks = [(t, N, seed, replicate, strategy, model, retry_budget) for replicate in range(replicates)]
    results = run_tasks(_regular_task, tasks, jobs)
    predicted = 1.0 if strategy == 'cm' and model == 'balanced' else 0.217
    result = ReplicateCheckResult(
        name='regular_core', values=[v for _, v in results], seeds=[s for s, _ in results], predicted=predicted,
    )
    logger.info(f"Regular core check t={t}, {strategy}: mean error {result.mean} over {replicates} replicates")
    return result


def nonzero_cm_error_fraction(hypergraph):
    """Fraction of edges whose vertices all have degree >= 2 (the edges CM overestimates)."""
    if hypergraph.m == 0:
        return math.nan
    degrees = hypergraph.degree[hypergraph.edge_vertices]
    lowest = np.minimum.reduceat(degrees, hypergraph.edge_ptr[:-1])
    return float(np.mean(lowest >= 2))


def cm_error_rate_check(k, lam, n, seed, replicates):
    """Frequency of edges with a nonzero CM error against (1 - exp(-k*lambda))**k."""
    if replicates < 1:
        raise ValidationError(f"Replicates must be at least 1, got {replicates}")
    m = edge_count(lam, n)
    seeds, values = [], []
    for replicate in range(replicates):
        graph_seed = derive_seed(seed, 'cm-rate', replicate)
        seeds.append(graph_seed)
        values.append(nonzero_cm_error_fraction(gen_erdos_renyi(n, m, k, graph_seed)))
    predicted = (1 - math.exp(-k * lam)) ** k
    result = ReplicateCheckResult(name='cm_error_rate', values=values, seeds=seeds, predicted=predicted)
    logger.info(f"CM nonzero-error rate k={k}, lambda={lam}: {result.mean} (predicted {predicted})")
    return result


def expected_cm_error(k, lam, tol=1e-12):
    """
    Limit of the mean CM error on an N-balanced stream over Erdos-Renyi instances.

    R_e is the smallest of the k other-edge counts of its vertices, each tending to
    Poisson(k * lambda), so E[R_e] = sum over j >= 1 of P(Poisson(k * lambda) >= j) ** k.
    The first term is the nonzero-error rate (1 - exp(-k * lambda)) ** k.
    """
    mu = k * lam
    if mu <= 0:
        return 0.0
    total, cdf, j = 0.0, 0.0, 0
    while True:
        # P(X = j), in log space
        cdf += math.exp(j * math.log(mu) - mu - math.lgamma(j + 1))
        j += 1
        tail = max(1.0 - cdf, 0.0)
        if tail ** k <= tol:
            return total
        total += tail ** k


def _cm_error_task(task):
    k, m, n, N, seed, replicate = task
    task_seed = derive_seed(seed, 'cm-error', replicate)
    hypergraph = gen_erdos_renyi(n, m, k, derive_seed(task_seed, 'graph'))
    stream = get_stream('balanced', N=N, seed=derive_seed(task_seed, 'stream'))
    return task_seed, run(hypergraph, stream, 'cm').err_unweighted


def cm_error_check(k, lam, n, seed, replicates, N=1, jobs=1):
    """Mean CM error on N-balanced streams against expected_cm_error(k, lambda)."""
    if replicates < 1:
        raise ValidationError(f"Replicates must be at least 1, got {replicates}")
    m = edge_count(lam, n)
    tasks = [(k, m, n, N, seed, replicate) for replicate in range(replicates)]
    results = run_tasks(_cm_error_task, tasks, jobs)
    result = ReplicateCheckResult(
        name='cm_error', values=[v for _, v in results], seeds=[s for s, _ in results],
        predicted=expected_cm_error(k, lam),
    )
    logger.info(f"CM error k={k}, lambda={lam}: {result.mean} (predicted {result.predicted})")
    return result


@define(frozen=True)
class PositiveErrorResult:
    records: tuple = field(converter=tuple)

    def rows(self):
        return list(self.records)

    def mean(self, strategy):
        return float(np.mean([row[2] for row in self.records if row[1] == strategy]))

    def summary(self):
        return {'mean_cm': self.mean('cm'), 'mean_cu': self.mean('cu'), 'replicates': len(self.records) // 2}


POSITIVE_ERROR_COLUMNS = ('replicate', 'strategy', 'positive_error_fraction')


def positive_error_comparison(k, lam, n, N, seed, replicates, model='uniform'):
    """
    Fraction of edges with c_e > o_e under CM and under CU on common instances and streams.

    For uniformly drawn keys both strategies overestimate almost the same set of
    keys; CU lowers how much they are overestimated, not how often.
    """
    if replicates < 1:
        raise ValidationError(f"Replicates must be at least 1, got {replicates}")
    m = edge_count(lam, n)
    rows = []
    for replicate in range(replicates):
        task_seed = derive_seed(seed, 'positive-error', replicate)
        hypergraph = gen_erdos_renyi(n, m, k, derive_seed(task_seed, 'graph'))
        stream = get_stream(model, N=N, seed=derive_seed(task_seed, 'stream'))
        keys = stream.generate(m)
        for strategy in ('cm', 'cu'):
            report = run(hypergraph, stream, strategy, keys=keys)
            rows.append((replicate, strategy, report.positive_error_fraction))
    return PositiveErrorResult(records=rows)
