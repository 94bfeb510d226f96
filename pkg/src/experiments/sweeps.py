"""
Replicated sweeps over the edge density lambda = m/n.

Every task (grid point, replicate) derives its seeds from the root seed and its
own coordinates, so results do not depend on how tasks are spread over workers.
Rows are assembled in (grid point, strategy, replicate) order.
"""

import logging
import math

import numpy as np
from attrs import define, evolve, field

from src.errors import InvariantViolation
from src.experiments.config import SweepRow, edge_count
from src.experiments.parallel import run_tasks
from src.hypergraph import components, gen_erdos_renyi, peel
from src.process import run
from src.rng import derive_seed
from src.streams import StreamSpec

logger = logging.getLogger(__name__)

CONCENTRATION_COLUMNS = (
    'k', 'n', 'm', 'lambda', 'N', 'model', 'strategy', 'replicates',
    'mean_err_unweighted', 'std_err_unweighted', 'mean_err_weighted', 'std_err_weighted',
)


def task_seeds(root_seed, grid_index, replicate):
    """(task seed, graph seed, stream seed) of one replicate at one grid point."""
    task_seed = derive_seed(root_seed, 'task', grid_index, replicate)
    return task_seed, derive_seed(task_seed, 'graph'), derive_seed(task_seed, 'stream')


def sweep_task(task):
    """
    Generate one instance and run every strategy of the config on one shared stream.

    Args:
        task (tuple): (config, grid_index, lam, replicate).

    Returns:
        list[SweepRow]: One row per strategy, in config order.
    """
    config, grid_index, lam, replicate = task
    m = edge_count(lam, config.n)
    task_seed, graph_seed, stream_seed = task_seeds(config.root_seed, grid_index, replicate)

    hypergraph = gen_erdos_renyi(config.n, m, config.k, graph_seed)
    core_fraction = peel(hypergraph).core_fraction()
    report_components = components(hypergraph)
    stream = StreamSpec(model=config.model, N=config.N, seed=stream_seed, beta=config.beta or 0.0)
    keys = stream.generate(m)

    rows = []
    for strategy in config.strategies:
        report = run(hypergraph, stream, strategy, check_invariants=config.check_invariants, seed=task_seed, keys=keys)
        if config.check_invariants and config.k == 2 and config.model == 'balanced':
            excess = report_components.total_excess()
            if not report.excess_bound_holds(excess):
                raise InvariantViolation(
                    f"Sum of relative errors {report.error_sum()} is below excess/2 = {excess / 2} "
                    f"(lambda={lam}, replicate={replicate}, {strategy})"
                )
        rows.append(SweepRow(
            k=config.k,
            n=config.n,
            m=m,
            lam=lam,
            N=config.N,
            model=config.label,
            strategy=strategy,
            replicate=replicate,
            seed=task_seed,
            err_unweighted=report.err_unweighted,
            err_weighted=report.err_weighted,
            core_fraction=core_fraction,
            giant_excess=report_components.giant_excess,
        ))
    return rows


def _ordered(config, results):
    """Flatten per-task results into (grid point, strategy, replicate) order."""
    keyed = []
    for rows in results:
        for row in rows:
            keyed.append((config.lambdas.index(row.lam), config.strategies.index(row.strategy), row.replicate, row))
    keyed.sort(key=lambda item: item[:3])
    return [item[3] for item in keyed]


def sweep_lambda(config, jobs=1):
    """
    Run every strategy on replicated Erdos-Renyi instances for each density of the grid.

    Args:
        config (ExperimentConfig): Sweep parameters.
        jobs (int, optional): Worker processes.

    Returns:
        list[SweepRow]: len(lambdas) * len(strategies) * replicates rows.
    """
    tasks = [
        (config, grid_index, lam, replicate)
        for grid_index, lam in enumerate(config.lambdas)
        for replicate in range(config.replicates)
    ]
    logger.info(
        f"Sweeping k={config.k}, n={config.n}, {len(config.lambdas)} densities x "
        f"{config.replicates} replicates ({config.label}, N={config.N})"
    )
    rows = _ordered(config, run_tasks(sweep_task, tasks, jobs))
    logger.info(f"Sweep produced {len(rows)} rows")
    return rows


@define(frozen=True)
class ConcentrationStat:
    k: int
    n: int
    m: int
    lam: float
    N: int
    model: str
    strategy: str
    replicates: int
    mean_err_unweighted: float
    std_err_unweighted: float
    mean_err_weighted: float
    std_err_weighted: float

    def as_row(self):
        return (
            self.k, self.n, self.m, self.lam, self.N, self.model, self.strategy, self.replicates,
            self.mean_err_unweighted, self.std_err_unweighted, self.mean_err_weighted, self.std_err_weighted,
        )


@define(frozen=True)
class ConcentrationResult:
    rows: tuple = field(converter=tuple)
    stats: tuple = field(converter=tuple)

    def stat(self, lam, strategy):
        for stat in self.stats:
            if stat.lam == lam and stat.strategy == strategy:
                return stat
        raise KeyError((lam, strategy))


def _mean_std(values):
    values = np.asarray(values, dtype=np.float64)
    mean = float(values.mean())
    std = float(values.std(ddof=1)) if values.size > 1 else math.nan
    return mean, std


def concentration(config, jobs=1):
    """
    Replicate errors per density plus their mean and sample standard deviation.

    The standard deviation is NaN (an empty CSV cell) with a single replicate.
    """
    rows = sweep_lambda(config, jobs)
    stats = []
    for lam in config.lambdas:
        for strategy in config.strategies:
            group = [row for row in rows if row.lam == lam and row.strategy == strategy]
            mean_u, std_u = _mean_std([row.err_unweighted for row in group])
            mean_w, std_w = _mean_std([row.err_weighted for row in group])
            stats.append(ConcentrationStat(
                k=config.k, n=config.n, m=group[0].m, lam=lam, N=config.N, model=config.label,
                strategy=strategy, replicates=len(group),
                mean_err_unweighted=mean_u, std_err_unweighted=std_u,
                mean_err_weighted=mean_w, std_err_weighted=std_w,
            ))
    return ConcentrationResult(rows=rows, stats=stats)


def zipf_sweep(config, jobs=1):
    """
    sweep_lambda under Zipf streams for every beta of config.betas.

    For a given density and replicate every beta sees the same hypergraph and
    the same stream seed, so the betas are compared on common instances. Rows
    come out in (beta, density, strategy, replicate) order.
    """
    per_beta = [evolve(config, model='zipf', beta=beta) for beta in config.betas]
    tasks = [
        (beta_config, grid_index, lam, replicate)
        for beta_config in per_beta
        for grid_index, lam in enumerate(config.lambdas)
        for replicate in range(config.replicates)
    ]
    logger.info(f"Zipf sweep over betas {list(config.betas)} and {len(config.lambdas)} densities")
    results = run_tasks(sweep_task, tasks, jobs)

    per_task = len(config.lambdas) * config.replicates
    rows = []
    for index, beta_config in enumerate(per_beta):
        rows.extend(_ordered(beta_config, results[index * per_task:(index + 1) * per_task]))
    logger.info(f"Zipf sweep produced {len(rows)} rows")
    return rows


def mean_error(rows, lam, strategy, model=None, weighted=False):
    """Mean error over the replicates of one (density, strategy[, model]) cell."""
    values = [
        row.err_weighted if weighted else row.err_unweighted
        for row in rows
        if row.lam == lam and row.strategy == strategy and (model is None or row.model == model)
    ]
    return float(np.mean(values)) if values else math.nan
