#!/usr/bin/env python3
"""
cu-sketch-lab CLI

Command-line front end for the counter-process lab: hypergraph generation and
peeling, single runs of the CM and CU processes, the replicated experiments and
the key-facing counting sketch.

Every random choice derives from --seed (default taken from config/defaults.yaml,
never from the clock), and every result file is written atomically with a
'cu-sketch-lab v<version> seed=<seed>' header, so reruns are byte-identical.

Exit codes: 0 on success, 1 on invalid input, 2 when a checked invariant fails.

Usage:
    python cli.py --help
    python cli.py gen --kind erdos-renyi --k 3 --n 1000 --lambda 0.8 --out graph.txt
    python cli.py run --graph graph.txt --N 100 --model balanced --strategy cu --out edges.csv
    python cli.py sweep --k 3 --n 1000 --lambda-grid 0.2:1.4:0.05 --N 10000 --strategy both --replicates 15 --seed 7 --out sweep.csv
    python cli.py dual --n 10 --r 2 --N 100000 --out dual.csv

License: MIT
"""

import os
import sys
import logging
from datetime import datetime

import click
from attrs import evolve

from src import __version__, metadata_header
from src.config import load_config
from src.errors import InvariantViolation, LabError
from src.persistence import get_writer
from src import experiments as ex
from src.hypergraph import (
    GRAPH_KINDS,
    components,
    descendant_closure,
    gen_dual_complete,
    gen_erdos_renyi,
    generate,
    peel,
    read_edge_list,
    write_edge_list,
)
from src.process import EDGE_COLUMNS, audit_run, run
from src.rng import derive_seed, make_rng
from src.sketch import new_sketch, guarantee_trial
from src.streams import get_stream, n_uniform, read_keys

logger = logging.getLogger(__name__)

PEEL_COLUMNS = ('vertex', 'level', 'in_core', 'marked')
AUDIT_COLUMNS = ('t', 'edge', 'p', 'q', 'minedges', 'increased', 'counter_sum')
SKETCH_COLUMNS = ('key', 'estimate', 'true_count')


def setup_logging(verbose=False, runtime=None):
    """
    Configure root logging: stderr always, plus a timestamped file when a log dir is set.

    Args:
        verbose (bool): Switch to DEBUG.
        runtime (dict, optional): The 'runtime' config section (log_dir, log_level).
    """
    runtime = runtime or {}
    handlers = [logging.StreamHandler()]
    log_dir = runtime.get('log_dir')
    if log_dir:
        os.makedirs(log_dir, exist_ok=True)
        log_file = os.path.join(log_dir, f"cu_sketch_lab_{datetime.now().strftime('%Y%m%d_%H%M%S')}.log")
        handlers.append(logging.FileHandler(log_file))

    level = logging.DEBUG if verbose else getattr(logging, runtime.get('log_level', 'INFO'), logging.INFO)
    logging.basicConfig(
        level=level,
        format="%(asctime)s - %(name)s - %(levelname)s - %(message)s",
        handlers=handlers,
        force=True,
    )


class LabGroup(click.Group):
    """Click group mapping failures to the lab's exit codes."""

    def main(self, *args, standalone_mode=True, **kwargs):
        try:
            result = super().main(*args, standalone_mode=False, **kwargs)
            code = result if isinstance(result, int) else 0
        except click.ClickException as e:
            e.show()
            code = 1
        except click.exceptions.Abort:
            click.echo("Aborted!", err=True)
            code = 1
        except InvariantViolation as e:
            logger.error(f"Invariant violation: {e}")
            click.echo(f"Invariant violation: {e}", err=True)
            code = 2
        except (LabError, ValueError, FileNotFoundError) as e:
            logger.error(f"{type(e).__name__}: {e}")
            click.echo(f"Error: {e}", err=True)
            code = 1
        if standalone_mode:
            sys.exit(code)
        return code


def _settings(ctx):
    return ctx.obj['experiments']


def _seed(ctx, seed):
    return _settings(ctx)['root_seed'] if seed is None else seed


def _jobs(ctx, jobs):
    return ctx.obj['runtime']['jobs'] if jobs is None else jobs


def _emit(out, fmt, columns, rows, summary, seed):
    """Write rows as CSV, or summary plus rows as one JSON object."""
    writer = get_writer()
    rows = list(rows)
    if fmt == 'csv':
        writer.write_rows(out, columns, rows, seed)
    else:
        payload = dict(summary)
        payload['rows'] = [dict(zip(columns, row)) for row in rows]
        writer.write_json(out, payload, seed)


def _lambdas(lam, lambda_grid):
    if (lam is None) == (lambda_grid is None):
        raise click.UsageError("Give exactly one of --lambda and --lambda-grid")
    return (lam,) if lambda_grid is None else ex.parse_lambda_grid(lambda_grid)


def _check_beta(model, beta):
    if beta is not None and model != 'zipf':
        raise click.UsageError("--beta is only valid with --model zipf")
    if model == 'zipf' and beta is None:
        raise click.UsageError("--model zipf needs --beta")


def out_options(f):
    f = click.option('--format', 'fmt', type=click.Choice(['csv', 'json']), default='csv', show_default=True,
                     help='Output format')(f)
    f = click.option('--out', required=True, type=click.Path(dir_okay=False), help='Output file')(f)
    f = click.option('--seed', type=click.IntRange(min=0), default=None,
                     help='Root seed (default: experiments.root_seed)')(f)
    return f


def stream_options(f):
    f = click.option('--beta', type=click.FloatRange(min=0), default=None, help='Zipf skewness (zipf only)')(f)
    f = click.option('--model', type=click.Choice(['balanced', 'uniform', 'zipf']), default='uniform',
                     show_default=True, help='Input model')(f)
    f = click.option('--N', 'N', type=click.IntRange(min=1), default=None, help='Per-key multiplicity')(f)
    return f


# Main CLI group
@click.group(cls=LabGroup)
@click.version_option(version=__version__)
@click.option('--verbose', '-v', is_flag=True, help='Enable verbose logging')
@click.option('--config', 'config_path', type=click.Path(dir_okay=False), default=None,
              help='Defaults file (default: config/defaults.yaml)')
@click.pass_context
def cli(ctx, verbose, config_path):
    """cu-sketch-lab: CM and CU counter processes on hash hypergraphs."""
    ctx.obj = load_config(config_path)
    setup_logging(verbose, ctx.obj['runtime'])


@cli.command('gen')
@click.option('--kind', type=click.Choice(GRAPH_KINDS), default='erdos-renyi', show_default=True)
@click.option('--k', type=int, default=None, help='Edge order (erdos-renyi)')
@click.option('--n', type=int, default=None, help='Vertex count, or base vertex count for dual kinds')
@click.option('--m', type=int, default=None, help='Edge count (erdos-renyi)')
@click.option('--lambda', 'lam', type=float, default=None, help='Density m/n instead of --m')
@click.option('--r', type=int, default=None, help='Base edge order (dual-r)')
@click.option('--t', type=int, default=None, help='Size parameter (regular: 3t vertices, 2t edges)')
@click.option('--seed', type=click.IntRange(min=0), default=None)
@click.option('--out', required=True, type=click.Path(dir_okay=False))
@click.pass_context
def cmd_gen(ctx, kind, k, n, m, lam, r, t, seed, out):
    """Generate a hypergraph and write it as an edge list."""
    seed = _seed(ctx, seed)
    if lam is not None:
        if m is not None or n is None:
            raise click.UsageError("--lambda needs --n and excludes --m")
        m = ex.edge_count(lam, n)
    hypergraph = generate(kind, n=n, m=m, k=k, r=r, t=t, seed=derive_seed(seed, 'graph'),
                          retry_budget=_settings(ctx)['retry_budget'])
    write_edge_list(hypergraph, out, comment=metadata_header(seed))
    click.echo(f"Wrote {hypergraph!r} to {out}")


@cli.command('peel')
@click.option('--graph', 'graph_path', required=True, type=click.Path(exists=True, dir_okay=False))
@click.option('--vertex', type=int, default=None, help='Also report the descendant closure of this vertex')
@out_options
@click.pass_context
def cmd_peel(ctx, graph_path, vertex, seed, out, fmt):
    """Peel a hypergraph; one row per vertex with its level."""
    seed = _seed(ctx, seed)
    hypergraph = read_edge_list(graph_path)
    result = peel(hypergraph)
    report = components(hypergraph)
    summary = {
        'n': hypergraph.n, 'm': hypergraph.m, 'k': hypergraph.k,
        'peelable': result.peelable, 'rounds': result.rounds,
        'core_vertices': len(result.core_vertices), 'core_edges': len(result.core_edges),
        'core_fraction': result.core_fraction(), 'giant_excess': report.giant_excess,
    }
    if vertex is not None:
        closure, marked, descendants = descendant_closure(hypergraph, vertex, result)
        summary['closure_vertices'] = sorted(descendants)
        summary['closure_edges'] = closure.m
    rows = [(v, level, result.in_core(v), v in result.marked) for v, level in enumerate(result.level)]
    _emit(out, fmt, PEEL_COLUMNS, rows, summary, seed)
    click.echo(f"{'Peelable' if result.peelable else 'Not peelable'}: core fraction {result.core_fraction()}")


@cli.command('run')
@click.option('--graph', 'graph_path', type=click.Path(exists=True, dir_okay=False), default=None,
              help='Edge list to run on (otherwise an Erdos-Renyi instance from --k/--n/--lambda)')
@click.option('--k', type=int, default=None)
@click.option('--n', type=int, default=None)
@click.option('--lambda', 'lam', type=float, default=None)
@stream_options
@click.option('--keys', 'keys_path', type=click.Path(exists=True, dir_okay=False), default=None,
              help='Explicit stream: one edge index per line (replaces --model)')
@click.option('--strategy', type=click.Choice(['cm', 'cu']), default='cu', show_default=True)
@click.option('--check-invariants', is_flag=True, help='Check invariants after every step')
@click.option('--summary', 'summary_path', type=click.Path(dir_okay=False), default=None,
              help='Also write the summary JSON here')
@out_options
@click.pass_context
def cmd_run(ctx, graph_path, k, n, lam, N, model, beta, keys_path, strategy, check_invariants, summary_path, seed, out, fmt):
    """Run one process and write per-edge errors (edge_id,o_e,c_e,R_e)."""
    seed = _seed(ctx, seed)
    if graph_path:
        hypergraph = read_edge_list(graph_path)
    else:
        if None in (k, n, lam):
            raise click.UsageError("Give --graph, or all of --k, --n and --lambda")
        hypergraph = gen_erdos_renyi(n, ex.edge_count(lam, n), k, derive_seed(seed, 'graph'))

    if keys_path:
        explicit = [
            f"--{name}" for name in ('model', 'beta', 'N')
            if ctx.get_parameter_source(name) is not click.core.ParameterSource.DEFAULT
        ]
        if explicit:
            raise click.UsageError(f"--keys replaces the stream model; drop {', '.join(explicit)}")
        stream = read_keys(keys_path)
    else:
        _check_beta(model, beta)
        N = _settings(ctx)['N'] if N is None else N
        stream = get_stream(model, N=N, seed=derive_seed(seed, 'stream'), beta=beta)

    report = run(hypergraph, stream, strategy, check_invariants=check_invariants, seed=seed)
    _emit(out, fmt, EDGE_COLUMNS, report.rows(), report.summary(), seed)
    if summary_path:
        get_writer().write_json(summary_path, report.summary(), seed)
    click.echo(f"err_unweighted={report.err_unweighted} err_weighted={report.err_weighted}")


def _experiment_config(ctx, k, n, lam, lambda_grid, N, model, beta, strategy, replicates, seed, check_invariants,
                       default_replicates='replicates'):
    settings = _settings(ctx)
    _check_beta(model, beta)
    return ex.ExperimentConfig(
        k=k,
        n=settings['n'] if n is None else n,
        lambdas=_lambdas(lam, lambda_grid),
        N=settings['N'] if N is None else N,
        model=model,
        beta=beta,
        strategies=ex.parse_strategies(strategy),
        replicates=settings[default_replicates] if replicates is None else replicates,
        root_seed=_seed(ctx, seed),
        check_invariants=check_invariants,
        betas=settings['zipf_betas'],
    )


def sweep_options(f):
    f = click.option('--jobs', type=click.IntRange(min=1), default=None, help='Worker processes')(f)
    f = click.option('--check-invariants', is_flag=True, help='Per-step checks and the excess bound')(f)
    f = click.option('--replicates', type=click.IntRange(min=1), default=None)(f)
    f = click.option('--strategy', type=click.Choice(['cm', 'cu', 'both']), default='both', show_default=True)(f)
    f = click.option('--lambda-grid', default=None, help='a:b:step, inclusive')(f)
    f = click.option('--lambda', 'lam', type=float, default=None)(f)
    f = click.option('--n', type=click.IntRange(min=1), default=None)(f)
    f = click.option('--k', type=click.IntRange(min=2), required=True)(f)
    return f


@cli.command('sweep')
@sweep_options
@stream_options
@out_options
@click.pass_context
def cmd_sweep(ctx, k, n, lam, lambda_grid, strategy, replicates, check_invariants, jobs, N, model, beta, seed, out, fmt):
    """Average error as a function of lambda; one row per (lambda, strategy, replicate)."""
    config = _experiment_config(ctx, k, n, lam, lambda_grid, N, model, beta, strategy, replicates, seed, check_invariants)
    rows = ex.sweep_lambda(config, jobs=_jobs(ctx, jobs))
    summary = {'k': config.k, 'n': config.n, 'N': config.N, 'model': config.label,
               'replicates': config.replicates, 'lambdas': list(config.lambdas)}
    _emit(out, fmt, ex.SWEEP_COLUMNS, [row.as_row() for row in rows], summary, config.root_seed)
    click.echo(f"Wrote {len(rows)} rows to {out}")


@cli.command('concentration')
@sweep_options
@stream_options
@click.option('--stats-out', type=click.Path(dir_okay=False), default=None,
              help='Per-lambda mean/std CSV (default: <out>.stats.csv)')
@out_options
@click.pass_context
def cmd_concentration(ctx, k, n, lam, lambda_grid, strategy, replicates, check_invariants, jobs, N, model, beta,
                      stats_out, seed, out, fmt):
    """Every replicate error per lambda plus mean and sample standard deviation."""
    config = _experiment_config(ctx, k, n, lam, lambda_grid, N, model, beta, strategy, replicates, seed,
                                check_invariants, default_replicates='concentration_replicates')
    result = ex.concentration(config, jobs=_jobs(ctx, jobs))
    stats_rows = [stat.as_row() for stat in result.stats]
    if fmt == 'csv':
        writer = get_writer()
        writer.write_rows(out, ex.SWEEP_COLUMNS, [row.as_row() for row in result.rows], config.root_seed)
        stats_out = stats_out or f"{os.path.splitext(out)[0]}.stats.csv"
        writer.write_rows(stats_out, ex.CONCENTRATION_COLUMNS, stats_rows, config.root_seed)
    else:
        summary = {'stats': [dict(zip(ex.CONCENTRATION_COLUMNS, row)) for row in stats_rows]}
        _emit(out, fmt, ex.SWEEP_COLUMNS, [row.as_row() for row in result.rows], summary, config.root_seed)
    click.echo(f"Wrote {len(result.rows)} replicate rows to {out}")


@cli.command('dist')
@click.option('--k', type=click.IntRange(min=2), required=True)
@click.option('--lambda', 'lam', type=float, required=True)
@click.option('--n', type=click.IntRange(min=1), default=None)
@stream_options
@click.option('--strategy', type=click.Choice(['cm', 'cu']), default='cu', show_default=True)
@click.option('--bin-width', type=click.FloatRange(min=0, min_open=True), default=None)
@click.option('--histogram', 'histogram_path', type=click.Path(dir_okay=False), default=None,
              help='Also write the R_e histogram CSV here')
@out_options
@click.pass_context
def cmd_dist(ctx, k, lam, n, N, model, beta, strategy, bin_width, histogram_path, seed, out, fmt):
    """Per-edge errors of one instance in randomized display order, with histogram and dominant mode."""
    settings = _settings(ctx)
    seed = _seed(ctx, seed)
    _check_beta(model, beta)
    result = ex.error_distribution(
        k, lam, settings['n'] if n is None else n, settings['N'] if N is None else N, seed,
        strategy=strategy, model=model, beta=beta,
        bin_width=settings['bin_width'] if bin_width is None else bin_width,
        mode_smoothing=settings['mode_smoothing'],
    )
    _emit(out, fmt, ex.DISTRIBUTION_COLUMNS, result.rows(), result.summary(), seed)
    if histogram_path:
        get_writer().write_rows(histogram_path, ex.HISTOGRAM_COLUMNS, result.histogram.rows(), seed)
    click.echo(f"Dominant mode {result.mode} holds {result.mode_mass} of edges")


@cli.command('zipf')
@sweep_options
@click.option('--N', 'N', type=click.IntRange(min=1), default=None)
@click.option('--betas', default=None, help='Comma-separated skewness values (default: experiments.zipf_betas)')
@out_options
@click.pass_context
def cmd_zipf(ctx, k, n, lam, lambda_grid, strategy, replicates, check_invariants, jobs, N, betas, seed, out, fmt):
    """Weighted error per (beta, lambda) under Zipf streams."""
    config = _experiment_config(ctx, k, n, lam, lambda_grid, N, 'uniform', None, strategy, replicates, seed,
                                check_invariants)
    if betas is not None:
        try:
            values = [float(b) for b in betas.split(',')]
        except ValueError:
            raise click.BadParameter(f"not a comma-separated list of numbers: {betas}", param_hint='--betas')
        config = evolve(config, betas=values)
    rows = ex.zipf_sweep(config, jobs=_jobs(ctx, jobs))
    summary = {'k': config.k, 'n': config.n, 'N': config.N, 'betas': list(config.betas), 'lambdas': list(config.lambdas)}
    _emit(out, fmt, ex.SWEEP_COLUMNS, [row.as_row() for row in rows], summary, config.root_seed)
    click.echo(f"Wrote {len(rows)} rows to {out}")


@cli.command('dual')
@click.option('--n', type=click.IntRange(min=2), required=True)
@click.option('--r', type=click.IntRange(min=2), default=2, show_default=True)
@click.option('--N', 'N', type=click.IntRange(min=1), default=None)
@click.option('--model', type=click.Choice(['balanced', 'uniform']), default='balanced', show_default=True)
@click.option('--strategy', type=click.Choice(['cm', 'cu']), default='cu', show_default=True)
@out_options
@click.pass_context
def cmd_dual(ctx, n, r, N, model, strategy, seed, out, fmt):
    """Mean edge error on the dual complete hypergraph against its predicted limit."""
    seed = _seed(ctx, seed)
    result = ex.dual_complete_check(n, r, _settings(ctx)['N'] if N is None else N, model=model, seed=seed, strategy=strategy)
    _emit(out, fmt, ex.DUAL_COLUMNS, result.rows(), result.summary(), seed)
    click.echo(f"measured={result.measured} predicted={result.predicted}")


@cli.command('audit')
@click.option('--n', type=click.IntRange(min=2), required=True, help='Base vertex count of K\'_n')
@click.option('--steps', type=click.IntRange(min=0), default=10000, show_default=True)
@out_options
@click.pass_context
def cmd_audit(ctx, n, steps, seed, out, fmt):
    """Audit every CU step on K'_n under a uniform stream."""
    seed = _seed(ctx, seed)
    hypergraph = gen_dual_complete(n)
    rounds = max(1, -(-steps // hypergraph.m))
    keys = n_uniform(hypergraph.m, rounds, derive_seed(seed, 'stream'))
    records = audit_run(hypergraph, keys[:steps])
    rows = [
        (rec.t, rec.edge, rec.p, rec.q, ' '.join(map(str, rec.minedges)), ' '.join(map(str, rec.increased)), rec.counter_sum)
        for rec in records
    ]
    _emit(out, fmt, AUDIT_COLUMNS, rows, {'n': n, 'steps': len(records)}, seed)
    click.echo(f"Audited {len(records)} steps without violation")


@cli.command('regular')
@click.option('--t', type=click.IntRange(min=1), required=True, help='3t vertices, 2t edges')
@click.option('--N', 'N', type=click.IntRange(min=1), default=None)
@click.option('--model', type=click.Choice(['balanced', 'uniform']), default='uniform', show_default=True)
@click.option('--strategy', type=click.Choice(['cm', 'cu']), default='cu', show_default=True)
@click.option('--replicates', type=click.IntRange(min=1), default=10, show_default=True)
@click.option('--jobs', type=click.IntRange(min=1), default=None)
@out_options
@click.pass_context
def cmd_regular(ctx, t, N, model, strategy, replicates, jobs, seed, out, fmt):
    """Mean error on random 2-regular 3-uniform hypergraphs (non-peelable)."""
    settings = _settings(ctx)
    seed = _seed(ctx, seed)
    result = ex.regular_core_check(
        t, settings['N'] if N is None else N, seed, replicates, strategy=strategy, model=model,
        retry_budget=settings['retry_budget'], jobs=_jobs(ctx, jobs),
    )
    _emit(out, fmt, ex.REPLICATE_COLUMNS, result.rows(), result.summary(), seed)
    click.echo(f"mean={result.mean} std={result.std}")


@cli.command('cm-rate')
@click.option('--k', type=click.IntRange(min=2), required=True)
@click.option('--lambda', 'lam', type=float, required=True)
@click.option('--n', type=click.IntRange(min=1), default=None)
@click.option('--replicates', type=click.IntRange(min=1), default=None)
@out_options
@click.pass_context
def cmd_cm_rate(ctx, k, lam, n, replicates, seed, out, fmt):
    """Fraction of edges with a nonzero CM error against (1 - exp(-k*lambda))^k."""
    settings = _settings(ctx)
    seed = _seed(ctx, seed)
    result = ex.cm_error_rate_check(k, lam, settings['n'] if n is None else n, seed,
                                    settings['replicates'] if replicates is None else replicates)
    _emit(out, fmt, ex.REPLICATE_COLUMNS, result.rows(), result.summary(), seed)
    click.echo(f"mean={result.mean} predicted={result.predicted}")


@cli.command('cm-error')
@click.option('--k', type=click.IntRange(min=2), required=True)
@click.option('--lambda', 'lam', type=float, required=True)
@click.option('--n', type=click.IntRange(min=1), default=None)
@click.option('--N', 'N', type=click.IntRange(min=1), default=1, show_default=True)
@click.option('--replicates', type=click.IntRange(min=1), default=None)
@click.option('--jobs', type=click.IntRange(min=1), default=None)
@out_options
@click.pass_context
def cmd_cm_error(ctx, k, lam, n, N, replicates, jobs, seed, out, fmt):
    """Mean CM error on balanced streams against its Poisson-limit expectation."""
    settings = _settings(ctx)
    seed = _seed(ctx, seed)
    result = ex.cm_error_check(k, lam, settings['n'] if n is None else n, seed,
                               settings['replicates'] if replicates is None else replicates,
                               N=N, jobs=_jobs(ctx, jobs))
    _emit(out, fmt, ex.REPLICATE_COLUMNS, result.rows(), result.summary(), seed)
    click.echo(f"mean={result.mean} predicted={result.predicted}")


@cli.command('positive-error')
@click.option('--k', type=click.IntRange(min=2), required=True)
@click.option('--lambda', 'lam', type=float, required=True)
@click.option('--n', type=click.IntRange(min=1), default=None)
@click.option('--N', 'N', type=click.IntRange(min=1), default=None)
@click.option('--model', type=click.Choice(['balanced', 'uniform']), default='uniform', show_default=True)
@click.option('--replicates', type=click.IntRange(min=1), default=None)
@out_options
@click.pass_context
def cmd_positive_error(ctx, k, lam, n, N, model, replicates, seed, out, fmt):
    """Fraction of overestimated edges under CM and under CU on common instances."""
    settings = _settings(ctx)
    seed = _seed(ctx, seed)
    result = ex.positive_error_comparison(
        k, lam, settings['n'] if n is None else n, settings['N'] if N is None else N, seed,
        settings['replicates'] if replicates is None else replicates, model=model,
    )
    _emit(out, fmt, ex.POSITIVE_ERROR_COLUMNS, result.rows(), result.summary(), seed)
    click.echo(f"cm={result.mean('cm')} cu={result.mean('cu')}")


def _read_text_keys(path):
    with open(path, 'r') as f:
        return [line.rstrip('\n') for line in f if line.strip()]


@cli.command('sketch')
@click.option('--width', 'n', type=click.IntRange(min=1), required=True, help='Counter array size n')
@click.option('--depth', 'k', type=click.IntRange(min=1), required=True, help='Number of hash functions k')
@click.option('--strategy', type=click.Choice(['cm', 'cu']), default='cu', show_default=True)
@click.option('--keys', 'keys_path', required=True, type=click.Path(exists=True, dir_okay=False),
              help='Stream of keys, one per line')
@click.option('--queries', 'queries_path', type=click.Path(exists=True, dir_okay=False), default=None,
              help='Keys to query (default: the distinct stream keys)')
@click.option('--state-out', type=click.Path(dir_okay=False), default=None, help='Export sketch state here')
@click.option('--graph-out', type=click.Path(dir_okay=False), default=None,
              help='Write the hypergraph induced on the distinct keys here')
@out_options
@click.pass_context
def cmd_sketch(ctx, n, k, strategy, keys_path, queries_path, state_out, graph_out, seed, out, fmt):
    """Feed a key file through a counting sketch and report estimates against true counts."""
    seed = _seed(ctx, seed)
    stream = _read_text_keys(keys_path)
    sketch = new_sketch(n, k, derive_seed(seed, 'hash'), strategy)
    sketch.extend(stream)

    truth = {}
    for key in stream:
        truth[key] = truth.get(key, 0) + 1
    queries = _read_text_keys(queries_path) if queries_path else list(truth)
    rows = [(key, sketch.query(key), truth.get(key, 0)) for key in queries]
    summary = {'n': n, 'k': k, 'strategy': strategy, 'keys': len(stream), 'distinct_keys': len(truth)}
    _emit(out, fmt, SKETCH_COLUMNS, rows, summary, seed)
    if state_out:
        sketch.save(state_out)
    if graph_out:
        write_edge_list(sketch.hash_hypergraph(list(truth)), graph_out, comment=metadata_header(seed))
    click.echo(f"Queried {len(rows)} keys")


@cli.command('guarantee')
@click.option('--epsilon', type=click.FloatRange(0, 1, min_open=True, max_open=True), default=0.1, show_default=True)
@click.option('--delta', type=click.FloatRange(0, 1, min_open=True, max_open=True), default=0.05, show_default=True)
@click.option('--universe', type=click.IntRange(min=1), default=1000, show_default=True, help='Number of distinct keys')
@click.option('--length', type=click.IntRange(min=0), default=10000, show_default=True, help='Stream length')
@click.option('--trials', type=click.IntRange(min=1), default=200, show_default=True)
@out_options
@click.pass_context
def cmd_guarantee(ctx, epsilon, delta, universe, length, trials, seed, out, fmt):
    """Failure rate of a CM sketch sized for (epsilon, delta) on a uniform stream."""
    seed = _seed(ctx, seed)
    stream = make_rng(derive_seed(seed, 'stream')).integers(0, universe, size=length).tolist()
    result = guarantee_trial(epsilon, delta, stream, [0], trials, seed)
    summary = {'epsilon': epsilon, 'delta': delta, 'k': result.k, 'n': result.n, 'trials': trials,
               'failures': result.failures, 'failure_rate': result.failure_rate}
    _emit(out, fmt, tuple(summary), [tuple(summary.values())], summary, seed)
    click.echo(f"k={result.k} n={result.n} failure_rate={result.failure_rate}")


if __name__ == '__main__':
    cli()
