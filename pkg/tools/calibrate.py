#!/usr/bin/env python3
"""
Calibration oracle for the numeric test thresholds that have no closed form.

The thresholds frozen into the slow acceptance tests (subcritical error mass,
core fractions around the peeling thresholds, phase-transition ratio) were read
off this script's output with its default arguments. Rerun it after any change
to the generators or the process to re-derive them.

Usage:
    python -m tools.calibrate --action subcritical
    python -m tools.calibrate --action peeling --replicates 20
    python -m tools.calibrate --action transition
    python -m tools.calibrate --action all --seed 20220501

License: MIT
"""

import os
import sys
import logging
import argparse

import numpy as np

# Add the repository root to the path
sys.path.append(os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

from src.config import load_config
from src.experiments import ExperimentConfig, edge_count, error_distribution, mean_error, sweep_lambda
from src.hypergraph import gen_erdos_renyi, peel
from src.rng import derive_seed

logging.basicConfig(
    level=logging.INFO,
    format="%(asctime)s - %(name)s - %(levelname)s - %(message)s",
    handlers=[logging.StreamHandler()]
)

logger = logging.getLogger(__name__)

ACTIONS = ('subcritical', 'peeling', 'transition', 'all')


class Calibrator:
    """
    Measurements behind the frozen test thresholds.

    Provides:
    - the share of edges with small error on a subcritical instance
    - empty-core frequency and core fraction on both sides of the peeling thresholds
    - the CU error ratio across the k=3 threshold
    """

    def __init__(self, seed, n=1000, N=10000, replicates=20, jobs=1):
        self.seed = seed
        self.n = n
        self.N = N
        self.replicates = replicates
        self.jobs = jobs

    def subcritical(self, k=3, lam=0.4, cutoff=0.05):
        """Fraction of edges with R_e < cutoff on one subcritical CU run."""
        result = error_distribution(k, lam, self.n, self.N, self.seed, strategy='cu')
        errors = result.report.defined_errors()
        share = float(np.mean(errors < cutoff))
        logger.info(f"k={k}, lambda={lam}: {share} of edges below {cutoff}")
        return share

    def peeling(self, k, lam, n=None):
        """(empty-core frequency, mean core fraction) over the replicates at one density."""
        n = n or self.n
        m = edge_count(lam, n)
        empty, fractions = 0, []
        for replicate in range(self.replicates):
            result = peel(gen_erdos_renyi(n, m, k, derive_seed(self.seed, 'calibrate-peel', k, replicate)))
            empty += result.peelable
            fractions.append(result.core_fraction())
        frequency = empty / self.replicates
        logger.info(f"k={k}, lambda={lam}, n={n}: empty core {frequency}, core fraction {np.mean(fractions)}")
        return frequency, float(np.mean(fractions))

    def transition(self, k=3, below=0.6, above=1.2):
        """Mean CU error below and above the threshold, and their ratio."""
        config = ExperimentConfig(
            k=k, n=self.n, lambdas=(below, above), N=self.N, model='uniform',
            strategies=('cu',), replicates=max(1, self.replicates // 4), root_seed=self.seed,
        )
        rows = sweep_lambda(config, jobs=self.jobs)
        low, high = mean_error(rows, below, 'cu'), mean_error(rows, above, 'cu')
        ratio = high / low if low > 0 else float('inf')
        logger.info(f"k={k}: CU error {low} at {below}, {high} at {above} (ratio {ratio})")
        return low, high, ratio


def run(action, calibrator):
    """Perform the requested measurements and print them."""
    if action in ('subcritical', 'all'):
        share = calibrator.subcritical()
        print(f"subcritical k=3 lambda=0.4: share of R_e < 0.05 = {share:.4f}")

    if action in ('peeling', 'all'):
        for k, points, n in ((3, (0.75, 0.9), 2000), (2, (0.4, 0.75), calibrator.n)):
            for lam in points:
                frequency, fraction = calibrator.peeling(k, lam, n)
                print(f"peeling k={k} lambda={lam} n={n}: empty core {frequency:.3f}, core fraction {fraction:.4f}")

    if action in ('transition', 'all'):
        low, high, ratio = calibrator.transition()
        print(f"transition k=3: err(0.6) = {low:.5f}, err(1.2) = {high:.5f}, ratio = {ratio:.1f}")


def main(argv=None):
    """Entry point for the script."""
    defaults = load_config()['experiments']
    parser = argparse.ArgumentParser(description="cu-sketch-lab calibration oracle")
    parser.add_argument('--action', choices=ACTIONS, required=True, help='Measurement to perform')
    parser.add_argument('--seed', type=int, default=defaults['root_seed'], help='Root seed')
    parser.add_argument('--n', type=int, default=defaults['n'], help='Vertex count')
    parser.add_argument('--N', type=int, default=defaults['N'], help='Stream multiplicity')
    parser.add_argument('--replicates', type=int, default=20, help='Instances per density')
    parser.add_argument('--jobs', type=int, default=1, help='Worker processes for sweeps')
    parser.add_argument('--verbose', '-v', action='store_true', help='Enable verbose logging')

    args = parser.parse_args(argv)
    if args.verbose:
        logging.getLogger().setLevel(logging.DEBUG)
    if args.replicates < 1:
        parser.error("--replicates must be at least 1")

    try:
        run(args.action, Calibrator(args.seed, n=args.n, N=args.N, replicates=args.replicates, jobs=args.jobs))
    except KeyboardInterrupt:
        logger.info("Process interrupted by user")
    except Exception as e:
        logger.error(f"Unhandled exception: {str(e)}", exc_info=True)
        sys.exit(1)


if __name__ == "__main__":
    main()
