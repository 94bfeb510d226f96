from .config import (
    SWEEP_COLUMNS,
    ExperimentConfig,
    SweepRow,
    edge_count,
    parse_lambda_grid,
    parse_strategies,
)
from .parallel import run_tasks
from .sweeps import (
    CONCENTRATION_COLUMNS,
    ConcentrationResult,
    ConcentrationStat,
    concentration,
    mean_error,
    sweep_lambda,
    task_seeds,
    zipf_sweep,
)
from .checks import (
    DISTRIBUTION_COLUMNS,
    DUAL_COLUMNS,
    HISTOGRAM_COLUMNS,
    POSITIVE_ERROR_COLUMNS,
    REPLICATE_COLUMNS,
    DistributionResult,
    DualCheckResult,
    PositiveErrorResult,
    ReplicateCheckResult,
    cm_error_check,
    cm_error_rate_check,
    dual_complete_check,
    error_distribution,
    expected_cm_error,
    nonzero_cm_error_fraction,
    positive_error_comparison,
    regular_core_check,
)
