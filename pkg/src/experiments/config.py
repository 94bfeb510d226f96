import logging
import math

from attrs import define, field, astuple

from src.errors import ValidationError
from src.process.state import Strategy
from src.streams import StreamModel

logger = logging.getLogger(__name__)

SWEEP_COLUMNS = (
    'k', 'n', 'm', 'lambda', 'N', 'model', 'strategy', 'replicate', 'seed',
    'err_unweighted', 'err_weighted', 'core_fraction', 'giant_excess',
)

GENERATED_MODELS = (StreamModel.BALANCED.value, StreamModel.UNIFORM.value, StreamModel.ZIPF.value)


def edge_count(lam, n):
    """m = lambda * n rounded half up."""
    return math.floor(lam * n + 0.5)


def parse_lambda_grid(text):
    """
    Parse 'a:b:step' into the inclusive grid a, a+step, ..., b.

    Values are rounded to 12 decimals so that '0.2:1.4:0.05' yields 0.35 and not
    0.35000000000000003.
    """
    parts = text.split(':')
    if len(parts) != 3:
        raise ValidationError(f"Lambda grid must look like a:b:step, got '{text}'")
    try:
        start, stop, step = (float(p) for p in parts)
    except ValueError:
        raise ValidationError(f"Lambda grid must look like a:b:step, got '{text}'")
    if step <= 0 or stop < start:
        raise ValidationError(f"Lambda grid needs step > 0 and b >= a, got '{text}'")
    count = math.floor((stop - start) / step + 1e-9) + 1
    return tuple(round(start + i * step, 12) for i in range(count))


def parse_strategies(text):
    if text == 'both':
        return (Strategy.CM.value, Strategy.CU.value)
    try:
        return (Strategy(text).value,)
    except ValueError:
        raise ValidationError(f"Unsupported strategy: {text}")


def _floats(values):
    return tuple(float(v) for v in values)


def _strategies(values):
    return tuple(Strategy(v).value for v in values)


@define(frozen=True)
class ExperimentConfig:
    """
    Parameters of a replicated sweep over edge densities.

    Attributes:
        k (int): Edge order.
        n (int): Vertex count.
        lambdas (tuple[float]): Densities m/n to visit, in order.
        N (int): Stream multiplicity.
        model (str): 'balanced', 'uniform' or 'zipf'.
        beta (float, optional): Zipf skewness for a single-beta sweep.
        strategies (tuple[str]): Strategies run on every instance, in output order.
        replicates (int): Instances per grid point.
        root_seed (int): Seed every task seed derives from.
        check_invariants (bool): Per-step checks plus the excess bound on k=2 balanced rows.
        betas (tuple[float]): Skewness values visited by zipf_sweep.
    """

    k: int = field(converter=int)
    n: int = field(converter=int)
    lambdas: tuple = field(converter=_floats)
    N: int = field(converter=int)
    model: str = 'uniform'
    beta: float = None
    strategies: tuple = field(default=('cm', 'cu'), converter=_strategies)
    replicates: int = field(default=15, converter=int)
    root_seed: int = field(default=20220501, converter=int)
    check_invariants: bool = False
    betas: tuple = field(default=(0.0, 0.2, 0.5, 0.7, 0.9), converter=_floats)

    def __attrs_post_init__(self):
        if self.k < 2:
            raise ValidationError(f"Edge order k must be at least 2, got {self.k}")
        if self.n < self.k:
            raise ValidationError(f"Need n >= k, got n={self.n}, k={self.k}")
        if not self.lambdas:
            raise ValidationError("The lambda grid is empty")
        for lam in self.lambdas:
            if edge_count(lam, self.n) < 1:
                raise ValidationError(f"lambda={lam} gives no edge for n={self.n}")
            if edge_count(lam, self.n) > math.comb(self.n, self.k):
                raise ValidationError(f"lambda={lam} asks for more edges than C({self.n}, {self.k})")
        if self.N < 1:
            raise ValidationError(f"N must be at least 1, got {self.N}")
        if self.model not in GENERATED_MODELS:
            raise ValidationError(f"Unsupported stream model for sweeps: {self.model}")
        if self.beta is not None and self.model != StreamModel.ZIPF.value:
            raise ValidationError("--beta is only valid with the zipf model")
        if self.model == StreamModel.ZIPF.value and self.beta is None:
            raise ValidationError("The zipf model needs a skewness parameter beta")
        if self.replicates < 1:
            raise ValidationError(f"Replicates must be at least 1, got {self.replicates}")
        if not self.strategies:
            raise ValidationError("At least one strategy is needed")

    @property
    def label(self):
        if self.model == StreamModel.ZIPF.value:
            return f"zipf:{float(self.beta)!r}"
        return self.model


@define(frozen=True)
class SweepRow:
    k: int
    n: int
    m: int
    lam: float
    N: int
    model: str
    strategy: str
    replicate: int
    seed: int
    err_unweighted: float
    err_weighted: float
    core_fraction: float
    giant_excess: int

    def as_row(self):
        """Values in SWEEP_COLUMNS order."""
        return astuple(self)
