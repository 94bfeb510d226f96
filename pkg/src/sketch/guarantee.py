import logging
from collections import Counter

from attrs import define

from src.errors import ValidationError
from src.rng import derive_seed
from src.sketch.counting import new_sketch
from src.sketch.sizing import guarantee_dimensions

logger = logging.getLogger(__name__)


@define(frozen=True)
class GuaranteeTrialResult:
    epsilon: float
    delta: float
    k: int
    n: int
    trials: int
    checks: int
    failures: int

    @property
    def failure_rate(self):
        return self.failures / self.checks if self.checks else 0.0


def guarantee_trial(epsilon, delta, stream, query_keys, trials, seed):
    """
    Measure how often a CM sketch sized for (epsilon, delta) overshoots by more than epsilon*N.

    Each trial draws a fresh hash family from the seed and feeds the whole stream;
    every query key is then checked against its true count. N is the stream length.

    Args:
        epsilon (float): Additive error fraction, in (0, 1).
        delta (float): Failure probability, in (0, 1).
        stream (Sequence): Keys in arrival order.
        query_keys (Sequence): Keys whose estimates are checked in every trial.
        trials (int): Number of independent hash families.
        seed (int): Root seed for the hash families.

    Returns:
        GuaranteeTrialResult: Dimensions used and the failure count over trials x query keys.
    """
    if trials < 1:
        raise ValidationError(f"Trials must be at least 1, got {trials}")
    k, n = guarantee_dimensions(epsilon, delta)
    stream = list(stream)
    query_keys = list(query_keys)
    truth = Counter(stream)
    bound = epsilon * len(stream)

    failures = 0
    for trial in range(trials):
        sketch = new_sketch(n, k, derive_seed(seed, 'guarantee', trial), 'cm')
        sketch.extend(stream)
        failures += sum(1 for key in query_keys if sketch.query(key) - truth[key] > bound)

    result = GuaranteeTrialResult(
        epsilon=epsilon, delta=delta, k=k, n=n, trials=trials,
        checks=trials * len(query_keys), failures=failures,
    )
    logger.info(f"Sizing check k={k}, n={n}: {failures} failures in {result.checks} checks")
    return result
