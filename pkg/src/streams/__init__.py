from .generators import n_balanced, n_uniform, zipf_probs, zipf_stream
from .spec import StreamModel, StreamSpec
from .io import read_keys, write_keys
import logging

logger = logging.getLogger(__name__)

def get_stream(model, N=1, seed=0, beta=None, keys=None):
    """
    Factory function to build a StreamSpec from CLI-style arguments.

    Args:
        model (str): 'balanced', 'uniform', 'zipf' or 'explicit'.
        N (int, optional): Per-key multiplicity.
        seed (int, optional): Stream seed.
        beta (float, optional): Zipf skewness; only accepted with the zipf model.
        keys (Sequence[int], optional): Key sequence for the explicit model.

    Returns:
        StreamSpec: The stream description.

    Raises:
        ValueError: If the model is unsupported or the arguments do not fit it.
    """
    logger.debug(f"Building {model} stream spec with N={N}, seed={seed}")

    if model not in {m.value for m in StreamModel}:
        raise ValueError(f"Unsupported stream model: {model}")
    if beta is not None and model != StreamModel.ZIPF.value:
        raise ValueError("--beta is only valid with the zipf model")
    if model == StreamModel.ZIPF.value and beta is None:
        raise ValueError("The zipf model needs a skewness parameter beta")
    return StreamSpec(model=model, N=N, seed=seed, beta=beta or 0.0, keys=keys)
