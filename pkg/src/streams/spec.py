import enum
import logging

import numpy as np
from attrs import define, field

from src.errors import ValidationError
from src.streams.generators import n_balanced, n_uniform, zipf_stream

logger = logging.getLogger(__name__)


class StreamModel(str, enum.Enum):
    BALANCED = 'balanced'
    UNIFORM = 'uniform'
    ZIPF = 'zipf'
    EXPLICIT = 'explicit'


def _keys(value):
    if value is None:
        return None
    return tuple(int(x) for x in value)


@define(frozen=True)
class StreamSpec:
    """
    Description of an input stream over m keys.

    Attributes:
        model (StreamModel): Input model.
        N (int): Per-key multiplicity parameter; generated streams have length N*m.
        seed (int): Generator seed.
        beta (float): Zipf skewness, only meaningful for the Zipf model.
        keys (tuple[int], optional): The sequence itself for the explicit model.
    """

    model: StreamModel = field(converter=StreamModel)
    N: int = field(default=1, converter=int)
    seed: int = field(default=0, converter=int)
    beta: float = field(default=0.0, converter=float)
    keys: tuple = field(default=None, converter=_keys)

    def __attrs_post_init__(self):
        if self.model is StreamModel.EXPLICIT:
            if self.keys is None:
                raise ValidationError("An explicit stream needs its key sequence")
        elif self.N < 1:
            raise ValidationError(f"Multiplicity N must be at least 1, got {self.N}")
        if self.beta < 0:
            raise ValidationError(f"Zipf skewness must be non-negative, got {self.beta}")
        if self.beta and self.model is not StreamModel.ZIPF:
            raise ValidationError("A skewness parameter only applies to the zipf model")

    @property
    def label(self):
        """Model name as written in result files, e.g. 'balanced' or 'zipf:0.5'."""
        if self.model is StreamModel.ZIPF:
            return f"zipf:{self.beta!r}"
        return self.model.value

    def generate(self, m):
        """
        Produce the key sequence for m keys.

        Returns:
            numpy.ndarray: int64 keys in [0, m).
        """
        if self.model is StreamModel.BALANCED:
            return n_balanced(m, self.N, self.seed)
        if self.model is StreamModel.UNIFORM:
            return n_uniform(m, self.N, self.seed)
        if self.model is StreamModel.ZIPF:
            return zipf_stream(m, self.N, self.beta, self.seed)

        keys = np.asarray(self.keys, dtype=np.int64)
        if keys.size and (keys.min() < 0 or keys.max() >= m):
            raise ValidationError(f"Explicit stream has keys outside [0, {m})")
        return keys

    def multiplicity(self, m):
        """Effective N: the parameter for generated models, length/m for explicit ones."""
        if self.model is StreamModel.EXPLICIT:
            return len(self.keys) / m if m else 0.0
        return self.N
