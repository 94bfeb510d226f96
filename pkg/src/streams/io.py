import logging

import numpy as np

from src.errors import ValidationError
from src.persistence import get_writer

logger = logging.getLogger(__name__)


def read_keys(path):
    """Read a newline-delimited integer key file; blank lines and '#' comments are skipped."""
    keys = []
    with open(path, 'r') as f:
        for number, line in enumerate(f, start=1):
            text = line.split('#', 1)[0].strip()
            if not text:
                continue
            try:
                keys.append(int(text))
            except ValueError:
                raise ValidationError(f"{path}:{number}: not an integer key: '{text}'")
    logger.info(f"Read {len(keys)} keys from {path}")
    return np.asarray(keys, dtype=np.int64)


def write_keys(keys, path):
    """Write keys one per line, atomically."""
    text = "".join(f"{int(key)}\n" for key in keys)
    get_writer().write_text(path, text)
    logger.info(f"Wrote {len(keys)} keys to {path}")
