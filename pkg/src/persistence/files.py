import os
import csv
import io
import json
import math
import logging
import tempfile

from src import metadata_header
from .base import BaseWriter

logger = logging.getLogger(__name__)


def format_value(value):
    """Render one CSV cell; floats use repr so bytes are stable, None and NaN become empty."""
    if value is None:
        return ''
    if isinstance(value, bool):
        return 'true' if value else 'false'
    if isinstance(value, float):
        return '' if math.isnan(value) else repr(float(value))
    if hasattr(value, 'item'):
        return format_value(value.item())
    return str(value)


def _clean_json(value):
    """Convert numpy values to Python and replace NaN and infinities (invalid JSON) with null."""
    if hasattr(value, "tolist"):
        value = value.tolist()
    if isinstance(value, float) and not math.isfinite(value):
        return None
    if isinstance(value, dict):
        return {k: _clean_json(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_clean_json(v) for v in value]
    return value


def atomic_write(path, data):
    """
    Write data to path through a temporary file in the same directory.

    Args:
        path (str): Destination path.
        data (str or bytes): Content to write.

    Returns:
        str: The path written.
    """
    directory = os.path.dirname(os.path.abspath(path))
    os.makedirs(directory, exist_ok=True)
    mode = 'wb' if isinstance(data, bytes) else 'w'
    fd, tmp_path = tempfile.mkstemp(dir=directory, prefix='.cu-sketch-lab-', suffix='.tmp')
    try:
        with os.fdopen(fd, mode, **({} if mode == 'wb' else {'newline': ''})) as f:
            f.write(data)
        os.replace(tmp_path, path)
    except Exception:
        if os.path.exists(tmp_path):
            os.unlink(tmp_path)
        raise
    return path


class AtomicFileWriter(BaseWriter):
    """
    Writer for local files.

    Every file is first written next to its destination and then renamed over
    it, so readers never observe a partially written result. CSV files open with
    a '# cu-sketch-lab v<version> seed=<seed>' line; JSON objects carry the same
    text under the 'header' key.
    """

    def write_rows(self, path, header, rows, seed):
        buffer = io.StringIO()
        buffer.write(f"# {metadata_header(seed)}\n")
        writer = csv.writer(buffer, lineterminator='\n')
        writer.writerow(header)
        count = 0
        for row in rows:
            writer.writerow([format_value(v) for v in row])
            count += 1
        atomic_write(path, buffer.getvalue())
        logger.info(f"Wrote {count} rows to {path}")
        return path

    def write_json(self, path, payload, seed):
        document = {'header': metadata_header(seed)}
        document.update(payload)
        text = json.dumps(_clean_json(document), indent=2)
        atomic_write(path, text + "\n")
        logger.info(f"Wrote JSON summary to {path}")
        return path

    def write_text(self, path, text):
        atomic_write(path, text)
        logger.info(f"Wrote {path}")
        return path

    def write_bytes(self, path, data):
        atomic_write(path, bytes(data))
        logger.info(f"Wrote {len(data)} bytes to {path}")
        return path
