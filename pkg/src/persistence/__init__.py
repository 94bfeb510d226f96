from .base import BaseWriter
from .files import AtomicFileWriter, atomic_write, format_value
import logging

logger = logging.getLogger(__name__)

def get_writer(writer_type='file'):
    """
    Factory function to get the artifact writer implementation.

    Args:
        writer_type (str, optional): Type of writer to use. Defaults to 'file'.

    Returns:
        BaseWriter: Concrete implementation of the writer interface.

    Raises:
        ValueError: If an unsupported writer type is specified.

    Example:
        >>> writer = get_writer()
        >>> writer.write_rows('sweep.csv', ['k', 'n'], [[3, 1000]], seed=7)
    """
    logger.debug(f"Getting writer implementation for type: {writer_type}")

    if writer_type == 'file':
        return AtomicFileWriter()
    else:
        raise ValueError(f"Unsupported writer type: {writer_type}")
