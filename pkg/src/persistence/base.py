import logging
from abc import ABC, abstractmethod

logger = logging.getLogger(__name__)

class BaseWriter(ABC):
    """
    Base class for all artifact writers.

    This abstract class defines the interface every writer must adhere to. It
    provides methods for persisting tabular rows, JSON summaries and raw text or
    bytes. Implementations own the durability story (atomic replacement,
    provenance headers) of their target medium.
    """

    def __init__(self):
        logger.debug(f"Initialized {self.__class__.__name__}")

    @abstractmethod
    def write_rows(self, path, header, rows, seed):
        """
        Persist a table as CSV.

        Args:
            path (str): Destination path.
            header (list[str]): Column names, in output order.
            rows (iterable[Sequence]): Row values, in header order.
            seed (int): Root seed recorded in the provenance line.

        Returns:
            str: The path written.
        """
        pass

    @abstractmethod
    def write_json(self, path, payload, seed):
        """
        Persist a JSON object.

        Args:
            path (str): Destination path.
            payload (dict): JSON-serializable mapping.
            seed (int): Root seed recorded in the provenance field.

        Returns:
            str: The path written.
        """
        pass

    @abstractmethod
    def write_text(self, path, text):
        """Persist text verbatim."""
        pass

    @abstractmethod
    def write_bytes(self, path, data):
        """Persist bytes verbatim."""
        pass
