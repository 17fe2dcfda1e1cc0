from abc import ABC, abstractmethod
from typing import Generic, Optional

from torus_pmra.helpers.typing import T


class Serializer(ABC, Generic[T]):
    """
    Base interface for the on-disk formats of sections, tables and reports
    """

    @staticmethod
    @abstractmethod
    def extension() -> str:
        raise NotImplementedError

    def manifest(self, data: T) -> Optional[str]:
        """
        The kind of value `data` is, needed to read it back
        Args:
            data:

        Returns:
            The manifest of the object, if it has one
        """
        return None

    @abstractmethod
    def deserialize(self, data: str, manifest: Optional[str] = None) -> T:
        """
        Reads a value back. The manifest names the kind of value the string holds.
        Args:
            data: the serialized string
            manifest: the kind of value, as returned by `manifest`

        Returns:
            The value
        """
        raise NotImplementedError

    @abstractmethod
    def serialize(self, data: T) -> str:
        """
        Args:
            data: the value to write

        Returns:
            A string representation of `data` in this serializer's format
        """
        raise NotImplementedError
