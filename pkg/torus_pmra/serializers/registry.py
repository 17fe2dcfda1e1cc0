import logging
import os
from functools import reduce
from typing import Any, Dict, Iterable, List, Optional, Tuple, Type

import funcy
from toolz import dicttoolz, itertoolz

from torus_pmra.analysis.grid import GridSamples, LatticeSumResult
from torus_pmra.exceptions import SerializationError
from torus_pmra.lattice.cosets import CosetTable
from torus_pmra.serializers.csv import CsvSerializer
from torus_pmra.serializers.interfaces import Serializer
from torus_pmra.serializers.json import JsonSerializer

logger = logging.getLogger(__name__)

default_settings = {
    "serializers": {"json": JsonSerializer, "csv": CsvSerializer},
    "serializer_bindings": {
        CosetTable: "csv",
        GridSamples: "csv",
        LatticeSumResult: "csv",
    },
    "default": "json",
}

ClassSerializer = Tuple[Type, Type[Serializer]]


class SerializerRegistry:
    """
    Picks a serializer per value type, falling back to the default one. When a
    target path is known its extension decides instead.
    """

    def __init__(self, config: Optional[Dict] = None):
        config = config or default_settings
        self._config_serializers: Dict[str, Type[Serializer]] = config["serializers"]
        self._config_bindings: Dict[Type, str] = config["serializer_bindings"]

        self._serializer_map: Dict[Type, Type[Serializer]] = dicttoolz.valmap(
            lambda v: self._config_serializers[v], self._config_bindings
        )

        # subtypes first
        self._bindings = list(sort((k, v) for k, v in self._serializer_map.items()))

        self._default_serializer: Optional[Type[Serializer]] = (
            self.get_serializer_by_name(config["default"])
            if "default" in config
            else None
        )

        self._serializers_by_extension: Dict[str, Type[Serializer]] = {
            v.extension(): v for v in self._config_serializers.values()
        }

    def get_serializer_by_name(self, name: str) -> Type[Serializer]:
        try:
            return self._config_serializers[name]
        except KeyError:
            raise SerializationError(f"Serializer {name!r} not found")

    def serializer_for_path(self, path: str) -> Optional[Type[Serializer]]:
        _, extension = os.path.splitext(path)
        return self._serializers_by_extension.get(extension.lower())

    def serialize(self, obj: Any, path: Optional[str] = None) -> str:
        serializer = self.find_serializer_for(obj, path)
        return serializer.serialize(obj)

    def find_serializer_for(self, obj: Any, path: Optional[str] = None) -> Serializer:
        by_path = self.serializer_for_path(path) if path else None
        if by_path is not None:
            return by_path()
        return self.serializer_for(type(obj))()

    def serializer_for(self, type: Type) -> Type[Serializer]:
        if self._serializer_map.get(type):
            return self._serializer_map[type]

        possible_bindings = funcy.lfilter(
            lambda t: issubclass(type, t[0]), self._bindings
        )
        if len(possible_bindings) == 0:
            if self._default_serializer:
                return self._default_serializer
            raise SerializationError(f"No serializer found for the type {type}")
        elif len(possible_bindings) > 1:
            logger.warning(
                "More than one serializer found for type %s. Choosing the first one.",
                type,
            )
        return itertoolz.first(possible_bindings)[1]

    def write(self, obj: Any, path: str) -> str:
        """Serializes `obj` with the serializer `path` calls for and writes it."""
        data = self.serialize(obj, path)
        try:
            with open(path, "w", encoding="utf-8") as f:
                f.write(data)
        except OSError as e:
            raise SerializationError(f"Cannot write {path}: {e}") from e
        logger.info("Wrote %s", path)
        return data

    def read(self, path: str, manifest: Optional[str] = None) -> Any:
        serializer = self.serializer_for_path(path) or self._default_serializer
        if serializer is None:
            raise SerializationError(f"No serializer reads {path}")
        try:
            with open(path, "r", encoding="utf-8") as f:
                data = f.read()
        except OSError as e:
            raise SerializationError(f"Cannot read {path}: {e}") from e
        return serializer().deserialize(data, manifest)


def sort(list_items: Iterable[ClassSerializer]) -> Iterable[ClassSerializer]:
    """
    Sort so that subtypes always precede their supertypes, but without
    obeying any order between unrelated subtypes (insert sort).
    """

    def _(
        buffer: List[ClassSerializer], type_tuple: ClassSerializer
    ) -> List[ClassSerializer]:
        t = type_tuple[0]

        index = next((i for i, v in enumerate(buffer) if issubclass(t, v[0])), None)
        if index is None:
            buffer.append(type_tuple)
        else:
            buffer.insert(index, type_tuple)

        return buffer

    init: List[ClassSerializer] = []
    return reduce(_, list(list_items), init)  # type: ignore
