from __future__ import absolute_import

__all__ = [
    "Serializer",
    "JsonSerializer",
    "CsvSerializer",
    "SerializerRegistry",
    "canonical_dumps",
    "default_settings",
]

from torus_pmra.serializers.csv import CsvSerializer
from torus_pmra.serializers.interfaces import Serializer
from torus_pmra.serializers.json import JsonSerializer, canonical_dumps
from torus_pmra.serializers.registry import SerializerRegistry, default_settings
