import json
import math
from typing import Any, Optional

import numpy as np

from torus_pmra.exceptions import SerializationError
from torus_pmra.serializers import schemas
from torus_pmra.serializers.interfaces import Serializer

# significant digits; enough to round-trip any double
FLOAT_DIGITS = 17


def format_float(x: float) -> str:
    if math.isnan(x):
        return "NaN"
    if math.isinf(x):
        return "Infinity" if x > 0 else "-Infinity"
    text = format(x, f".{FLOAT_DIGITS}g")
    if "e" not in text and "." not in text and "n" not in text:
        text += ".0"
    return text


def _plain(value: Any) -> Any:
    if isinstance(value, np.generic):
        return value.item()
    if isinstance(value, np.ndarray):
        return value.tolist()
    if isinstance(value, tuple):
        return list(value)
    return value


def _encode(value: Any) -> str:
    value = _plain(value)
    if value is None or isinstance(value, (bool, str)):
        return json.dumps(value)
    if isinstance(value, int):
        return str(value)
    if isinstance(value, float):
        return format_float(value)
    if isinstance(value, dict):
        items = sorted((str(k), v) for k, v in value.items())
        return "{" + ",".join(f"{json.dumps(k)}:{_encode(v)}" for k, v in items) + "}"
    if isinstance(value, list):
        return "[" + ",".join(_encode(v) for v in value) + "]"
    raise SerializationError(f"Cannot encode {type(value).__name__} as JSON")


def canonical_dumps(data: Any) -> str:
    """
    Canonical JSON: sorted keys, no whitespace and every float with 17 significant
    digits, so equal values always produce byte-identical documents.
    """
    return _encode(data)


class JsonSerializer(Serializer[Any]):
    """
    Serializes package values through their marshmallow schemas into canonical
    json. Plain dictionaries pass straight through.
    """

    @staticmethod
    def extension() -> str:
        return ".json"

    def manifest(self, data: Any) -> Optional[str]:
        if isinstance(data, dict):
            return "json"
        return schemas.manifest_for(data)

    def deserialize(self, serialized_data: str, manifest: Optional[str] = None) -> Any:
        try:
            data = json.loads(serialized_data)
        except json.JSONDecodeError as e:
            raise SerializationError(f"Not a JSON document: {e}") from e
        if manifest is None or manifest == "json":
            return data
        return schemas.load(manifest, data)

    def serialize(self, data: Any) -> str:
        payload = data if isinstance(data, dict) else schemas.dump(data)
        return canonical_dumps(payload)
