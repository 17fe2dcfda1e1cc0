import csv
import io
from typing import Any, List, Optional, Sequence, Union

import numpy as np

from torus_pmra.analysis.grid import GridSamples, LatticeSumResult
from torus_pmra.exceptions import SerializationError
from torus_pmra.lattice.cosets import CosetTable
from torus_pmra.serializers.interfaces import Serializer
from torus_pmra.serializers.json import format_float

Tabular = Union[CosetTable, GridSamples, LatticeSumResult]


def _header(prefix: str, n: int) -> List[str]:
    return [f"{prefix}{i + 1}" for i in range(n)]


class CsvSerializer(Serializer[Any]):
    """
    Tables as CSV: coset representatives as `index,v1..vn` rows and sampled
    sections as `x1..xn,re,im` rows.
    """

    @staticmethod
    def extension() -> str:
        return ".csv"

    def manifest(self, data: Tabular) -> Optional[str]:
        if isinstance(data, CosetTable):
            return "coset_table"
        if isinstance(data, (GridSamples, LatticeSumResult)):
            return "grid_samples"
        return None

    def serialize(self, data: Tabular) -> str:
        buffer = io.StringIO()
        writer = csv.writer(buffer, lineterminator="\n")
        if isinstance(data, CosetTable):
            writer.writerow(["index"] + _header("v", data.spec.n))
            for i, rep in enumerate(data.reps):
                writer.writerow([i] + list(rep))
        elif isinstance(data, (GridSamples, LatticeSumResult)):
            samples = data.samples if isinstance(data, LatticeSumResult) else data
            writer.writerow(_header("x", samples.n) + ["re", "im"])
            for row in samples.rows():
                writer.writerow([format_float(x) for x in row])
        else:
            raise SerializationError(f"No CSV layout for {type(data).__name__}")
        return buffer.getvalue()

    def deserialize(self, data: str, manifest: Optional[str] = None) -> Any:
        rows = list(csv.reader(io.StringIO(data)))
        if not rows:
            raise SerializationError("Empty CSV document")
        header, body = rows[0], rows[1:]
        try:
            if manifest == "coset_table" or header[:1] == ["index"]:
                return tuple(tuple(int(v) for v in row[1:]) for row in body)
            return _samples(header, body)
        except (ValueError, IndexError) as e:
            raise SerializationError(f"Malformed CSV table: {e}") from e


def _samples(header: Sequence[str], body: Sequence[Sequence[str]]) -> GridSamples:
    if header[-2:] != ["re", "im"]:
        raise SerializationError(f"Unexpected CSV header {list(header)}")
    n = len(header) - 2
    table = np.array([[float(v) for v in row] for row in body], dtype=float)
    table = table.reshape(-1, n + 2)
    return GridSamples(points=table[:, :n], values=table[:, n] + 1j * table[:, n + 1])
