from dataclasses import dataclass
from typing import Tuple

import numpy as np

from torus_pmra.exceptions import DimensionMismatch, InvalidGrid


@dataclass(frozen=True)
class TorusGrid:
    """The points (k_1/N, .., k_n/N), 0 <= k_i < N, of [0, 1)^n."""

    n: int
    resolution: int

    def __post_init__(self) -> None:
        if self.n < 1:
            raise InvalidGrid(f"Grid dimension must be positive, got {self.n}")
        if self.resolution < 2:
            raise InvalidGrid(f"Grid resolution must be >= 2, got {self.resolution}")

    @property
    def size(self) -> int:
        return self.resolution ** self.n

    @property
    def points(self) -> np.ndarray:
        axis = np.arange(self.resolution) / self.resolution
        mesh = np.meshgrid(*([axis] * self.n), indexing="ij")
        return np.stack([m.ravel() for m in mesh], axis=-1)

    def window(self, lo: float, hi: float) -> np.ndarray:
        """The grid mapped affinely onto [lo, hi)^n."""
        if hi <= lo:
            raise InvalidGrid(f"Empty window [{lo}, {hi})")
        return lo + (hi - lo) * self.points


@dataclass(frozen=True, eq=False)
class GridSamples:
    points: np.ndarray
    values: np.ndarray

    def __post_init__(self) -> None:
        if self.points.shape[0] != self.values.shape[0]:
            raise DimensionMismatch(
                f"{self.points.shape[0]} points for {self.values.shape[0]} values"
            )

    @property
    def n(self) -> int:
        return int(self.points.shape[1])

    def deviation_from(self, constant: complex) -> float:
        if not self.values.size:
            return 0.0
        return float(np.max(np.abs(self.values - constant)))

    def rows(self) -> Tuple[Tuple[float, ...], ...]:
        """(x_1, .., x_n, re, im) per sample."""
        return tuple(
            tuple(float(c) for c in p) + (float(v.real), float(v.imag))
            for p, v in zip(self.points, self.values)
        )


@dataclass(frozen=True, eq=False)
class LatticeSumResult:
    """Truncated lattice sum samples with the tail bound that bounds what was cut."""

    samples: GridSamples
    radius: int
    tail_bound: float

    @property
    def values(self) -> np.ndarray:
        return self.samples.values

    @property
    def points(self) -> np.ndarray:
        return self.samples.points
