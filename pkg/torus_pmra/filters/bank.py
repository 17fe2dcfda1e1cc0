import itertools
import logging
import math
from dataclasses import dataclass
from typing import Sequence, Tuple, Union

import numpy as np

from torus_pmra.exceptions import InvalidGrid, NotExpanding, NotOrthonormal
from torus_pmra.filters.trigpoly import MultiTrigPoly, TrigPoly
from torus_pmra.reports import FilterBankReport, TensorFilterReport

logger = logging.getLogger(__name__)

ORTHONORMALITY_TOL = 1e-12

Completion = Union[None, str, Sequence[Sequence[complex]], np.ndarray]


@dataclass(frozen=True)
class FilterBank:
    """
    Filters m_0..m_{|d|-1} of period 1, built from the rows of a unitary matrix
    whose first row is constant.
    """

    d: int
    filters: Tuple[TrigPoly, ...]
    source: Tuple[Tuple[complex, ...], ...]

    @property
    def size(self) -> int:
        return abs(self.d)

    @property
    def lowpass(self) -> TrigPoly:
        return self.filters[0]

    def source_matrix(self) -> np.ndarray:
        return np.array(self.source, dtype=complex)


def gram_schmidt_completion(d: int) -> np.ndarray:
    """
    Real orthogonal rows starting at (1/sqrt d, .., 1/sqrt d), completed from the
    standard basis in index order.
    """
    rows = [np.full(d, 1.0 / math.sqrt(d))]
    for k in range(d):
        if len(rows) == d:
            break
        v = np.zeros(d)
        v[k] = 1.0
        for _ in range(2):
            for r in rows:
                v = v - np.dot(r, v) * r
        norm = np.linalg.norm(v)
        if norm > 1e-8:
            rows.append(v / norm)
    return np.array(rows)


def dft_completion(d: int) -> np.ndarray:
    """The unitary DFT matrix, row l = (e(-l j / d) / sqrt d)_j."""
    return np.fft.fft(np.eye(d)) / math.sqrt(d)


def _completion_rows(size: int, completion: Completion) -> np.ndarray:
    if completion is None:
        return gram_schmidt_completion(size).astype(complex)
    if isinstance(completion, str):
        if completion == "gram_schmidt":
            return gram_schmidt_completion(size).astype(complex)
        if completion == "dft":
            return dft_completion(size)
        raise NotOrthonormal(f"Unknown completion {completion!r}")
    rows = np.asarray(completion, dtype=complex)
    if rows.shape != (size, size):
        raise NotOrthonormal(f"Completion must be {size}x{size}, got {rows.shape}")
    return rows


def _check_orthonormal(rows: np.ndarray) -> None:
    size = rows.shape[0]
    first_error = np.max(np.abs(rows[0] - 1.0 / math.sqrt(size)))
    if first_error > ORTHONORMALITY_TOL:
        raise NotOrthonormal(
            f"First row must be constant 1/sqrt({size}); off by {first_error:.3e}"
        )
    gram_error = np.max(np.abs(rows @ rows.conj().T - np.eye(size)))
    if gram_error > ORTHONORMALITY_TOL:
        raise NotOrthonormal(f"Completion rows are not orthonormal ({gram_error:.3e})")


def haar_filter_bank(d: int, completion: Completion = None) -> FilterBank:
    """
    The Haar-type filter bank for dilation by d.

    With rows r_l = (a_{l,0}, .., a_{l,|d|-1}) of the completion,
    mu_l(x) = sum_j a_{l,j} e(j x / d) and m_l(x) = mu_l(d x).

    Args:
        d: the signed dilation factor, |d| > 1.
        completion: None or "gram_schmidt", "dft", or explicit unitary rows whose
            first row is constant.

    Returns:
        The FilterBank.
    """
    if isinstance(d, bool) or not isinstance(d, int) or abs(d) <= 1:
        raise NotExpanding(f"Filter banks need an integer |d| > 1, got {d!r}")
    size = abs(d)
    rows = _completion_rows(size, completion)
    _check_orthonormal(rows)

    sign = 1 if d > 0 else -1
    mus = [
        TrigPoly(size, tuple((sign * j, complex(a)) for j, a in enumerate(row)))
        for row in rows
    ]
    filters = tuple(mu.dilate(d) for mu in mus)
    return FilterBank(
        d=d,
        filters=filters,
        source=tuple(tuple(complex(a) for a in row) for row in rows),
    )


def translate_gram(fb: FilterBank, grid: int) -> np.ndarray:
    """
    G[x, l, k] = sum_{p < |d|} conj(m_l(x - p/|d|)) m_k(x - p/|d|) at x = 0, 1/grid, ..
    """
    x = np.arange(grid) / grid
    gram = np.zeros((fb.size, fb.size, grid), dtype=complex)
    for p in range(fb.size):
        values = np.array([m(x - p / fb.size) for m in fb.filters])
        gram += values.conj()[:, None, :] * values[None, :, :]
    return np.moveaxis(gram, -1, 0)


def verify_filter_bank(
    fb: FilterBank, grid_points: int, tol: float
) -> FilterBankReport:
    """
    Checks m_0(0) = sqrt|d|, the translate Gram identity |d| delta_{lk} and that
    m_0 has no zero on [-1/(2|d|), 1/(2|d|)].
    """
    if grid_points < 2 * fb.size:
        raise InvalidGrid(f"Need at least {2 * fb.size} grid points, got {grid_points}")
    m0_origin_error = float(abs(fb.lowpass(np.array(0.0)) - math.sqrt(fb.size)))
    gram = translate_gram(fb, grid_points)
    gram_error = float(np.max(np.abs(gram - fb.size * np.eye(fb.size))))
    half_width = 1.0 / (2 * fb.size)
    cohen = np.linspace(-half_width, half_width, grid_points)
    cohen_min = float(np.min(np.abs(fb.lowpass(cohen))))

    passed = m0_origin_error < tol and gram_error < tol and cohen_min > tol
    logger.info(
        "Filter bank d=%d: m0(0) error %.3e, Gram error %.3e, Cohen min %.3e -> %s",
        fb.d,
        m0_origin_error,
        gram_error,
        cohen_min,
        "pass" if passed else "fail",
    )
    return FilterBankReport(
        d=fb.d,
        grid_points=grid_points,
        tol=tol,
        m0_origin_error=m0_origin_error,
        gram_error=gram_error,
        cohen_min=cohen_min,
        passed=passed,
    )


def tensor_filter(banks: Sequence[FilterBank]) -> MultiTrigPoly:
    """m'(s_1, .., s_k) = prod_j m_0^(j)(s_j)."""
    return MultiTrigPoly.tensor([bank.lowpass for bank in banks])


def _grid_points(k: int, resolution: int) -> np.ndarray:
    axis = np.arange(resolution) / resolution
    mesh = np.meshgrid(*([axis] * k), indexing="ij")
    return np.stack([m.ravel() for m in mesh], axis=-1)


def verify_tensor_filter(
    m_prime: MultiTrigPoly,
    banks: Sequence[FilterBank],
    grid_points: int,
    tol: float,
) -> TensorFilterReport:
    """
    Checks m'(0) = sqrt(prod |d_j|) and
    sum over p in prod Z/|d_j| of |m'(s - p/|d|)|^2 = prod |d_j| on a grid.
    """
    sizes = [b.size for b in banks]
    total = int(np.prod(sizes))
    origin = m_prime(np.zeros((1, m_prime.n)))[0]
    origin_error = float(abs(origin - math.sqrt(total)))

    points = _grid_points(m_prime.n, grid_points)
    sums = np.zeros(points.shape[0])
    for p in itertools.product(*(range(s) for s in sizes)):
        shift = np.array(p, dtype=float) / np.array(sizes, dtype=float)
        sums += np.abs(m_prime(points - shift)) ** 2
    translate_sum_error = float(np.max(np.abs(sums - total)))

    passed = origin_error < tol and translate_sum_error < tol
    logger.info(
        "Tensor filter %s: origin error %.3e, translate sum error %.3e",
        sizes,
        origin_error,
        translate_sum_error,
    )
    return TensorFilterReport(
        factors=tuple(b.d for b in banks),
        grid_points=grid_points,
        tol=tol,
        origin_error=origin_error,
        translate_sum_error=translate_sum_error,
        passed=passed,
    )
