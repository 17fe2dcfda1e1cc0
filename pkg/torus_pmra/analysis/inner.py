"""
The C(T^n)-valued inner product <f, g>(t) = sum_p conj(f)(t - p) g(t - p) as a
truncated lattice sum with an analytic bound on the dropped terms.
"""
import logging
import math
from functools import reduce
from typing import Callable, Optional, Sequence

import numpy as np

from torus_pmra.analysis.decay import DecayModel, is_summable, lattice_tail
from torus_pmra.analysis.evaluator import evaluate
from torus_pmra.analysis.grid import GridSamples, LatticeSumResult, TorusGrid
from torus_pmra.analysis.sections import Section
from torus_pmra.exceptions import (
    DimensionMismatch,
    NonSummableDecay,
    QuasiPeriodMismatch,
    ValidationError,
)
from torus_pmra.infrastructure import run_chunks

logger = logging.getLogger(__name__)

# evaluations per block of lattice offsets
BLOCK_POINTS = 2 ** 18

# sample points live in [0, 1)^n
SAMPLE_WIDTH = 1.0

Integrand = Callable[[np.ndarray], np.ndarray]


def lattice_offsets(
    n: int, radius: int, scale: Optional[Sequence[float]] = None
) -> np.ndarray:
    """The offsets p with |p|_inf <= radius, optionally scaled per axis."""
    if radius < 0:
        raise ValidationError(f"Radius must be non-negative, got {radius}")
    axis = np.arange(-radius, radius + 1, dtype=float)
    mesh = np.meshgrid(*([axis] * n), indexing="ij")
    offsets = np.stack([m.ravel() for m in mesh], axis=-1)
    if scale is not None:
        offsets = offsets * np.asarray(scale, dtype=float)
    return offsets


def effective_radius(model: DecayModel, radius: int) -> int:
    """Offsets beyond a compact support contribute exactly nothing."""
    if model.is_compact:
        return min(radius, math.floor(model.support + SAMPLE_WIDTH))  # type: ignore
    return radius


def periodize(
    integrand: Integrand,
    points: np.ndarray,
    radius: int,
    scale: Optional[Sequence[float]] = None,
    workers: Optional[int] = None,
) -> np.ndarray:
    """
    sum_{|p|_inf <= radius} integrand(t - p) for every row t of `points`.

    Offsets are processed in blocks, possibly on several threads; partial sums are
    added in block order so the result does not depend on the worker count.
    """
    m, n = points.shape
    offsets = lattice_offsets(n, radius, scale)
    block = max(1, BLOCK_POINTS // max(1, m))
    chunks = [offsets[i : i + block] for i in range(0, len(offsets), block)]

    def _block(chunk: np.ndarray) -> np.ndarray:
        shifted = (points[None, :, :] - chunk[:, None, :]).reshape(-1, n)
        return integrand(shifted).reshape(len(chunk), m).sum(axis=0)

    logger.debug(
        "Lattice sum over %d offsets at %d points in %d blocks",
        len(offsets),
        m,
        len(chunks),
    )
    partials = run_chunks(_block, chunks, workers)
    return reduce(np.add, partials, np.zeros(m, dtype=complex))


def _check_pair(s1: Section, s2: Section) -> None:
    if s1.n != s2.n:
        raise DimensionMismatch(f"Sections on n = {s1.n} and n = {s2.n}")


def pair_model(s1: Section, s2: Section) -> DecayModel:
    """Decay model of conj(s1) s2, raising when its lattice sum may diverge."""
    _check_pair(s1, s2)
    model = s1.decay.times(s2.decay)
    if not is_summable(model, s1.n):
        raise NonSummableDecay(
            f"Decay exponents {s1.decay.exponent} + {s2.decay.exponent} do not "
            f"make a convergent lattice sum on n = {s1.n}"
        )
    return model


def inner_at(
    s1: Section,
    s2: Section,
    points: np.ndarray,
    radius: int,
    workers: Optional[int] = None,
) -> LatticeSumResult:
    """
    <s1, s2> at arbitrary points; the sum is 1-periodic so points are reduced
    mod Z^n first.

    Args:
        s1: the conjugated section
        s2: the other section, same dimension
        points: an (m, n) array
        radius: truncation radius R of the lattice sum
        workers: threads for the offset blocks

    Returns:
        Samples at `points` with the tail bound of the dropped offsets.
    """
    model = pair_model(s1, s2)
    n = s1.n
    x = np.atleast_2d(np.asarray(points, dtype=float))
    reduced = np.mod(x, 1.0)

    def _integrand(y: np.ndarray) -> np.ndarray:
        return np.conj(evaluate(s1, y)) * evaluate(s2, y)

    values = periodize(
        _integrand, reduced, effective_radius(model, radius), workers=workers
    )
    tail = lattice_tail(model, n, radius, SAMPLE_WIDTH)
    return LatticeSumResult(
        samples=GridSamples(points=x, values=values), radius=radius, tail_bound=tail
    )


def rigged_inner_product(
    s1: Section,
    s2: Section,
    grid: TorusGrid,
    radius: int,
    workers: Optional[int] = None,
) -> LatticeSumResult:
    """<s1, s2>(t) = sum_{|p| <= R} conj(s1)(t - p) s2(t - p) on the grid."""
    _check_pair(s1, s2)
    if grid.n != s1.n:
        raise DimensionMismatch(f"Grid on n = {grid.n} for sections on n = {s1.n}")
    return inner_at(s1, s2, grid.points, radius, workers)


def module_inner_product(
    h1: Section, h2: Section, q: int, grid: TorusGrid
) -> GridSamples:
    """
    sum_{k < q} conj(h1)(s, t - k) h2(s, t - k), the inner product of two sections
    of the same quasi-periodic module X(q, a).
    """
    _check_pair(h1, h2)
    claims = (h1.quasi_period, h2.quasi_period)
    if None in claims or claims[0] != claims[1]:
        raise QuasiPeriodMismatch(
            f"Sections declare quasi-periods {claims[0]} and {claims[1]}"
        )
    declared_q = claims[0][0]  # type: ignore
    if declared_q != q:
        raise QuasiPeriodMismatch(
            f"Sections are quasi-periodic with q = {declared_q}, not {q}"
        )
    points = grid.points
    values = np.zeros(points.shape[0], dtype=complex)
    step = np.zeros(h1.n)
    step[-1] = 1.0
    for k in range(q):
        shifted = points - k * step
        values += np.conj(evaluate(h1, shifted)) * evaluate(h2, shifted)
    return GridSamples(points=points, values=values)
