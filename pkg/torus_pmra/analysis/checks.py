"""
Numerical checks of the conditions a scaling section must satisfy: membership in
the module, the refinement equation, unit norm over the rank lattice, and the
cascade limit.
"""
import logging
import math
from typing import Optional, Tuple

import numpy as np

from torus_pmra.analysis.decay import is_summable, lattice_tail
from torus_pmra.analysis.evaluator import evaluate
from torus_pmra.analysis.grid import TorusGrid
from torus_pmra.analysis.inner import SAMPLE_WIDTH, effective_radius, periodize
from torus_pmra.analysis.sections import ClosedFormHaar, Section, TruncatedProduct
from torus_pmra.exceptions import DimensionMismatch, NonSummableDecay, ValidationError
from torus_pmra.filters.bank import haar_filter_bank
from torus_pmra.filters.trigpoly import MultiTrigPoly
from torus_pmra.lattice import matrices
from torus_pmra.lattice.dilation import DilationSpec, diagonal_dilation
from torus_pmra.reports import (
    RefinementReport,
    ScalingFunctionReport,
    UnitNormReport,
    XiMembershipReport,
)

logger = logging.getLogger(__name__)


def _outcome(passed: bool) -> str:
    return "pass" if passed else "fail"


def xi_membership(
    section: Section,
    grid: TorusGrid,
    radius: int,
    tol: float,
    workers: Optional[int] = None,
) -> XiMembershipReport:
    """
    Truncated sums of |s(x - p)|^2 over the grid. Uniform convergence is certified
    by the tail bound alone: pass iff it is below tol. Never raises for sections
    that decay too slowly; they fail with an infinite bound.
    """
    model = section.decay.squared()
    tail = lattice_tail(model, section.n, radius, SAMPLE_WIDTH)
    sums = periodize(
        lambda y: np.abs(evaluate(section, y)) ** 2,
        grid.points,
        effective_radius(model, radius),
        workers=workers,
    ).real
    passed = bool(tail < tol)
    logger.info(
        "Xi membership: sums in [%.6g, %.6g], tail bound %.3e -> %s",
        float(np.min(sums)),
        float(np.max(sums)),
        tail,
        _outcome(passed),
    )
    return XiMembershipReport(
        n=section.n,
        grid=grid.resolution,
        radius=radius,
        sup_sum=float(np.max(sums)),
        min_sum=float(np.min(sums)),
        tail_bound=tail,
        tol=tol,
        passed=passed,
    )


def check_refinement(
    gamma: Section,
    mask: Section,
    spec: DilationSpec,
    grid: TorusGrid,
    tol: float,
    window: Optional[Tuple[float, float]] = None,
) -> RefinementReport:
    """
    max |gamma(A x) - mask(x) gamma(x) / sqrt|det A|| over the grid points, mapped
    onto `window` when one is given.
    """
    if not gamma.n == mask.n == spec.n == grid.n:
        raise DimensionMismatch(
            f"Refinement check mixes n = {gamma.n}, {mask.n}, {spec.n}, {grid.n}"
        )
    x = grid.points if window is None else grid.window(*window)
    forward = matrices.to_float_array(spec.entries)
    lhs = evaluate(gamma, x @ forward.T)
    rhs = evaluate(mask, x) * evaluate(gamma, x) / math.sqrt(spec.absdet)
    max_error = float(np.max(np.abs(lhs - rhs)))
    passed = max_error <= tol
    logger.info("Refinement error %.3e -> %s", max_error, _outcome(passed))
    return RefinementReport(
        n=gamma.n, grid=grid.resolution, max_error=max_error, tol=tol, passed=passed
    )


def check_unit_lattice_norm(
    gamma: Section,
    q: int,
    grid: TorusGrid,
    radius: int,
    tol: float,
    workers: Optional[int] = None,
) -> UnitNormReport:
    """
    sum over (m, k) in Z^(n-1) x Z of |gamma(s - m, t - k q)|^2 for (s, t) in
    [0, 1)^(n-1) x [0, q); pass iff the worst deviation from 1 is within
    tol plus the tail bound.
    """
    if q < 1:
        raise ValidationError(f"Quasi-period must be positive, got {q}")
    if grid.n != gamma.n:
        raise DimensionMismatch(f"Grid on n = {grid.n} for a section on n = {gamma.n}")
    n = gamma.n
    model = gamma.decay.squared()
    if not is_summable(model, n):
        raise NonSummableDecay(
            f"|gamma|^2 with exponent {model.exponent} is not summable on n = {n}"
        )
    scale = [1.0] * (n - 1) + [float(q)]
    points = grid.points * np.asarray(scale)
    sums = periodize(
        lambda y: np.abs(evaluate(gamma, y)) ** 2,
        points,
        effective_radius(model, radius),
        scale=scale,
        workers=workers,
    ).real
    # samples span [0, q) on the last axis
    tail = lattice_tail(model, n, radius, float(q))
    max_deviation = float(np.max(np.abs(sums - 1.0)))
    passed = max_deviation <= tol + tail
    logger.info(
        "Unit lattice norm q=%d: deviation %.3e, tail %.3e -> %s",
        q,
        max_deviation,
        tail,
        _outcome(passed),
    )
    return UnitNormReport(
        n=n,
        q=q,
        grid=grid.resolution,
        radius=radius,
        max_deviation=max_deviation,
        tail_bound=tail,
        tol=tol,
        passed=passed,
    )


def haar_cascade(d: int, depth: int) -> TruncatedProduct:
    """The depth-J cascade product of the Haar lowpass filter for dilation by d."""
    bank = haar_filter_bank(d)
    return TruncatedProduct(
        mask=MultiTrigPoly.tensor([bank.lowpass]),
        depth=depth,
        spec=diagonal_dilation(d),
    )


def compare_scaling_function(
    d: int,
    depth: int,
    points: int = 1024,
    window: Tuple[float, float] = (-8.0, 8.0),
    tol: float = 1e-6,
) -> ScalingFunctionReport:
    """Cascade product of depth J against the closed-form Haar scaling section."""
    if points < 2:
        raise ValidationError(f"Need at least 2 sample points, got {points}")
    x = np.linspace(window[0], window[1], points)
    cascade = evaluate(haar_cascade(d, depth), x)
    closed = evaluate(ClosedFormHaar(d), x)
    max_error = float(np.max(np.abs(cascade - closed)))
    passed = max_error < tol
    logger.info(
        "Scaling function d=%d J=%d: max error %.3e -> %s",
        d,
        depth,
        max_error,
        _outcome(passed),
    )
    return ScalingFunctionReport(
        d=d,
        depth=depth,
        points=points,
        window=(float(window[0]), float(window[1])),
        max_error=max_error,
        tol=tol,
        passed=passed,
    )
