"""
Numerical certification of frames: the reconstruction identity on test sections,
the Gram identities that make W_i free, and the density surrogate.
"""
import logging
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

import numpy as np

from torus_pmra.analysis.evaluator import evaluate
from torus_pmra.analysis.grid import TorusGrid
from torus_pmra.analysis.inner import inner_at
from torus_pmra.analysis.operators import dilate
from torus_pmra.analysis.sections import Product, Section, Sum, TrigPolynomial
from torus_pmra.exceptions import DimensionMismatch
from torus_pmra.filters.trigpoly import MultiTrigPoly, e
from torus_pmra.frames.frame import FrameElement, FrameSet
from torus_pmra.infrastructure import run_chunks
from torus_pmra.lattice import matrices
from torus_pmra.lattice.cosets import coset_table
from torus_pmra.lattice.dilation import DilationSpec
from torus_pmra.reports import (
    DensityReport,
    FrameReport,
    FreeRankReport,
    GramReport,
    ReconstructionReport,
)

logger = logging.getLogger(__name__)

# residual growth tolerated between consecutive density levels
MONOTONE_SLACK = 1e-12

Window = Optional[Tuple[float, float]]


def _outcome(passed: bool) -> str:
    return "pass" if passed else "fail"


def character_sum(spec: DilationSpec, level: int, u: Sequence[int]) -> complex:
    """
    d^-level sum over gamma in Z^n / (A^t)^level Z^n of e(-u . (A^t)^-level gamma).

    This is 1 when u lies in A^level Z^n and 0 otherwise; phases are reduced
    exactly before evaluation.
    """
    backward = spec.frequency_map(level)
    reps = coset_table(spec.transposed(), level).reps
    total = 0j
    for gamma in reps:
        phase = sum(
            (Fraction(a) * x for a, x in zip(u, matrices.matvec(backward, gamma))),
            Fraction(0),
        )
        total += complex(e(-float(phase % 1)))
    return total / spec.absdet ** level


def expected_gram(fs: FrameSet, level: int) -> np.ndarray:
    """
    <D^i e_{v_l} Psi_k, D^i e_{v_m} Psi_j> for orthonormal generators: the constant
    delta_kj times the character sum of v_l - v_m.
    """
    elements = fs.level_elements(level)
    reps = fs.tables[level].reps
    characters = {}
    expected = np.zeros((len(elements), len(elements)), dtype=complex)
    for a, left in enumerate(elements):
        for b, right in enumerate(elements):
            if left.generator != right.generator:
                continue
            u = tuple(x - y for x, y in zip(reps[left.coset], reps[right.coset]))
            if u not in characters:
                characters[u] = character_sum(fs.spec, level, u)
            expected[a, b] = characters[u]
    return expected


def _sample_points(grid: TorusGrid, window: Window) -> np.ndarray:
    return grid.points if window is None else grid.window(*window)


def _project(
    elements: Sequence[FrameElement],
    zeta: Section,
    points: np.ndarray,
    radius: int,
    workers: Optional[int],
) -> Tuple[np.ndarray, float]:
    """sum_e e(x) <e, zeta>(x) and the accumulated tail bound."""
    approx = np.zeros(points.shape[0], dtype=complex)
    tail = 0.0
    for element in elements:
        coefficient = inner_at(element.section, zeta, points, radius, workers)
        approx += evaluate(element.section, points) * coefficient.values
        tail += element.section.decay.sup * coefficient.tail_bound
    return approx, tail


def verify_reconstruction(
    fs: FrameSet,
    zeta: Section,
    level: int,
    grid: TorusGrid,
    radius: int,
    tol: float,
    window: Window = None,
    include_scaling: bool = False,
    workers: Optional[int] = None,
) -> ReconstructionReport:
    """
    max |zeta(x) - sum_e e(x) <e, zeta>(x)| over the level-`level` wavelet elements
    (plus the scaling elements when asked).

    Args:
        fs: the frame
        zeta: a section claimed to lie in W_level
        level: which wavelet level to reconstruct from
        grid: sample grid; mapped onto `window` when one is given
        radius: truncation radius of every inner product
        tol: allowed residual on top of the accumulated tail bounds
        window: (lo, hi) sample window, [0, 1)^n by default
        include_scaling: also project onto V_0
        workers: threads for the lattice sums

    Returns:
        A ReconstructionReport.
    """
    if zeta.n != fs.spec.n or grid.n != fs.spec.n:
        raise DimensionMismatch(
            f"Frame on n = {fs.spec.n}, section on n = {zeta.n}, grid on n = {grid.n}"
        )
    elements = fs.level_elements(level)
    if include_scaling:
        elements = fs.scaling_elements() + elements
    points = _sample_points(grid, window)
    approx, tail = _project(elements, zeta, points, radius, workers)
    residual = float(np.max(np.abs(evaluate(zeta, points) - approx)))
    passed = residual <= tol + tail
    logger.info(
        "Reconstruction at level %d from %d elements: residual %.3e, tail %.3e -> %s",
        level,
        len(elements),
        residual,
        tail,
        _outcome(passed),
    )
    return ReconstructionReport(
        level=level,
        include_scaling=include_scaling,
        element_count=len(elements),
        grid=grid.resolution,
        radius=radius,
        residual=residual,
        tail_bound=tail,
        tol=tol,
        passed=passed,
    )


def gram_report(
    fs: FrameSet,
    level: int,
    grid: TorusGrid,
    radius: int,
    tol: float,
    workers: Optional[int] = None,
) -> GramReport:
    """
    sup over the grid of |<e_a, e_b> - expected_ab| for every pair of level
    elements; the pairs are spread over the workers.
    """
    elements = fs.level_elements(level)
    expected = expected_gram(fs, level)
    pairs = [
        (a, b) for a in range(len(elements)) for b in range(a, len(elements))
    ]
    points = grid.points

    def _pair(pair: Tuple[int, int]) -> Tuple[float, float]:
        a, b = pair
        result = inner_at(
            elements[a].section, elements[b].section, points, radius, workers=1
        )
        return result.samples.deviation_from(expected[a, b]), result.tail_bound

    outcomes = run_chunks(_pair, pairs, workers)
    deviations = np.zeros((len(elements), len(elements)))
    tail = 0.0
    for (a, b), (deviation, pair_tail) in zip(pairs, outcomes):
        deviations[a, b] = deviations[b, a] = deviation
        tail = max(tail, pair_tail)
    max_deviation = float(np.max(deviations)) if deviations.size else 0.0
    passed = max_deviation <= tol + tail
    logger.info(
        "Gram identities at level %d over %d elements: max deviation %.3e -> %s",
        level,
        len(elements),
        max_deviation,
        _outcome(passed),
    )
    return GramReport(
        level=level,
        element_count=len(elements),
        grid=grid.resolution,
        radius=radius,
        deviations=tuple(tuple(float(x) for x in row) for row in deviations),
        max_deviation=max_deviation,
        tail_bound=tail,
        tol=tol,
        passed=passed,
    )


def certify_free_rank(
    fs: FrameSet,
    level: int,
    grid: TorusGrid,
    radius: int,
    tol: float,
    workers: Optional[int] = None,
) -> FreeRankReport:
    """W_level is free of rank r d^level when its elements are orthonormal."""
    claimed = fs.level_count(level)
    gram = gram_report(fs, level, grid, radius, tol, workers)
    passed = gram.passed and gram.element_count == claimed
    return FreeRankReport(
        level=level,
        claimed_rank=claimed,
        element_count=gram.element_count,
        gram=gram,
        passed=passed,
    )


def _random_polynomial(rng: np.random.Generator, n: int, terms: int) -> MultiTrigPoly:
    frequencies = rng.integers(-1, 2, size=(terms, n))
    coefficients = rng.normal(size=terms) + 1j * rng.normal(size=terms)
    return MultiTrigPoly(
        n,
        tuple(
            (tuple(int(k) for k in freq), complex(c) / terms)
            for freq, c in zip(frequencies, coefficients)
        ),
    )


def sample_corpus(
    fs: FrameSet, level: int, seed: int, count: int = 2
) -> Tuple[Section, ...]:
    """
    Sections of W_level: D^level of every wavelet generator, one randomly chosen
    frame element per generator, and `count` random C(T^n)-combinations
    D^level(sum_k Psi_k g_k) with trigonometric polynomials g_k.
    """
    rng = np.random.default_rng(seed)
    elements = fs.level_elements(level)
    generators = [element.section for element in fs.level_elements(0)]
    corpus: List[Section] = [dilate(fs.spec, psi, level) for psi in generators]
    for k in range(fs.wavelet_count):
        candidates = [el for el in elements if el.generator == k]
        corpus.append(candidates[int(rng.integers(len(candidates)))].section)
    for _ in range(count):
        combination = Sum(
            tuple(
                Product((psi, TrigPolynomial(_random_polynomial(rng, psi.n, 3))))
                for psi in generators
            )
        )
        corpus.append(dilate(fs.spec, combination, level))
    return tuple(corpus)


def verify_frame(
    fs: FrameSet,
    level: int,
    grid: TorusGrid,
    radius: int,
    tol: float,
    seed: int,
    count: int = 2,
    workers: Optional[int] = None,
) -> FrameReport:
    """The reconstruction identity at one level over the seeded test corpus."""
    reconstructions = tuple(
        verify_reconstruction(fs, zeta, level, grid, radius, tol, workers=workers)
        for zeta in sample_corpus(fs, level, seed, count)
    )
    max_residual = max(r.residual for r in reconstructions)
    return FrameReport(
        level=level,
        corpus_size=len(reconstructions),
        max_residual=max_residual,
        reconstructions=reconstructions,
        passed=all(r.passed for r in reconstructions),
    )


def density_profile(
    fs: FrameSet,
    zeta: Section,
    grid: TorusGrid,
    radius: int,
    window: Window = None,
    workers: Optional[int] = None,
) -> DensityReport:
    """
    Residual of zeta against the scaling elements plus wavelet levels 0..i, for
    each i up to the frame depth. A dense union of the V_i shows up as residuals
    that never grow and end below where they started.
    """
    if zeta.n != fs.spec.n:
        raise DimensionMismatch(f"Frame on n = {fs.spec.n}, section on n = {zeta.n}")
    points = _sample_points(grid, window)
    target = evaluate(zeta, points)
    approx, _ = _project(fs.scaling_elements(), zeta, points, radius, workers)
    residuals = []
    for level in range(fs.depth + 1):
        part, _ = _project(fs.level_elements(level), zeta, points, radius, workers)
        approx = approx + part
        residuals.append(float(np.max(np.abs(target - approx))))
    monotone = all(
        later <= earlier + MONOTONE_SLACK
        for earlier, later in zip(residuals, residuals[1:])
    )
    passed = monotone and (len(residuals) == 1 or residuals[-1] < residuals[0])
    logger.info("Density residuals %s -> %s", residuals, _outcome(passed))
    return DensityReport(residuals=tuple(residuals), monotone=monotone, passed=passed)
