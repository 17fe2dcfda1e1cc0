"""
Verification reports. A failed check is data, never an exception: every report
carries its measured errors, the tail bounds they are judged against and `passed`.
"""
from dataclasses import dataclass
from typing import ClassVar, Tuple

REPORT_SCHEMA_VERSION = 1


@dataclass(frozen=True)
class FilterBankReport:
    kind: ClassVar[str] = "filter_bank"

    d: int
    grid_points: int
    tol: float
    m0_origin_error: float
    gram_error: float
    cohen_min: float
    passed: bool


@dataclass(frozen=True)
class TensorFilterReport:
    kind: ClassVar[str] = "tensor_filter"

    factors: Tuple[int, ...]
    grid_points: int
    tol: float
    origin_error: float
    translate_sum_error: float
    passed: bool


@dataclass(frozen=True)
class ScalingFunctionReport:
    kind: ClassVar[str] = "scaling_function"

    d: int
    depth: int
    points: int
    window: Tuple[float, float]
    max_error: float
    tol: float
    passed: bool


@dataclass(frozen=True)
class XiMembershipReport:
    kind: ClassVar[str] = "xi_membership"

    n: int
    grid: int
    radius: int
    sup_sum: float
    min_sum: float
    tail_bound: float
    tol: float
    passed: bool


@dataclass(frozen=True)
class RefinementReport:
    kind: ClassVar[str] = "refinement"

    n: int
    grid: int
    max_error: float
    tol: float
    passed: bool


@dataclass(frozen=True)
class UnitNormReport:
    kind: ClassVar[str] = "unit_lattice_norm"

    n: int
    q: int
    grid: int
    radius: int
    max_deviation: float
    tail_bound: float
    tol: float
    passed: bool


@dataclass(frozen=True)
class ReconstructionReport:
    kind: ClassVar[str] = "reconstruction"

    level: int
    include_scaling: bool
    element_count: int
    grid: int
    radius: int
    residual: float
    tail_bound: float
    tol: float
    passed: bool


@dataclass(frozen=True)
class FrameReport:
    kind: ClassVar[str] = "frame"

    level: int
    corpus_size: int
    max_residual: float
    reconstructions: Tuple[ReconstructionReport, ...]
    passed: bool


@dataclass(frozen=True)
class GramReport:
    kind: ClassVar[str] = "gram"

    level: int
    element_count: int
    grid: int
    radius: int
    deviations: Tuple[Tuple[float, ...], ...]
    max_deviation: float
    tail_bound: float
    tol: float
    passed: bool


@dataclass(frozen=True)
class FreeRankReport:
    kind: ClassVar[str] = "free_rank"

    level: int
    claimed_rank: int
    element_count: int
    gram: GramReport
    passed: bool


@dataclass(frozen=True)
class DensityReport:
    kind: ClassVar[str] = "density"

    residuals: Tuple[float, ...]
    monotone: bool
    passed: bool
