import logging
from dataclasses import dataclass
from typing import List, Optional, Tuple

from torus_pmra.exceptions import (
    DimensionMismatch,
    UnsupportedDilation,
    UnsupportedTwistPattern,
    ValidationError,
)
from torus_pmra.ktheory.classes import KClass, ModuleDescriptor, class_of_module
from torus_pmra.lattice import matrices
from torus_pmra.lattice.dilation import DilationForm, DilationSpec

logger = logging.getLogger(__name__)

# Cancellation in K_0(C(T^n)) is only known up to this dimension
CANCELLATION_MAX_DIMENSION = 4


def _untwisted_conjugator(m: ModuleDescriptor) -> ModuleDescriptor:
    # On T^2 every X_B(q, a) has the class of X(q, det(B) a)
    if m.conjugator is None or m.n != 2:
        return m
    return ModuleDescriptor(q=m.q, twists=(matrices.det(m.conjugator) * m.twists[0],))


def _check_supported(spec: DilationSpec, m: ModuleDescriptor) -> None:
    if spec.n != m.n:
        raise DimensionMismatch(
            f"Dilation acts on n = {spec.n}, module lives on n = {m.n}"
        )
    if spec.form is DilationForm.GENERAL:
        raise UnsupportedDilation(
            "Module pushforwards need a diagonal or conjugated-diagonal dilation"
        )
    if len(m.nonzero_twists()) > 1:
        raise UnsupportedTwistPattern(
            f"{m} carries more than one nonzero twist; form its class with wedge"
        )


def dilate_class(spec: DilationSpec, m: ModuleDescriptor) -> ModuleDescriptor:
    """
    The descriptor of D(V) for V = m under the dilation A.

    A diagonal A sends a single twist a_j to
    prod_{k != j, n} |d_k| * sign(d_j d_n) * a_j and the rank q to |det A| q. On
    T^2 a conjugated A sends X(q, a) to X(|det M| q, sign(det M) a).

    Args:
        spec: diagonal, or conjugated with n = 2 (any n for untwisted modules).
        m: descriptor with at most one nonzero twist.

    Returns:
        The descriptor of the dilated module.
    """
    _check_supported(spec, m)
    if spec.n == 2:
        m = _untwisted_conjugator(m)
    q = spec.absdet * m.q
    twisted = m.nonzero_twists()

    if not twisted:
        return ModuleDescriptor(q=q, twists=m.twists, conjugator=m.conjugator)

    if spec.form is DilationForm.CONJUGATED:
        if spec.n != 2:
            raise UnsupportedDilation(
                "Conjugated dilations move twisted modules only on T^2"
            )
        return ModuleDescriptor(q=q, twists=(spec.det_sign * m.twists[0],))

    if m.conjugator is not None and not spec.is_scalar:
        raise UnsupportedTwistPattern(
            "Only scalar dilations commute with the module conjugator"
        )

    factors = spec.diagonal
    assert factors is not None
    n = spec.n
    (j, a), = twisted
    scale = 1
    for k in range(1, n):
        if k != j:
            scale *= abs(factors[k - 1])
    sign = 1 if factors[j - 1] * factors[n - 1] > 0 else -1
    twists = list(m.twists)
    twists[j - 1] = scale * sign * a
    return ModuleDescriptor(q=q, twists=tuple(twists), conjugator=m.conjugator)


def pmra_level_class(
    spec: DilationSpec, m: ModuleDescriptor, level: int
) -> ModuleDescriptor:
    """V_i by applying dilate_class i times to V_0 = m."""
    if level < 0:
        raise ValidationError(f"Level must be non-negative, got {level}")
    current = m
    for _ in range(level):
        current = dilate_class(spec, current)
    return current


@dataclass(frozen=True)
class WaveletClass:
    """
    W_i as the formal K_0 difference class(V_{i+1}) - class(V_i).

    `descriptor` is filled in when cancellation holds in this dimension and the
    difference is itself X_B(q, a) with q >= 1.
    """

    level: int
    k_class: KClass
    cancellation_valid: bool
    descriptor: Optional[ModuleDescriptor] = None


def _difference_descriptor(
    upper: ModuleDescriptor, lower: ModuleDescriptor
) -> Optional[ModuleDescriptor]:
    if upper.conjugator != lower.conjugator or upper.q <= lower.q:
        return None
    return ModuleDescriptor(
        q=upper.q - lower.q,
        twists=tuple(a - b for a, b in zip(upper.twists, lower.twists)),
        conjugator=upper.conjugator,
    )


def _wavelet_between(
    spec: DilationSpec, lower: ModuleDescriptor, upper: ModuleDescriptor, level: int
) -> WaveletClass:
    valid = spec.n <= CANCELLATION_MAX_DIMENSION
    return WaveletClass(
        level=level,
        k_class=class_of_module(upper) - class_of_module(lower),
        cancellation_valid=valid,
        descriptor=_difference_descriptor(upper, lower) if valid else None,
    )


def wavelet_class(spec: DilationSpec, m: ModuleDescriptor, level: int) -> WaveletClass:
    lower = pmra_level_class(spec, m, level)
    if spec.n > CANCELLATION_MAX_DIMENSION:
        logger.warning(
            "Cancellation is not known for n = %d; W_%d is a formal K_0 difference",
            spec.n,
            level,
        )
    return _wavelet_between(spec, lower, dilate_class(spec, lower), level)


@dataclass(frozen=True)
class LevelEntry:
    level: int
    module: ModuleDescriptor
    k_class: KClass
    wavelet: WaveletClass


@dataclass(frozen=True)
class LevelReport:
    spec: DilationSpec
    base: ModuleDescriptor
    levels: Tuple[LevelEntry, ...]

    @property
    def cancellation_valid(self) -> bool:
        return self.spec.n <= CANCELLATION_MAX_DIMENSION


def level_report(spec: DilationSpec, m: ModuleDescriptor, depth: int) -> LevelReport:
    """V_i, class(V_i) and W_i for i = 0..depth."""
    if depth < 0:
        raise ValidationError(f"Depth must be non-negative, got {depth}")
    entries: List[LevelEntry] = []
    current = m
    for i in range(depth + 1):
        upper = dilate_class(spec, current)
        entries.append(
            LevelEntry(
                level=i,
                module=current,
                k_class=class_of_module(current),
                wavelet=_wavelet_between(spec, current, upper, i),
            )
        )
        current = upper
    logger.info("Computed K_0 level report for %s up to depth %d", m, depth)
    return LevelReport(spec=spec, base=m, levels=tuple(entries))
