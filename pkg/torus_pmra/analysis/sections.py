"""
Sections: immutable descriptions of functions on R^n living in the frequency domain.

Each kind knows its dimension, its decay model and, when it makes one, its
quasi-periodicity claim (q, a): f(s, t - q) = e(a . s) f(s, t). Evaluation lives in
`torus_pmra.analysis.evaluator`.
"""
import math
from abc import ABC, abstractmethod
from dataclasses import dataclass
from functools import reduce
from typing import ClassVar, Optional, Tuple

from torus_pmra.analysis.decay import DecayModel, tensor_model
from torus_pmra.exceptions import (
    DepthZero,
    DimensionMismatch,
    NotExpanding,
    ValidationError,
)
from torus_pmra.filters.trigpoly import MultiTrigPoly
from torus_pmra.lattice import matrices
from torus_pmra.lattice.dilation import DilationForm, DilationSpec

QuasiPeriod = Tuple[int, Tuple[int, ...]]

MEYER_SCALING_SUPPORT = 2 / 3
MEYER_WAVELET_SUPPORT = 4 / 3


class Section(ABC):
    kind: ClassVar[str] = "section"

    @property
    @abstractmethod
    def n(self) -> int:
        ...

    @property
    @abstractmethod
    def decay(self) -> DecayModel:
        ...

    @property
    def quasi_period(self) -> Optional[QuasiPeriod]:
        return None


def _same_dimension(sections: Tuple[Section, ...], what: str) -> int:
    if not sections:
        raise ValidationError(f"{what} needs at least one section")
    dims = {s.n for s in sections}
    if len(dims) != 1:
        raise DimensionMismatch(f"{what} mixes dimensions {sorted(dims)}")
    return dims.pop()


@dataclass(frozen=True)
class ClosedFormHaar(Section):
    """
    The Haar scaling section for dilation by d: x -> e(theta x) sin(pi x) / (pi x)
    with theta = (|d| - 1) / (2 (d - 1)).
    """

    kind: ClassVar[str] = "closed_form_haar"

    d: int

    def __post_init__(self) -> None:
        if abs(self.d) <= 1:
            raise NotExpanding(f"Haar sections need |d| > 1, got {self.d}")

    @property
    def theta(self) -> float:
        return (abs(self.d) - 1) / (2 * (self.d - 1))

    @property
    def n(self) -> int:
        return 1

    @property
    def decay(self) -> DecayModel:
        return DecayModel(sup=1.0, constant=1 / math.pi, exponent=1.0)


@dataclass(frozen=True)
class TrigPolynomial(Section):
    kind: ClassVar[str] = "trig_polynomial"

    poly: MultiTrigPoly

    @property
    def n(self) -> int:
        return self.poly.n

    @property
    def decay(self) -> DecayModel:
        return DecayModel.bounded(sum(abs(c) for _, c in self.poly.terms))


@dataclass(frozen=True)
class TensorProduct(Section):
    """(x_1, .., x_k) -> prod_i f_i(x_i) over consecutive blocks of variables."""

    kind: ClassVar[str] = "tensor_product"

    factors: Tuple[Section, ...]

    def __post_init__(self) -> None:
        if not self.factors:
            raise ValidationError("A tensor product needs at least one factor")
        object.__setattr__(self, "factors", tuple(self.factors))

    @property
    def n(self) -> int:
        return sum(f.n for f in self.factors)

    @property
    def decay(self) -> DecayModel:
        return tensor_model([f.decay for f in self.factors])


@dataclass(frozen=True)
class TruncatedProduct(Section):
    """
    x -> prod_{j=1..depth} mask(A^-j x) / sqrt|det A|, the cascade approximation of
    the scaling section refining with `mask`.
    """

    kind: ClassVar[str] = "truncated_product"

    mask: MultiTrigPoly
    depth: int
    spec: DilationSpec

    def __post_init__(self) -> None:
        if self.depth < 1:
            raise DepthZero(f"Product depth must be at least 1, got {self.depth}")
        if self.mask.n != self.spec.n:
            raise DimensionMismatch(
                f"Mask on n = {self.mask.n} for a dilation on n = {self.spec.n}"
            )

    @property
    def n(self) -> int:
        return self.spec.n

    @property
    def decay(self) -> DecayModel:
        mask_sup = sum(abs(c) for _, c in self.mask.terms)
        factor = mask_sup / math.sqrt(self.spec.absdet)
        return DecayModel.bounded(factor ** self.depth)


@dataclass(frozen=True)
class Dilated(Section):
    """D^power applied to `inner`: x -> d^(-power/2) inner((A^t)^-power x)."""

    kind: ClassVar[str] = "dilated"

    spec: DilationSpec
    inner: Section
    power: int

    def __post_init__(self) -> None:
        if self.inner.n != self.spec.n:
            raise DimensionMismatch(
                f"Dilation on n = {self.spec.n} for a section on n = {self.inner.n}"
            )

    @property
    def n(self) -> int:
        return self.spec.n

    @property
    def decay(self) -> DecayModel:
        backward = matrices.inverse(self.spec.frequency_map(self.power))
        factor = self.spec.absdet ** (-self.power / 2)
        if self.spec.form is DilationForm.DIAGONAL:
            scales = [abs(float(backward[k][k])) for k in range(self.n)]
            return self.inner.decay.dilated_axes(scales, [s ** -0.5 for s in scales])
        return self.inner.decay.dilated(matrices.max_row_sum(backward), factor)


@dataclass(frozen=True)
class Modulated(Section):
    """x -> e(-v . x) inner(x)."""

    kind: ClassVar[str] = "modulated"

    v: Tuple[int, ...]
    inner: Section

    def __post_init__(self) -> None:
        object.__setattr__(self, "v", matrices.as_int_vector(self.v))
        if len(self.v) != self.inner.n:
            raise DimensionMismatch(
                f"Modulation by {self.v} of a section on n = {self.inner.n}"
            )

    @property
    def n(self) -> int:
        return self.inner.n

    @property
    def decay(self) -> DecayModel:
        return self.inner.decay

    @property
    def quasi_period(self) -> Optional[QuasiPeriod]:
        return self.inner.quasi_period


@dataclass(frozen=True)
class Sum(Section):
    kind: ClassVar[str] = "sum"

    terms: Tuple[Section, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "terms", tuple(self.terms))
        _same_dimension(self.terms, "A sum")

    @property
    def n(self) -> int:
        return self.terms[0].n

    @property
    def decay(self) -> DecayModel:
        return reduce(lambda a, b: a.plus(b), (t.decay for t in self.terms))

    @property
    def quasi_period(self) -> Optional[QuasiPeriod]:
        claims = {t.quasi_period for t in self.terms}
        return claims.pop() if len(claims) == 1 else None


@dataclass(frozen=True)
class Scaled(Section):
    kind: ClassVar[str] = "scaled"

    factor: complex
    inner: Section

    @property
    def n(self) -> int:
        return self.inner.n

    @property
    def decay(self) -> DecayModel:
        return self.inner.decay.scaled(abs(self.factor))

    @property
    def quasi_period(self) -> Optional[QuasiPeriod]:
        return self.inner.quasi_period


@dataclass(frozen=True)
class Product(Section):
    """
    Pointwise product. With trigonometric polynomial factors this is the right
    action of C(T^n) on sections, which keeps quasi-periodicity.
    """

    kind: ClassVar[str] = "product"

    factors: Tuple[Section, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "factors", tuple(self.factors))
        _same_dimension(self.factors, "A product")

    @property
    def n(self) -> int:
        return self.factors[0].n

    @property
    def decay(self) -> DecayModel:
        return reduce(lambda a, b: a.times(b), (f.decay for f in self.factors))

    @property
    def quasi_period(self) -> Optional[QuasiPeriod]:
        others = [f for f in self.factors if not isinstance(f, TrigPolynomial)]
        if len(others) != 1:
            return None
        return others[0].quasi_period


@dataclass(frozen=True)
class Shifted(Section):
    """x -> inner(x + delta)."""

    kind: ClassVar[str] = "shifted"

    delta: Tuple[float, ...]
    inner: Section

    def __post_init__(self) -> None:
        object.__setattr__(self, "delta", tuple(float(x) for x in self.delta))
        if len(self.delta) != self.inner.n:
            raise DimensionMismatch(
                f"Shift by {self.delta} of a section on n = {self.inner.n}"
            )

    @property
    def n(self) -> int:
        return self.inner.n

    @property
    def decay(self) -> DecayModel:
        return self.inner.decay.shifted(self.delta)


@dataclass(frozen=True)
class MeyerScaling(Section):
    """Smoothed indicator: 1 on [-1/3, 1/3], cos(pi/2 nu(3|x| - 1)) out to 2/3."""

    kind: ClassVar[str] = "meyer_scaling"

    @property
    def n(self) -> int:
        return 1

    @property
    def decay(self) -> DecayModel:
        return DecayModel.compact(1.0, MEYER_SCALING_SUPPORT)


@dataclass(frozen=True)
class MeyerWavelet(Section):
    """
    e(x/2) times sin(pi/2 nu(3|x| - 1)) on [1/3, 2/3] and
    cos(pi/2 nu(3|x|/2 - 1)) on [2/3, 4/3].
    """

    kind: ClassVar[str] = "meyer_wavelet"

    @property
    def n(self) -> int:
        return 1

    @property
    def decay(self) -> DecayModel:
        return DecayModel.compact(1.0, MEYER_WAVELET_SUPPORT)


@dataclass(frozen=True)
class CosineBump(Section):
    """prod_i cos(pi x_i / (2 radius))^power on the cube |x|_inf <= radius."""

    kind: ClassVar[str] = "cosine_bump"

    radius: float
    power: int
    dimension: int = 1

    def __post_init__(self) -> None:
        if self.radius <= 0 or self.power < 1 or self.dimension < 1:
            raise ValidationError(
                f"Invalid bump radius={self.radius}, power={self.power}, "
                f"n={self.dimension}"
            )

    @property
    def n(self) -> int:
        return self.dimension

    @property
    def decay(self) -> DecayModel:
        axis = DecayModel.compact(1.0, self.radius)
        return DecayModel.compact(1.0, self.radius).with_axes(
            (axis,) * self.dimension
        )


@dataclass(frozen=True)
class QuasiPeriodicTheta(Section):
    """
    h(s, t) = window(s) sum_k e(k a . s) profile(t + k q), an element of X(q, a)
    for a compactly supported profile and a 1-periodic window on n - 1 variables.
    """

    kind: ClassVar[str] = "quasi_periodic_theta"

    q: int
    twists: Tuple[int, ...]
    profile: Section
    window: Optional[Section] = None

    def __post_init__(self) -> None:
        object.__setattr__(self, "twists", matrices.as_int_vector(self.twists))
        if self.q < 1:
            raise ValidationError(f"Quasi-period must be positive, got {self.q}")
        if self.profile.n != 1 or not self.profile.decay.is_compact:
            raise ValidationError("The profile must be a compact section on R")
        expected = len(self.twists)
        if self.window is None:
            if expected:
                raise DimensionMismatch("Twisted sections need a window on n - 1 axes")
        elif self.window.n != expected:
            raise DimensionMismatch(
                f"Window on n = {self.window.n} for {expected} twists"
            )

    @property
    def n(self) -> int:
        return len(self.twists) + 1

    @property
    def overlap(self) -> int:
        """Most translates profile(t + k q) that are nonzero at one t."""
        support = self.profile.decay.support or 0.0
        return math.floor(2 * support / self.q) + 1

    @property
    def decay(self) -> DecayModel:
        window_sup = self.window.decay.sup if self.window is not None else 1.0
        return DecayModel.bounded(window_sup * self.overlap * self.profile.decay.sup)

    @property
    def quasi_period(self) -> Optional[QuasiPeriod]:
        return (self.q, self.twists)
