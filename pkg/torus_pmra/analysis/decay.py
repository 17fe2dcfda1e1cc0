"""
Decay models: the bounds that turn a truncated lattice sum into an honest estimate.

A model promises |f(x)| <= sup everywhere and |f(x)| <= constant * |x|^-exponent
for |x| >= 1 (sup norm on R^n). A compact `support` radius means f vanishes for
|x| > support. Separable models also carry one-dimensional models per axis with
|f(x)| <= prod_i g_i(x_i).
"""
import math
from dataclasses import dataclass, replace
from typing import Optional, Sequence, Tuple

INF = math.inf


@dataclass(frozen=True)
class DecayModel:
    sup: float
    constant: float
    exponent: float
    support: Optional[float] = None
    axes: Optional[Tuple["DecayModel", ...]] = None

    @classmethod
    def bounded(cls, sup: float) -> "DecayModel":
        """Bounded, no decay claimed."""
        return cls(sup=sup, constant=sup, exponent=0.0)

    @classmethod
    def compact(cls, sup: float, support: float) -> "DecayModel":
        return cls(sup=sup, constant=0.0, exponent=INF, support=support)

    @property
    def is_compact(self) -> bool:
        return self.support is not None

    def scaled(self, factor: float) -> "DecayModel":
        factor = abs(factor)
        axes = self.axes
        if axes:
            axes = (axes[0].scaled(factor),) + axes[1:]
        return replace(
            self, sup=self.sup * factor, constant=self.constant * factor, axes=axes
        )

    def plus(self, other: "DecayModel") -> "DecayModel":
        support = None
        if self.is_compact and other.is_compact:
            support = max(self.support, other.support)  # type: ignore
        return DecayModel(
            sup=self.sup + other.sup,
            constant=self.constant + other.constant,
            exponent=min(self.exponent, other.exponent),
            support=support,
        )

    def times(self, other: "DecayModel") -> "DecayModel":
        """Pointwise product: both tail bounds hold at once for |x| >= 1."""
        supports = [s for s in (self.support, other.support) if s is not None]
        axes = None
        if self.axes and other.axes and len(self.axes) == len(other.axes):
            axes = tuple(a.times(b) for a, b in zip(self.axes, other.axes))
        if supports:
            return DecayModel.compact(self.sup * other.sup, min(supports)).with_axes(
                axes
            )
        return DecayModel(
            sup=self.sup * other.sup,
            constant=self.constant * other.constant,
            exponent=self.exponent + other.exponent,
            axes=axes,
        )

    def with_axes(self, axes: Optional[Tuple["DecayModel", ...]]) -> "DecayModel":
        return replace(self, axes=axes)

    def dilated(self, norm: float, factor: float) -> "DecayModel":
        """
        Model of x -> factor * f(M x) where |M^-1|_inf = norm.
        """
        if self.is_compact:
            return DecayModel.compact(
                self.sup * factor, self.support * norm  # type: ignore
            )
        base = max(self.constant, self.sup) if norm > 1 else self.constant
        return DecayModel(
            sup=self.sup * factor,
            constant=base * norm ** self.exponent * factor,
            exponent=self.exponent,
        )

    def dilated_axes(
        self, norms: Sequence[float], factors: Sequence[float]
    ) -> "DecayModel":
        """As `dilated` for a diagonal M, keeping the per-axis models."""
        model = self.dilated(max(norms), math.prod(factors))
        if not self.axes or len(self.axes) != len(norms):
            return model
        return replace(
            model,
            axes=tuple(
                a.dilated(s, f) for a, s, f in zip(self.axes, norms, factors)
            ),
        )

    def shifted(self, delta: Sequence[float]) -> "DecayModel":
        """Model of x -> f(x + delta)."""
        size = max((abs(x) for x in delta), default=0.0)
        axes = None
        if self.axes and len(self.axes) == len(delta):
            axes = tuple(a.shifted((x,)) for a, x in zip(self.axes, delta))
        if self.is_compact:
            support = self.support + size  # type: ignore
            return DecayModel.compact(self.sup, support).with_axes(axes)
        return DecayModel(
            sup=self.sup,
            constant=max(self.constant, self.sup) * (1 + size) ** self.exponent,
            exponent=self.exponent,
            axes=axes,
        )

    def squared(self) -> "DecayModel":
        return self.times(self)


def tensor_model(factors: Sequence[DecayModel]) -> DecayModel:
    """
    Model of (x_1, .., x_k) -> prod_i f_i(x_i), one block of variables per factor.

    When |x| >= 1 some block carries the sup norm, so that factor decays and the
    others are bounded by their sups.
    """
    sup = math.prod(f.sup for f in factors)
    axes = []
    for f in factors:
        axes.extend(f.axes if f.axes else (f,))
    if all(f.is_compact for f in factors):
        support = max(f.support for f in factors)  # type: ignore
        return DecayModel.compact(sup, support).with_axes(tuple(axes))
    constant = 0.0
    for i, f in enumerate(factors):
        others = math.prod(g.sup for j, g in enumerate(factors) if j != i)
        tail = f.sup if f.is_compact else f.constant
        constant = max(constant, tail * others)
    exponent = min(f.exponent for f in factors)
    return DecayModel(
        sup=sup, constant=constant, exponent=exponent, axes=tuple(axes)
    )


def _shells(inner: float, outer: float, n: int) -> float:
    """Lattice points with inner < |p|_inf <= outer."""
    return float((2 * math.floor(outer) + 1) ** n - (2 * math.floor(inner) + 1) ** n)


def radial_tail(model: DecayModel, n: int, radius: int, width: float) -> float:
    """
    Bound on sum_{|p|_inf > R} |f(t - p)| for every t with |t|_inf <= width.
    """
    u0 = radius + 1 - width
    if model.is_compact:
        support = model.support  # type: ignore
        if support < u0:
            return 0.0
        return _shells(radius, support + width, n) * model.sup
    if u0 < 1 or model.exponent <= n:
        return INF
    p = model.exponent
    shell = 2 * n * (3 + 2 * width) ** (n - 1) * model.constant
    return shell * (u0 ** (n - 1 - p) + u0 ** (n - p) / (p - n))


def _axis_total(model: DecayModel) -> float:
    """Bound on sum_{p in Z} |g(t - p)| for any real t."""
    if model.is_compact:
        return (2 * model.support + 2) * model.sup  # type: ignore
    if model.exponent <= 1:
        return INF
    return 2 * model.sup + 2 * model.constant * (1 + 1 / (model.exponent - 1))


def separable_tail(model: DecayModel, radius: int, width: float) -> float:
    """
    Union bound over the axes on which |p_i| > R:
    sum_i E_i prod_{j != i} F_j with E the one-dimensional tail and F the full
    one-dimensional sum.
    """
    axes = model.axes or ()
    tails = [radial_tail(a, 1, radius, width) for a in axes]
    totals = [_axis_total(a) for a in axes]
    bound = 0.0
    for i, tail in enumerate(tails):
        if tail == 0:
            continue
        others = math.prod(t for j, t in enumerate(totals) if j != i)
        bound += tail * others
    return bound


def lattice_tail(model: DecayModel, n: int, radius: int, width: float = 1.0) -> float:
    """The smaller of the radial and (when available) separable tail bounds."""
    radial = radial_tail(model, n, radius, width)
    if model.axes and len(model.axes) == n:
        return min(radial, separable_tail(model, radius, width))
    return radial


def is_summable(model: DecayModel, n: int) -> bool:
    if model.is_compact or model.exponent > n:
        return True
    return bool(model.axes) and all(
        a.is_compact or a.exponent > 1 for a in model.axes  # type: ignore
    )
