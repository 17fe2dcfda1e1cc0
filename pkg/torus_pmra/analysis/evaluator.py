import logging
import math
from typing import Any, Sequence

import numpy as np
from methoddispatch import SingleDispatch, singledispatch

from torus_pmra.analysis.sections import (
    ClosedFormHaar,
    CosineBump,
    Dilated,
    MeyerScaling,
    MeyerWavelet,
    Modulated,
    Product,
    QuasiPeriodicTheta,
    Scaled,
    Section,
    Shifted,
    Sum,
    TensorProduct,
    TrigPolynomial,
    TruncatedProduct,
)
from torus_pmra.exceptions import DimensionMismatch, SerializationError
from torus_pmra.filters.trigpoly import e
from torus_pmra.lattice import matrices

logger = logging.getLogger(__name__)


def meyer_profile(t: np.ndarray) -> np.ndarray:
    """nu(t) = t^4 (35 - 84 t + 70 t^2 - 20 t^3) clipped to [0, 1]."""
    t = np.clip(t, 0.0, 1.0)
    return t ** 4 * (35 - 84 * t + 70 * t ** 2 - 20 * t ** 3)


def _as_points(points: Any, n: int) -> np.ndarray:
    x = np.asarray(points, dtype=float)
    if x.ndim == 1 and n == 1:
        x = x[:, None]
    x = np.atleast_2d(x)
    if x.shape[-1] != n:
        raise DimensionMismatch(f"Points of width {x.shape[-1]} for n = {n}")
    return x


class SectionEvaluator(SingleDispatch):
    """
    Evaluates sections at the rows of an (m, n) array of points, returning m complex
    values. One method per section kind, dispatched on the kind's type.
    """

    def evaluate(self, section: Section, points: Any) -> np.ndarray:
        x = _as_points(points, section.n)
        return np.asarray(self._evaluate(section, x), dtype=complex)

    def evaluate_point(self, section: Section, point: Sequence[float]) -> complex:
        return complex(self.evaluate(section, np.asarray([point], dtype=float))[0])

    @singledispatch
    def _evaluate(self, section: Any, x: np.ndarray) -> np.ndarray:
        raise SerializationError(f"Unknown section kind {type(section).__name__}")

    @_evaluate.register(ClosedFormHaar)
    def _evaluate_haar(self, section: ClosedFormHaar, x: np.ndarray) -> np.ndarray:
        t = x[:, 0]
        return e(section.theta * t) * np.sinc(t)

    @_evaluate.register(TrigPolynomial)
    def _evaluate_trig(self, section: TrigPolynomial, x: np.ndarray) -> np.ndarray:
        return section.poly(x)

    @_evaluate.register(TensorProduct)
    def _evaluate_tensor(self, section: TensorProduct, x: np.ndarray) -> np.ndarray:
        result = np.ones(x.shape[0], dtype=complex)
        start = 0
        for factor in section.factors:
            result *= self._evaluate(factor, x[:, start : start + factor.n])
            start += factor.n
        return result

    @_evaluate.register(TruncatedProduct)
    def _evaluate_truncated(
        self, section: TruncatedProduct, x: np.ndarray
    ) -> np.ndarray:
        backward = matrices.to_float_array(matrices.inverse(section.spec.entries))
        scale = 1.0 / math.sqrt(section.spec.absdet)
        y = x
        result = np.ones(x.shape[0], dtype=complex)
        for _ in range(section.depth):
            y = y @ backward.T
            result *= section.mask(y) * scale
        return result

    @_evaluate.register(Dilated)
    def _evaluate_dilated(self, section: Dilated, x: np.ndarray) -> np.ndarray:
        forward = matrices.to_float_array(section.spec.frequency_map(section.power))
        factor = section.spec.absdet ** (-section.power / 2)
        return factor * self._evaluate(section.inner, x @ forward.T)

    @_evaluate.register(Modulated)
    def _evaluate_modulated(self, section: Modulated, x: np.ndarray) -> np.ndarray:
        phase = e(-(x @ np.asarray(section.v, dtype=float)))
        return phase * self._evaluate(section.inner, x)

    @_evaluate.register(Sum)
    def _evaluate_sum(self, section: Sum, x: np.ndarray) -> np.ndarray:
        result = np.zeros(x.shape[0], dtype=complex)
        for term in section.terms:
            result += self._evaluate(term, x)
        return result

    @_evaluate.register(Scaled)
    def _evaluate_scaled(self, section: Scaled, x: np.ndarray) -> np.ndarray:
        return section.factor * self._evaluate(section.inner, x)

    @_evaluate.register(Product)
    def _evaluate_product(self, section: Product, x: np.ndarray) -> np.ndarray:
        result = np.ones(x.shape[0], dtype=complex)
        for factor in section.factors:
            result *= self._evaluate(factor, x)
        return result

    @_evaluate.register(Shifted)
    def _evaluate_shifted(self, section: Shifted, x: np.ndarray) -> np.ndarray:
        return self._evaluate(section.inner, x + np.asarray(section.delta))

    @_evaluate.register(MeyerScaling)
    def _evaluate_meyer_scaling(
        self, section: MeyerScaling, x: np.ndarray
    ) -> np.ndarray:
        r = np.abs(x[:, 0])
        ramp = np.cos(np.pi / 2 * meyer_profile(3 * r - 1))
        return np.where(r <= 2 / 3, ramp, 0.0).astype(complex)

    @_evaluate.register(MeyerWavelet)
    def _evaluate_meyer_wavelet(
        self, section: MeyerWavelet, x: np.ndarray
    ) -> np.ndarray:
        t = x[:, 0]
        r = np.abs(t)
        rising = np.sin(np.pi / 2 * meyer_profile(3 * r - 1))
        falling = np.cos(np.pi / 2 * meyer_profile(3 * r / 2 - 1))
        magnitude = np.where(
            (r >= 1 / 3) & (r <= 2 / 3),
            rising,
            np.where((r > 2 / 3) & (r <= 4 / 3), falling, 0.0),
        )
        return e(t / 2) * magnitude

    @_evaluate.register(CosineBump)
    def _evaluate_bump(self, section: CosineBump, x: np.ndarray) -> np.ndarray:
        inside = np.all(np.abs(x) <= section.radius, axis=1)
        values = np.prod(np.cos(np.pi * x / (2 * section.radius)), axis=1)
        return np.where(inside, values ** section.power, 0.0).astype(complex)

    @_evaluate.register(QuasiPeriodicTheta)
    def _evaluate_theta(
        self, section: QuasiPeriodicTheta, x: np.ndarray
    ) -> np.ndarray:
        if x.shape[0] == 0:
            return np.zeros(0, dtype=complex)
        s, t = x[:, :-1], x[:, -1]
        support = section.profile.decay.support or 0.0
        k_min = math.floor((-support - np.max(t)) / section.q)
        k_max = math.ceil((support - np.min(t)) / section.q)
        twist = s @ np.asarray(section.twists, dtype=float)
        result = np.zeros(x.shape[0], dtype=complex)
        for k in range(k_min, k_max + 1):
            shifted = (t + k * section.q)[:, None]
            result += e(k * twist) * self._evaluate(section.profile, shifted)
        if section.window is not None:
            result *= self._evaluate(section.window, s)
        return result


_default_evaluator = SectionEvaluator()


def evaluate(section: Section, points: Any) -> np.ndarray:
    """Values of `section` at the rows of `points` with the shared evaluator."""
    return _default_evaluator.evaluate(section, points)


def evaluate_point(section: Section, point: Sequence[float]) -> complex:
    return _default_evaluator.evaluate_point(section, point)
