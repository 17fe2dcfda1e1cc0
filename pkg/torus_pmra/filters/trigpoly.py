"""
Finite trigonometric polynomials with exact frequency bookkeeping.
"""
import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Dict, Iterable, Sequence, Tuple, Union

import numpy as np
from toolz import dicttoolz

from torus_pmra.exceptions import DimensionMismatch, ValidationError

Rational = Union[int, Fraction]


def e(x: np.ndarray) -> np.ndarray:
    """e(x) = exp(2 pi i x)."""
    return np.exp(2j * np.pi * np.asarray(x, dtype=float))


def _collect(pairs: Iterable[Tuple[Any, complex]]) -> Tuple[Tuple[Any, complex], ...]:
    collected: Dict[Any, complex] = {}
    for key, value in pairs:
        collected[key] = collected.get(key, 0) + complex(value)
    return tuple(
        sorted(((k, v) for k, v in collected.items() if v != 0), key=lambda kv: kv[0])
    )


@dataclass(frozen=True)
class TrigPoly:
    """
    x -> sum_j c_j e(j x / period) with integer frequencies j.
    """

    period: Fraction
    terms: Tuple[Tuple[int, complex], ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "period", Fraction(self.period))
        if self.period <= 0:
            raise ValidationError(f"Period must be positive, got {self.period}")
        object.__setattr__(
            self, "terms", _collect((int(j), c) for j, c in self.terms)
        )

    @classmethod
    def from_coefficients(
        cls, coefficients: Sequence[complex], period: Rational = 1
    ) -> "TrigPoly":
        """c_0 + c_1 e(x / period) + c_2 e(2x / period) + ..."""
        return cls(Fraction(period), tuple(enumerate(coefficients)))

    @classmethod
    def constant(cls, value: complex) -> "TrigPoly":
        return cls(Fraction(1), ((0, value),))

    @property
    def frequencies(self) -> Tuple[int, ...]:
        return tuple(j for j, _ in self.terms)

    @property
    def coefficients(self) -> Tuple[complex, ...]:
        return tuple(c for _, c in self.terms)

    def __call__(self, x: np.ndarray) -> np.ndarray:
        return self.evaluate(x)

    def evaluate(self, x: np.ndarray) -> np.ndarray:
        points = np.asarray(x, dtype=float)
        result = np.zeros(points.shape, dtype=complex)
        for j, c in self.terms:
            result += c * e(j * points / float(self.period))
        return result

    def dilate(self, factor: int) -> "TrigPoly":
        """x -> p(factor * x)."""
        if factor == 0:
            raise ValidationError("Cannot dilate by zero")
        sign = 1 if factor > 0 else -1
        return TrigPoly(
            self.period / abs(factor), tuple((sign * j, c) for j, c in self.terms)
        )

    def scale(self, factor: complex) -> "TrigPoly":
        return TrigPoly(self.period, tuple((j, factor * c) for j, c in self.terms))

    def __add__(self, other: "TrigPoly") -> "TrigPoly":
        if self.period != other.period:
            raise ValidationError("Trigonometric polynomials must share their period")
        merged = dicttoolz.merge_with(sum, dict(self.terms), dict(other.terms))
        return TrigPoly(self.period, tuple(merged.items()))

    def __mul__(self, other: "TrigPoly") -> "TrigPoly":
        if self.period != other.period:
            raise ValidationError("Trigonometric polynomials must share their period")
        return TrigPoly(
            self.period,
            tuple(
                (j + k, a * b)
                for (j, a), (k, b) in itertools.product(self.terms, other.terms)
            ),
        )

    def is_integer_periodic(self) -> bool:
        """True when p(x + 1) = p(x) identically."""
        return all(
            (Fraction(j) / self.period).denominator == 1 for j in self.frequencies
        )

    def integer_frequencies(self) -> Tuple[Tuple[int, complex], ...]:
        """Terms rewritten as x -> sum c e(k x); requires integer periodicity."""
        if not self.is_integer_periodic():
            raise ValidationError(f"Period {self.period} polynomial is not 1-periodic")
        return tuple((int(Fraction(j) / self.period), c) for j, c in self.terms)


@dataclass(frozen=True)
class MultiTrigPoly:
    """
    x -> sum_k c_k e(k . x) on R^n with integer frequency vectors k.
    """

    n: int
    terms: Tuple[Tuple[Tuple[int, ...], complex], ...]

    def __post_init__(self) -> None:
        if self.n < 1:
            raise ValidationError(f"Dimension must be positive, got {self.n}")
        for k, _ in self.terms:
            if len(k) != self.n:
                raise DimensionMismatch(f"Frequency {k} is not in Z^{self.n}")
        object.__setattr__(
            self,
            "terms",
            _collect((tuple(int(x) for x in k), c) for k, c in self.terms),
        )

    @classmethod
    def constant(cls, n: int, value: complex) -> "MultiTrigPoly":
        return cls(n, (((0,) * n, value),))

    @classmethod
    def tensor(cls, factors: Sequence[TrigPoly]) -> "MultiTrigPoly":
        """(s_1, .., s_k) -> prod_j p_j(s_j) for 1-periodic factors."""
        if not factors:
            raise ValidationError("A tensor product needs at least one factor")
        axes = [p.integer_frequencies() for p in factors]
        terms = []
        for combo in itertools.product(*axes):
            coeff = complex(np.prod([c for _, c in combo]))
            terms.append((tuple(k for k, _ in combo), coeff))
        return cls(len(factors), tuple(terms))

    @property
    def frequencies(self) -> np.ndarray:
        return np.array([k for k, _ in self.terms], dtype=float).reshape(-1, self.n)

    @property
    def coefficients(self) -> np.ndarray:
        return np.array([c for _, c in self.terms], dtype=complex)

    def __call__(self, points: np.ndarray) -> np.ndarray:
        return self.evaluate(points)

    def evaluate(self, points: np.ndarray) -> np.ndarray:
        """Values at the rows of an (m, n) array."""
        x = np.atleast_2d(np.asarray(points, dtype=float))
        if x.shape[-1] != self.n:
            raise DimensionMismatch(f"Points of width {x.shape[-1]} for n = {self.n}")
        if not self.terms:
            return np.zeros(x.shape[0], dtype=complex)
        return e(x @ self.frequencies.T) @ self.coefficients

    def scale(self, factor: complex) -> "MultiTrigPoly":
        return MultiTrigPoly(self.n, tuple((k, factor * c) for k, c in self.terms))

    def __add__(self, other: "MultiTrigPoly") -> "MultiTrigPoly":
        if other.n != self.n:
            raise DimensionMismatch(
                f"Cannot add polynomials on n = {self.n}, {other.n}"
            )
        return MultiTrigPoly(self.n, self.terms + other.terms)

    def __mul__(self, other: "MultiTrigPoly") -> "MultiTrigPoly":
        if other.n != self.n:
            raise DimensionMismatch(
                f"Cannot multiply polynomials on n = {self.n}, {other.n}"
            )
        return MultiTrigPoly(
            self.n,
            tuple(
                (tuple(a + b for a, b in zip(k, l)), x * y)
                for (k, x), (l, y) in itertools.product(self.terms, other.terms)
            ),
        )
