"""
The exterior algebra over Z on generators e_1..e_n.

Monomials are strictly increasing tuples of 1-based generator indices; the empty
tuple is the unit.
"""
import itertools
from dataclasses import dataclass
from typing import Dict, Iterable, Iterator, Mapping, Tuple

from toolz import dicttoolz

from torus_pmra.exceptions import DimensionMismatch, ValidationError

Monomial = Tuple[int, ...]


def monomial_product(left: Monomial, right: Monomial) -> Tuple[int, Monomial]:
    """
    e_left ^ e_right as (sign, sorted monomial); sign 0 when an index repeats.
    """
    indices = left + right
    if len(set(indices)) != len(indices):
        return 0, ()
    inversions = sum(
        1 for a, b in itertools.combinations(indices, 2) if a > b
    )
    return (-1) ** inversions, tuple(sorted(indices))


def _normalized(coeffs: Mapping[Monomial, int]) -> Tuple[Tuple[Monomial, int], ...]:
    return tuple(
        sorted(
            ((key, value) for key, value in coeffs.items() if value != 0),
            key=lambda item: (len(item[0]), item[0]),
        )
    )


@dataclass(frozen=True)
class ExtElement:
    n: int
    terms: Tuple[Tuple[Monomial, int], ...] = ()

    def __post_init__(self) -> None:
        if self.n < 1:
            raise ValidationError(f"Exterior algebra needs n >= 1, got {self.n}")
        for indices, _ in self.terms:
            if list(indices) != sorted(set(indices)):
                raise ValidationError(f"Monomial {indices} is not strictly increasing")
            if indices and (indices[0] < 1 or indices[-1] > self.n):
                raise ValidationError(f"Monomial {indices} leaves 1..{self.n}")

    @classmethod
    def from_coeffs(cls, n: int, coeffs: Mapping[Iterable[int], int]) -> "ExtElement":
        collected: Dict[Monomial, int] = {}
        for indices, value in coeffs.items():
            raw = tuple(int(i) for i in indices)
            sign, key = monomial_product(raw, ())
            if not sign:
                continue
            collected[key] = collected.get(key, 0) + sign * int(value)
        return cls(n, _normalized(collected))

    @classmethod
    def scalar(cls, n: int, value: int) -> "ExtElement":
        return cls.from_coeffs(n, {(): value})

    @classmethod
    def generator(cls, n: int, j: int) -> "ExtElement":
        return cls.from_coeffs(n, {(j,): 1})

    @classmethod
    def zero(cls, n: int) -> "ExtElement":
        return cls(n)

    @property
    def coeffs(self) -> Dict[Monomial, int]:
        return dict(self.terms)

    def coefficient(self, *indices: int) -> int:
        return self.coeffs.get(tuple(indices), 0)

    def degrees(self) -> Iterator[int]:
        return (len(indices) for indices, _ in self.terms)

    def homogeneous_part(self, degree: int) -> "ExtElement":
        return ExtElement(
            self.n, tuple(t for t in self.terms if len(t[0]) == degree)
        )

    def is_zero(self) -> bool:
        return not self.terms

    def _check(self, other: "ExtElement") -> None:
        if not isinstance(other, ExtElement):
            raise TypeError(f"Expected an ExtElement, got {type(other)}")
        if other.n != self.n:
            raise DimensionMismatch(
                f"Exterior algebras differ: n = {self.n} and n = {other.n}"
            )

    def __add__(self, other: "ExtElement") -> "ExtElement":
        self._check(other)
        merged = dicttoolz.merge_with(sum, self.coeffs, other.coeffs)
        return ExtElement(self.n, _normalized(merged))

    def __neg__(self) -> "ExtElement":
        return self.scale(-1)

    def __sub__(self, other: "ExtElement") -> "ExtElement":
        return self + (-other)

    def scale(self, factor: int) -> "ExtElement":
        return ExtElement(
            self.n, _normalized(dicttoolz.valmap(lambda c: c * factor, self.coeffs))
        )

    def wedge(self, other: "ExtElement") -> "ExtElement":
        self._check(other)
        collected: Dict[Monomial, int] = {}
        for (left, a), (right, b) in itertools.product(self.terms, other.terms):
            sign, key = monomial_product(left, right)
            if sign:
                collected[key] = collected.get(key, 0) + sign * a * b
        return ExtElement(self.n, _normalized(collected))

    def __xor__(self, other: "ExtElement") -> "ExtElement":
        return self.wedge(other)

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for indices, c in self.terms:
            label = "^".join(f"e{i}" for i in indices)
            if not label:
                parts.append(f"{c}")
            elif c == 1:
                parts.append(label)
            elif c == -1:
                parts.append(f"-{label}")
            else:
                parts.append(f"{c}{label}")
        return " + ".join(parts).replace("+ -", "- ")


def wedge(u: ExtElement, v: ExtElement) -> ExtElement:
    """Exterior product with exact integer coefficients."""
    return u.wedge(v)
