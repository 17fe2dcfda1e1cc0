import logging
import math
from dataclasses import dataclass
from functools import reduce
from typing import Any, Iterable, Optional, Sequence, Tuple

from torus_pmra.exceptions import (
    DimensionMismatch,
    InvalidModuleDescriptor,
    NotUnimodular,
    ValidationError,
)
from torus_pmra.helpers.typing import IntMatrix
from torus_pmra.ktheory.exterior import ExtElement
from torus_pmra.lattice import matrices
from torus_pmra.lattice.unimodular import sl3_with_cofactors

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class KClass:
    """
    A K_0(C(T^n)) class: an element of the even exterior algebra.
    """

    elem: ExtElement

    def __post_init__(self) -> None:
        odd = [d for d in self.elem.degrees() if d % 2]
        if odd:
            raise ValidationError(f"K_0 classes live in even degrees, got {self.elem}")

    @property
    def n(self) -> int:
        return self.elem.n

    @property
    def rank(self) -> int:
        return self.elem.coefficient()

    @classmethod
    def from_coeffs(cls, n: int, coeffs: Any) -> "KClass":
        return cls(ExtElement.from_coeffs(n, coeffs))

    @classmethod
    def free(cls, n: int, q: int) -> "KClass":
        return cls(ExtElement.scalar(n, q))

    def coefficient(self, *indices: int) -> int:
        return self.elem.coefficient(*indices)

    def __add__(self, other: "KClass") -> "KClass":
        return KClass(self.elem + other.elem)

    def __sub__(self, other: "KClass") -> "KClass":
        return KClass(self.elem - other.elem)

    def __str__(self) -> str:
        return str(self.elem)


@dataclass(frozen=True)
class ModuleDescriptor:
    """
    The quasi-periodic module X(q, a_1, .., a_{n-1}), or X_B(q, a) = {h o B} when a
    conjugator B is given.
    """

    q: int
    twists: Tuple[int, ...] = ()
    conjugator: Optional[IntMatrix] = None

    def __post_init__(self) -> None:
        if isinstance(self.q, bool) or not isinstance(self.q, int) or self.q < 1:
            raise InvalidModuleDescriptor(f"Rank must be a positive integer: {self.q}")
        object.__setattr__(self, "twists", tuple(int(a) for a in self.twists))
        if self.conjugator is not None:
            b = matrices.as_square_matrix(self.conjugator)
            if len(b) != self.n:
                raise InvalidModuleDescriptor(
                    f"Conjugator must be {self.n}x{self.n} to match the twists"
                )
            if abs(matrices.det(b)) != 1:
                raise NotUnimodular(f"Module conjugator {b} is not unimodular")
            object.__setattr__(self, "conjugator", b)

    @property
    def n(self) -> int:
        return len(self.twists) + 1

    def nonzero_twists(self) -> Sequence[Tuple[int, int]]:
        """(1-based position, value) of every nonzero twist."""
        return [(j, a) for j, a in enumerate(self.twists, start=1) if a]

    def __str__(self) -> str:
        label = "X"
        if self.conjugator is not None:
            label = f"X_{[list(row) for row in self.conjugator]}"
        return f"{label}({', '.join(str(v) for v in (self.q,) + self.twists)})"


def _unimodular(matrix: Iterable[Iterable[Any]]) -> IntMatrix:
    b = matrices.as_square_matrix(matrix)
    if abs(matrices.det(b)) != 1:
        raise NotUnimodular(f"{b} has determinant {matrices.det(b)}, not +-1")
    return b


def gl_action(matrix: Iterable[Iterable[Any]], c: KClass) -> KClass:
    """
    The ring map of the exterior algebra induced by e_j -> sum_l b_jl e_l.

    Args:
        matrix: unimodular B.
        c: the class to transform.

    Returns:
        The transformed class; composing B1 after B2 equals acting by B2 B1.
    """
    b = _unimodular(matrix)
    if len(b) != c.n:
        raise DimensionMismatch(f"{len(b)}x{len(b)} matrix acting on n = {c.n}")
    images = [
        ExtElement.from_coeffs(c.n, {(l + 1,): x for l, x in enumerate(row)})
        for row in b
    ]
    unit = ExtElement.scalar(c.n, 1)
    total = ExtElement.zero(c.n)
    for indices, coeff in c.elem.terms:
        image = reduce(lambda acc, j: acc.wedge(images[j - 1]), indices, unit)
        total = total + image.scale(coeff)
    return KClass(total)


def gl2_action(matrix: Iterable[Iterable[Any]], c: KClass) -> KClass:
    """Fixes the rank and multiplies the e1^e2 coefficient by det A."""
    if c.n != 2:
        raise DimensionMismatch(f"gl2_action acts on n = 2 classes, got n = {c.n}")
    a = _unimodular(matrix)
    if len(a) != 2:
        raise DimensionMismatch("gl2_action needs a 2x2 matrix")
    determinant = matrices.det(a)
    return KClass.from_coeffs(
        2, {(): c.rank, (1, 2): determinant * c.coefficient(1, 2)}
    )


def class_of_module(m: ModuleDescriptor) -> KClass:
    """q - sum_k a_k e_k ^ e_n, pulled back through the conjugator when present."""
    n = m.n
    coeffs = {(): m.q}
    for j, a in m.nonzero_twists():
        coeffs[(j, n)] = -a
    k_class = KClass.from_coeffs(n, coeffs)
    if m.conjugator is not None:
        k_class = gl_action(m.conjugator, k_class)
    return k_class


def direct_sum(first: KClass, second: KClass) -> KClass:
    if first.n != second.n:
        raise DimensionMismatch(f"Cannot add classes for n = {first.n} and {second.n}")
    return first + second


def direct_sum_modules(
    first: ModuleDescriptor, second: ModuleDescriptor
) -> ModuleDescriptor:
    """X(q1, a1) + X(q2, a2) = X(q1 + q2, a1 + a2) for equal conjugators."""
    if first.n != second.n:
        raise DimensionMismatch(f"Cannot add modules for n = {first.n} and {second.n}")
    if first.conjugator != second.conjugator:
        raise InvalidModuleDescriptor("Summands must share their conjugator")
    return ModuleDescriptor(
        q=first.q + second.q,
        twists=tuple(a + b for a, b in zip(first.twists, second.twists)),
        conjugator=first.conjugator,
    )


def embed_class(q: int, c1: int, c2: int, c3: int) -> ModuleDescriptor:
    """
    A descriptor X_B(q, 0, a) on T^3 whose class is q + c1 e1^e2 + c2 e1^e3 + c3 e2^e3.
    """
    a = math.gcd(math.gcd(c1, c2), c3)
    if a == 0:
        return ModuleDescriptor(q=q, twists=(0, 0))
    completion = sl3_with_cofactors(c1 // a, c2 // a, c3 // a)
    logger.debug("Embedding (%s, %s, %s) with twist %s", c1, c2, c3, a)
    return ModuleDescriptor(q=q, twists=(0, a), conjugator=completion.matrix)
