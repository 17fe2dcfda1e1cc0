from fractions import Fraction
from typing import Tuple, TypeVar

T = TypeVar("T")

IntVector = Tuple[int, ...]
IntMatrix = Tuple[IntVector, ...]
RationalMatrix = Tuple[Tuple[Fraction, ...], ...]
