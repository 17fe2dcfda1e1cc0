"""
Exact integer matrix arithmetic on tuples of Python ints.

Matrices are row-major tuples so that they are hashable and immutable. Nothing in
here touches floating point except `to_float_array`, which refuses entries that a
float64 cannot represent exactly.
"""
import math
from fractions import Fraction
from functools import reduce
from typing import Any, Iterable, Sequence

import numpy as np

from torus_pmra.exceptions import (
    ExactArithmeticOverflow,
    InvalidMatrix,
    SingularMatrix,
)
from torus_pmra.helpers.typing import IntMatrix, IntVector, RationalMatrix

FLOAT_EXACT_LIMIT = 2 ** 53


def _as_int(value: Any) -> int:
    if isinstance(value, bool):
        raise InvalidMatrix(f"Booleans are not matrix entries: {value!r}")
    if isinstance(value, (int, np.integer)):
        return int(value)
    if isinstance(value, (float, Fraction)) and float(value).is_integer():
        return int(value)
    raise InvalidMatrix(f"Matrix entries must be integers, got {value!r}")


def as_int_vector(values: Iterable[Any]) -> IntVector:
    return tuple(_as_int(v) for v in values)


def as_int_matrix(rows: Iterable[Iterable[Any]]) -> IntMatrix:
    matrix = tuple(as_int_vector(row) for row in rows)
    if not matrix:
        raise InvalidMatrix("Matrix has no rows")
    width = len(matrix[0])
    if width == 0 or any(len(row) != width for row in matrix):
        raise InvalidMatrix("Matrix rows must be non-empty and of equal length")
    return matrix


def as_square_matrix(rows: Iterable[Iterable[Any]]) -> IntMatrix:
    matrix = as_int_matrix(rows)
    if len(matrix) != len(matrix[0]):
        raise InvalidMatrix(
            f"Expected a square matrix, got {len(matrix)}x{len(matrix[0])}"
        )
    return matrix


def identity(n: int) -> IntMatrix:
    return tuple(tuple(int(i == j) for j in range(n)) for i in range(n))


def diagonal(entries: Sequence[int]) -> IntMatrix:
    n = len(entries)
    return tuple(
        tuple(entries[i] if i == j else 0 for j in range(n)) for i in range(n)
    )


def is_diagonal(matrix: Sequence[Sequence[Any]]) -> bool:
    return all(
        value == 0
        for i, row in enumerate(matrix)
        for j, value in enumerate(row)
        if i != j
    )


def diagonal_entries(matrix: IntMatrix) -> IntVector:
    return tuple(matrix[i][i] for i in range(len(matrix)))


def transpose(matrix: Sequence[Sequence[Any]]) -> Any:
    return tuple(zip(*matrix))


def matmul(a: Sequence[Sequence[Any]], b: Sequence[Sequence[Any]]) -> Any:
    columns = list(zip(*b))
    return tuple(
        tuple(sum(x * y for x, y in zip(row, column)) for column in columns)
        for row in a
    )


def matvec(matrix: Sequence[Sequence[Any]], vector: Sequence[Any]) -> Any:
    return tuple(sum(x * y for x, y in zip(row, vector)) for row in matrix)


def matpow(matrix: IntMatrix, exponent: int) -> IntMatrix:
    if exponent < 0:
        raise ValueError("Use `inverse` for negative powers")
    result = identity(len(matrix))
    base = matrix
    while exponent:
        if exponent & 1:
            result = matmul(result, base)
        base = matmul(base, base)
        exponent >>= 1
    return result


def det(matrix: IntMatrix) -> int:
    """
    Determinant by fraction-free (Bareiss) elimination, exact for any size.
    """
    rows = [list(row) for row in matrix]
    n = len(rows)
    sign = 1
    previous = 1
    for k in range(n - 1):
        if rows[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if rows[i][k] != 0), None)
            if swap is None:
                return 0
            rows[k], rows[swap] = rows[swap], rows[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                rows[i][j] = (rows[i][j] * rows[k][k] - rows[i][k] * rows[k][j]) // (
                    previous
                )
        previous = rows[k][k]
    return sign * rows[n - 1][n - 1]


def inverse(matrix: Sequence[Sequence[Any]]) -> RationalMatrix:
    """
    Exact inverse over the rationals (Gauss-Jordan on Fractions).
    """
    n = len(matrix)
    augmented = [
        [Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)]
        for i, row in enumerate(matrix)
    ]
    for column in range(n):
        pivot = next((r for r in range(column, n) if augmented[r][column] != 0), None)
        if pivot is None:
            raise SingularMatrix("Matrix is singular")
        augmented[column], augmented[pivot] = augmented[pivot], augmented[column]
        leading = augmented[column][column]
        augmented[column] = [x / leading for x in augmented[column]]
        for r in range(n):
            factor = augmented[r][column]
            if r != column and factor != 0:
                augmented[r] = [
                    a - factor * b for a, b in zip(augmented[r], augmented[column])
                ]
    return tuple(tuple(row[n:]) for row in augmented)


def is_integral(matrix: Sequence[Sequence[Any]]) -> bool:
    return all(Fraction(x).denominator == 1 for row in matrix for x in row)


def to_integral(matrix: Sequence[Sequence[Any]]) -> IntMatrix:
    return tuple(tuple(int(Fraction(x)) for x in row) for row in matrix)


def adjugate(matrix: IntMatrix) -> IntMatrix:
    """adj(A) with A·adj(A) = det(A)·I."""
    determinant = det(matrix)
    if determinant == 0:
        raise SingularMatrix("Adjugate via inverse needs a nonsingular matrix")
    return to_integral(
        tuple(tuple(x * determinant for x in row) for row in inverse(matrix))
    )


def content(values: Iterable[int]) -> int:
    """gcd of all the values (0 for an all-zero input)."""
    return reduce(math.gcd, (abs(v) for v in values), 0)


def max_row_sum(matrix: Sequence[Sequence[Any]]) -> float:
    """Operator norm induced by the sup norm on vectors."""
    return float(max(sum(abs(Fraction(x)) for x in row) for row in matrix))


def to_float_array(matrix: Sequence[Sequence[Any]]) -> np.ndarray:
    for row in matrix:
        for x in row:
            value = Fraction(x)
            if max(abs(value.numerator), value.denominator) > FLOAT_EXACT_LIMIT:
                raise ExactArithmeticOverflow(
                    f"Entry {value} exceeds the exactly representable float range"
                )
    return np.array([[float(x) for x in row] for row in matrix], dtype=float)
