import logging
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Any, Iterable, Optional

import numpy as np

from torus_pmra.exceptions import (
    InvalidMatrix,
    NonIntegerConjugate,
    NotExpanding,
    NotUnimodular,
    SingularMatrix,
)
from torus_pmra.helpers.typing import IntMatrix, IntVector, RationalMatrix
from torus_pmra.lattice import matrices

logger = logging.getLogger(__name__)


class DilationForm(str, Enum):
    DIAGONAL = "diagonal"
    CONJUGATED = "conjugated"
    GENERAL = "general"


@dataclass(frozen=True)
class DilationSpec:
    """
    A validated integer dilation matrix A.

    `diagonal` holds d_1..d_n for the diagonal and conjugated forms; for the
    conjugated form `entries` is M = S^-1 diag(d) S with `conjugator` S.
    """

    entries: IntMatrix
    form: DilationForm
    det: int
    diagonal: Optional[IntVector] = None
    conjugator: Optional[IntMatrix] = None

    @property
    def n(self) -> int:
        return len(self.entries)

    @property
    def absdet(self) -> int:
        return abs(self.det)

    @property
    def det_sign(self) -> int:
        return 1 if self.det > 0 else -1

    @property
    def is_scalar(self) -> bool:
        return (
            self.form is DilationForm.DIAGONAL
            and self.diagonal is not None
            and len(set(self.diagonal)) == 1
        )

    def power(self, exponent: int) -> IntMatrix:
        """A^exponent for exponent >= 0."""
        return matrices.matpow(self.entries, exponent)

    def frequency_map(self, exponent: int) -> RationalMatrix:
        """
        (A^t)^-exponent, the linear map behind the frequency-domain dilation D^exponent.
        """
        transposed = matrices.transpose(self.entries)
        if exponent >= 0:
            return matrices.inverse(matrices.matpow(transposed, exponent))
        powered = matrices.matpow(transposed, -exponent)
        return tuple(tuple(Fraction(x) for x in row) for row in powered)

    def transposed(self) -> "DilationSpec":
        return validate_dilation(matrices.transpose(self.entries))


def _check_conjugator(conjugator: IntMatrix, n: int, require_sl: bool) -> int:
    if len(conjugator) != n:
        raise InvalidMatrix(f"Conjugator must be {n}x{n}")
    determinant = matrices.det(conjugator)
    if abs(determinant) != 1:
        raise NotUnimodular(f"Conjugator has determinant {determinant}, not +-1")
    if require_sl and determinant != 1:
        raise NotUnimodular("Conjugator must lie in SL(n, Z) (determinant +1)")
    return determinant


def _check_expanding_diagonal(entries: IntVector) -> None:
    small = [d for d in entries if abs(d) <= 1]
    if small:
        raise NotExpanding(f"Diagonal factors {small} have absolute value <= 1")


def _check_expanding_general(matrix: IntMatrix) -> None:
    eigenvalues = np.linalg.eigvals(matrices.to_float_array(matrix))
    if np.min(np.abs(eigenvalues)) <= 1.0 + 1e-12:
        raise NotExpanding(
            f"Matrix {matrix} has an eigenvalue of modulus <= 1: {eigenvalues}"
        )


def _conjugate(
    diagonal_matrix: IntMatrix, conjugator: IntMatrix
) -> IntMatrix:
    product = matrices.matmul(
        matrices.inverse(conjugator), matrices.matmul(diagonal_matrix, conjugator)
    )
    if not matrices.is_integral(product):
        raise NonIntegerConjugate(f"S^-1 A S = {product} is not integral")
    return matrices.to_integral(product)


def validate_dilation(
    matrix: Iterable[Iterable[Any]],
    conjugator: Optional[Iterable[Iterable[Any]]] = None,
    require_sl: bool = False,
) -> DilationSpec:
    """
    Validates an integer dilation matrix and recognizes its factored form.

    Args:
        matrix: square integer matrix, row major. When `conjugator` is given it is
            either the diagonal factor A (and the spec becomes M = S^-1 A S) or M
            itself, in which case S M S^-1 must come out diagonal.
        conjugator: optional S, unimodular.
        require_sl: demand det S = +1.

    Returns:
        The DilationSpec with its exact determinant.
    """
    entries = matrices.as_square_matrix(matrix)
    n = len(entries)

    if conjugator is not None:
        s = matrices.as_square_matrix(conjugator)
        _check_conjugator(s, n, require_sl)
        if matrices.is_diagonal(entries):
            factors = matrices.diagonal_entries(entries)
            conjugated = _conjugate(entries, s)
        else:
            inner = matrices.matmul(
                s, matrices.matmul(entries, matrices.inverse(s))
            )
            if not matrices.is_integral(inner):
                raise NonIntegerConjugate(f"S A S^-1 = {inner} is not integral")
            if not matrices.is_diagonal(inner):
                raise InvalidMatrix(f"Conjugator does not diagonalize {entries}")
            factors = matrices.diagonal_entries(matrices.to_integral(inner))
            conjugated = entries
        if any(f == 0 for f in factors):
            raise SingularMatrix("Dilation matrix is singular")
        _check_expanding_diagonal(factors)
        determinant = matrices.det(conjugated)
        return DilationSpec(
            entries=conjugated,
            form=DilationForm.CONJUGATED,
            det=determinant,
            diagonal=factors,
            conjugator=s,
        )

    determinant = matrices.det(entries)
    if determinant == 0:
        raise SingularMatrix(f"Dilation matrix {entries} is singular")

    if matrices.is_diagonal(entries):
        factors = matrices.diagonal_entries(entries)
        _check_expanding_diagonal(factors)
        return DilationSpec(
            entries=entries,
            form=DilationForm.DIAGONAL,
            det=determinant,
            diagonal=factors,
        )

    if abs(determinant) <= 1:
        raise NotExpanding(f"|det| = {abs(determinant)} must exceed 1")
    _check_expanding_general(entries)
    logger.warning(
        "Accepted non-diagonal dilation %s without a conjugator; "
        "K-theory operations will reject it",
        entries,
    )
    return DilationSpec(entries=entries, form=DilationForm.GENERAL, det=determinant)


def conjugate_spec(
    conjugator: Iterable[Iterable[Any]], diagonal_spec: DilationSpec
) -> DilationSpec:
    """M = S^-1 A S for a diagonal spec A and unimodular S."""
    if diagonal_spec.form is not DilationForm.DIAGONAL:
        raise InvalidMatrix("conjugate_spec expects a diagonal dilation")
    return validate_dilation(diagonal_spec.entries, conjugator=conjugator)


def diagonal_dilation(*factors: int) -> DilationSpec:
    return validate_dilation(matrices.diagonal(factors))
