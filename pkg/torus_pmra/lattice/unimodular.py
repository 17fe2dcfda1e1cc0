import logging
import math
from dataclasses import dataclass
from typing import Any, Iterable, Tuple

from torus_pmra.exceptions import InvalidMatrix, NotCoprime
from torus_pmra.helpers.typing import IntMatrix
from torus_pmra.lattice import matrices

logger = logging.getLogger(__name__)


def extended_gcd(a: int, b: int) -> Tuple[int, int, int]:
    """
    Returns (g, s, t) with s*a + t*b = g = gcd(a, b) >= 0.
    """
    old_r, r = a, b
    old_s, s = 1, 0
    old_t, t = 0, 1
    while r:
        quotient = old_r // r
        old_r, r = r, old_r - quotient * r
        old_s, s = s, old_s - quotient * s
        old_t, t = t, old_t - quotient * t
    if old_r < 0:
        return -old_r, -old_s, -old_t
    return old_r, old_s, old_t


def extended_gcd3(x: int, y: int, z: int) -> Tuple[int, int, int, int]:
    """(g, p, q, r) with p*x + q*y + r*z = g = gcd(x, y, z)."""
    g1, s1, t1 = extended_gcd(x, y)
    g, s2, r = extended_gcd(g1, z)
    return g, s2 * s1, s2 * t1, r


@dataclass(frozen=True)
class Witnesses:
    b11: int
    b12: int
    b13: int
    nu: int
    alpha: int
    beta: int
    sigma: int
    tau: int


@dataclass(frozen=True)
class UnimodularCompletion:
    target: Tuple[int, int, int]
    matrix: IntMatrix
    witnesses: Witnesses


def cofactor_triple(matrix: Iterable[Iterable[Any]]) -> Tuple[int, int, int]:
    """
    The cofactors (x, y, z) of the last two rows of a 3x3 integer matrix:
    x = b22 b31 - b21 b32, y = b23 b31 - b21 b33, z = b23 b32 - b22 b33.
    """
    b = matrices.as_square_matrix(matrix)
    if len(b) != 3:
        raise InvalidMatrix(f"Cofactor triples need a 3x3 matrix, got n = {len(b)}")
    (_, _, _), (b21, b22, b23), (b31, b32, b33) = b
    return (
        b22 * b31 - b21 * b32,
        b23 * b31 - b21 * b33,
        b23 * b32 - b22 * b33,
    )


def _balanced(alpha: int, beta: int, y: int) -> Tuple[int, int]:
    # alpha*tau + beta*sigma = y with |tau| as small as the solution family allows
    _, s, t = extended_gcd(alpha, beta)
    tau, sigma = s * y, t * y
    if beta != 0:
        sign = 1 if beta > 0 else -1
        step = abs(beta)
        k = (-2 * tau + step) // (2 * step)
        tau += k * step
        sigma -= k * alpha * sign
    return tau, sigma


def sl3_with_cofactors(x: int, y: int, z: int) -> UnimodularCompletion:
    """
    Builds B in SL(3, Z) whose last two rows have the cofactors (x, y, z).

    The first row solves -b11 z + b12 y - b13 x = 1, which is det B once the
    last two rows are (-alpha, 0, beta) and (sigma, nu, tau) with nu = gcd(x, z),
    x = nu alpha, z = nu beta and alpha tau + beta sigma = y.

    Args:
        x: first cofactor.
        y: second cofactor.
        z: third cofactor.

    Returns:
        The completion with its intermediate witnesses.
    """
    x, y, z = int(x), int(y), int(z)
    g, p, q, r = extended_gcd3(x, y, z)
    if g != 1:
        raise NotCoprime(f"gcd({x}, {y}, {z}) = {g}, expected 1")

    b11, b12, b13 = -r, q, -p
    nu = math.gcd(x, z)
    if nu == 0:
        alpha, beta = 1, 0
    else:
        alpha, beta = x // nu, z // nu
    tau, sigma = _balanced(alpha, beta, y)

    b = (
        (b11, b12, b13),
        (-alpha, 0, beta),
        (sigma, nu, tau),
    )
    determinant = matrices.det(b)
    if determinant != 1 or cofactor_triple(b) != (x, y, z):
        raise ArithmeticError(f"Completion {b} failed its own check")
    logger.debug("Completed cofactors %s to %s", (x, y, z), b)
    return UnimodularCompletion(
        target=(x, y, z),
        matrix=b,
        witnesses=Witnesses(b11, b12, b13, nu, alpha, beta, sigma, tau),
    )
