import itertools
import logging
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from torus_pmra.config import ConfigManager
from torus_pmra.exceptions import DimensionMismatch, LevelOverflow, ValidationError
from torus_pmra.helpers.typing import IntMatrix, IntVector
from torus_pmra.lattice import matrices
from torus_pmra.lattice.dilation import DilationSpec

logger = logging.getLogger(__name__)

ResidueKey = Tuple[int, ...]


class ResidueSystem:
    """
    Residues of Z^n modulo the sublattice M(Z^n) for a nonsingular integer M.

    Two vectors are congruent iff adj(M) w agrees mod |det M|, so the key is a
    complete invariant computed without leaving the integers.
    """

    def __init__(self, modulus: IntMatrix):
        self._modulus = modulus
        self._det = abs(matrices.det(modulus))
        self._adjugate = matrices.adjugate(modulus)

    @property
    def index(self) -> int:
        return self._det

    @property
    def modulus(self) -> IntMatrix:
        return self._modulus

    def key(self, w: Sequence[int]) -> ResidueKey:
        if len(w) != len(self._modulus):
            raise DimensionMismatch(
                f"Vector {tuple(w)} does not live in Z^{len(self._modulus)}"
            )
        return tuple(x % self._det for x in matrices.matvec(self._adjugate, w))

    def congruent(self, v: Sequence[int], w: Sequence[int]) -> bool:
        return self.key(v) == self.key(w)

    def box_size(self) -> int:
        """Smallest N with N*Z^n inside M(Z^n)."""
        spread = matrices.content(x for row in self._adjugate for x in row)
        return self._det // math.gcd(self._det, spread)

    def is_transversal(self, reps: Iterable[Sequence[int]]) -> bool:
        keys = [self.key(r) for r in reps]
        return len(keys) == self._det and len(set(keys)) == len(keys)


def coset_base(spec: DilationSpec) -> List[IntVector]:
    """
    Canonical representatives beta_0..beta_{d-1} of Z^n / A(Z^n).

    The box [0, N)^n is walked with the first coordinate varying fastest and the
    first point met in each residue class is kept, so beta_0 = 0.
    """
    residues = ResidueSystem(spec.entries)
    size = residues.box_size()
    seen: Dict[ResidueKey, IntVector] = {}
    for reversed_point in itertools.product(range(size), repeat=spec.n):
        point = tuple(reversed(reversed_point))
        key = residues.key(point)
        if key not in seen:
            seen[key] = point
            if len(seen) == spec.absdet:
                break
    return list(seen.values())


@dataclass(frozen=True)
class CosetTable:
    spec: DilationSpec
    level: int
    reps: Tuple[IntVector, ...]
    base: Tuple[IntVector, ...]
    _base_index: Dict[ResidueKey, int] = field(
        default_factory=dict, repr=False, compare=False
    )

    def __len__(self) -> int:
        return len(self.reps)

    def __getitem__(self, index: int) -> IntVector:
        return self.reps[index]

    def digits(self, index: int) -> List[int]:
        """Base-d digits b_0..b_{i-1} of an index, least significant first."""
        d = self.spec.absdet
        result = []
        for _ in range(self.level):
            index, digit = divmod(index, d)
            result.append(digit)
        return result

    def vector(self, index: int) -> IntVector:
        return self.reps[index]

    def index_of(self, w: Sequence[int]) -> int:
        return _reduce(self.spec, self.level, w, self.base, self._base_index)

    def refine(self, cap: Optional[int] = None) -> "CosetTable":
        """The level i+1 table; its first d^i entries are this table."""
        return coset_table(self.spec, self.level + 1, cap=cap)


def _level_cap(cap: Optional[int]) -> int:
    if cap is not None:
        return cap
    return ConfigManager().get_default_config().level_cap


def _base_lookup(
    spec: DilationSpec, base: Sequence[IntVector]
) -> Dict[ResidueKey, int]:
    residues = ResidueSystem(spec.entries)
    return {residues.key(beta): m for m, beta in enumerate(base)}


def coset_table(
    spec: DilationSpec, level: int, cap: Optional[int] = None
) -> CosetTable:
    """
    Representatives v_0..v_{d^i - 1} of Z^n / A^i(Z^n) by d-adic expansion.

    Entry l + m*d^j of the level j+1 table is A^j(beta_m) + v_l, which makes every
    table a prefix of the next one.

    Args:
        spec: the dilation.
        level: i >= 0.
        cap: upper bound on d^i; defaults to the configured level cap.

    Returns:
        The CosetTable for level i.
    """
    if level < 0:
        raise ValidationError(f"Level must be non-negative, got {level}")
    limit = _level_cap(cap)
    if spec.absdet ** level > limit:
        raise LevelOverflow(
            f"d^i = {spec.absdet}^{level} exceeds the level cap {limit}"
        )

    base = coset_base(spec)
    reps: List[IntVector] = [tuple([0] * spec.n)]
    power = matrices.identity(spec.n)
    for _ in range(level):
        shifts = [matrices.matvec(power, beta) for beta in base]
        reps = [
            tuple(s + x for s, x in zip(shift, v)) for shift in shifts for v in reps
        ]
        power = matrices.matmul(power, spec.entries)
    logger.debug("Built coset table of %d entries for level %d", len(reps), level)
    return CosetTable(
        spec=spec,
        level=level,
        reps=tuple(reps),
        base=tuple(base),
        _base_index=_base_lookup(spec, base),
    )


def _reduce(
    spec: DilationSpec,
    level: int,
    w: Sequence[int],
    base: Sequence[IntVector],
    lookup: Dict[ResidueKey, int],
) -> int:
    residues = ResidueSystem(spec.entries)
    inverse = matrices.inverse(spec.entries)
    current: Tuple[Fraction, ...] = tuple(
        Fraction(x) for x in matrices.as_int_vector(w)
    )
    if len(current) != spec.n:
        raise DimensionMismatch(f"Vector {tuple(w)} does not live in Z^{spec.n}")
    index = 0
    scale = 1
    for _ in range(level):
        digit = lookup[residues.key(tuple(int(x) for x in current))]
        index += digit * scale
        scale *= spec.absdet
        shifted = tuple(x - b for x, b in zip(current, base[digit]))
        current = matrices.matvec(inverse, shifted)
    return index


def reduce_mod(spec: DilationSpec, level: int, w: Sequence[int]) -> int:
    """The unique l with w congruent to v_l modulo A^i(Z^n)."""
    if level < 0:
        raise ValidationError(f"Level must be non-negative, got {level}")
    base = coset_base(spec)
    return _reduce(spec, level, w, base, _base_lookup(spec, base))


def residue_key(matrix: Iterable[Iterable[int]], w: Sequence[int]) -> ResidueKey:
    """Complete invariant of w modulo matrix(Z^n)."""
    return ResidueSystem(matrices.as_square_matrix(matrix)).key(w)
