import itertools
import json
import math
import random
from typing import Any, Iterable, List, Optional, Sequence

from torus_pmra.analysis.sections import ClosedFormHaar, Section, TensorProduct
from torus_pmra.frames import (
    FrameSet,
    band_limited_generators,
    dyadic_dilation,
    generate_frame,
)
from torus_pmra.ktheory import ExtElement
from torus_pmra.lattice import matrices
from torus_pmra.lattice.cosets import CosetTable, residue_key
from torus_pmra.serializers import Serializer


class SerializerStub(Serializer):
    @staticmethod
    def extension() -> str:
        return ".stub"

    def manifest(self, data: Any) -> str:
        return "stub"

    def serialize(self, data: Any) -> str:
        return json.dumps({"kind": getattr(data, "kind", "unknown")})

    def deserialize(self, serialized_data: str, manifest: Optional[str] = None) -> Any:
        return json.loads(serialized_data)


def random_unimodular(rng: random.Random, n: int, steps: int = 6) -> List[List[int]]:
    """A product of elementary row operations and sign flips."""
    m = [list(row) for row in matrices.identity(n)]
    for _ in range(steps):
        i, j = rng.sample(range(n), 2)
        k = rng.randint(-3, 3)
        m[i] = [a + k * b for a, b in zip(m[i], m[j])]
        if rng.random() < 0.3:
            m[j] = [-x for x in m[j]]
    return m


def random_element(
    rng: random.Random, n: int, degrees: Optional[Iterable[int]] = None
) -> ExtElement:
    """Coefficients in [-9, 9] on up to four monomials of the given degrees."""
    degrees = range(n + 1) if degrees is None else degrees
    monomials = [
        m for d in degrees for m in itertools.combinations(range(1, n + 1), d)
    ]
    picked = rng.sample(monomials, rng.randint(1, min(4, len(monomials))))
    return ExtElement.from_coeffs(n, {m: rng.randint(-9, 9) for m in picked})


def random_coprime_triple(
rng: random.Random, bound: int = 50) -> Sequence[int]:
    while True:
        triple = [rng.randint(-bound, bound) for _ in range(3)]
        if math.gcd(math.gcd(triple[0], triple[1]), triple[2]) == 1:
            return triple


def pairwise_incongruent(table: CosetTable) -> bool:
    power = table.spec.power(table.level)
    keys = {residue_key(power, v) for v in table.reps}
    return len(keys) == len(table.reps)


def haar_section(d: int, n: int = 1) -> Section:
    if n == 1:
        return ClosedFormHaar(d)
    return TensorProduct((ClosedFormHaar(d),) * n)


def band_limited_frame(n: int, depth: int, **kwargs: Any) -> FrameSet:
    generators = band_limited_generators(n)
    return generate_frame(
        dyadic_dilation(n), generators.scaling, generators.wavelets, depth, **kwargs
    )
