"""
Band-limited generators for dilation by 2 in each variable: the smoothed-indicator
scaling section and its wavelet in one variable, and their tensor products.
"""
import itertools
from dataclasses import dataclass
from typing import Tuple

from torus_pmra.analysis.sections import (
    MeyerScaling,
    MeyerWavelet,
    Section,
    TensorProduct,
)
from torus_pmra.exceptions import ValidationError
from torus_pmra.lattice.dilation import DilationSpec, diagonal_dilation

SUPPORTED_DIMENSIONS = (1, 2, 3)


@dataclass(frozen=True)
class Generators:
    """Frames {Phi_k} of V_0 and {Psi_k} of W_0."""

    scaling: Tuple[Section, ...]
    wavelets: Tuple[Section, ...]

    @property
    def n(self) -> int:
        return self.scaling[0].n


def band_limited_generators(n: int) -> Generators:
    """
    s = 1 scaling section and r = 2^n - 1 wavelet sections on R^n.

    Wavelets are the tensor products with at least one wavelet factor, in
    itertools.product order over (scaling, wavelet) per axis.
    """
    if n not in SUPPORTED_DIMENSIONS:
        raise ValidationError(
            f"Band-limited generators exist for n in {SUPPORTED_DIMENSIONS}, got {n}"
        )
    phi, psi = MeyerScaling(), MeyerWavelet()
    if n == 1:
        return Generators(scaling=(phi,), wavelets=(psi,))
    combos = list(itertools.product((phi, psi), repeat=n))
    return Generators(
        scaling=(TensorProduct(combos[0]),),
        wavelets=tuple(TensorProduct(c) for c in combos[1:]),
    )


def dyadic_dilation(n: int) -> DilationSpec:
    """diag(2, .., 2), the dilation the band-limited generators refine under."""
    return diagonal_dilation(*([2] * n))
