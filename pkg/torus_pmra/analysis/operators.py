"""
The frequency-domain operators acting on sections: dilation D^i and modulation by
integer frequencies.
"""
from typing import Sequence

from torus_pmra.analysis.sections import Dilated, Modulated, Section
from torus_pmra.exceptions import DimensionMismatch
from torus_pmra.lattice import matrices
from torus_pmra.lattice.dilation import DilationSpec


def dilate(spec: DilationSpec, section: Section, power: int) -> Section:
    """
    D^power(section): x -> d^(-power/2) section((A^t)^-power x).

    Powers compose additively, so a dilated section dilated again by the same spec
    collapses to a single wrapper.
    """
    if section.n != spec.n:
        raise DimensionMismatch(
            f"Dilation on n = {spec.n} applied to a section on n = {section.n}"
        )
    if power == 0:
        return section
    if isinstance(section, Dilated) and section.spec == spec:
        total = section.power + power
        return section.inner if total == 0 else Dilated(spec, section.inner, total)
    return Dilated(spec, section, power)


def modulate(v: Sequence[int], section: Section) -> Section:
    """epsilon_v(section): x -> e(-v . x) section(x)."""
    shift = matrices.as_int_vector(v)
    if len(shift) != section.n:
        raise DimensionMismatch(
            f"Modulation by {shift} of a section on n = {section.n}"
        )
    if not any(shift):
        return section
    if isinstance(section, Modulated):
        combined = tuple(a + b for a, b in zip(section.v, shift))
        return modulate(combined, section.inner)
    return Modulated(shift, section)
