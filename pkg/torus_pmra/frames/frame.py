import logging
from dataclasses import dataclass
from enum import Enum
from typing import List, Optional, Sequence, Tuple

from torus_pmra.analysis.operators import dilate, modulate
from torus_pmra.analysis.sections import Section
from torus_pmra.exceptions import DimensionMismatch, ValidationError
from torus_pmra.lattice.cosets import CosetTable, coset_table
from torus_pmra.lattice.dilation import DilationSpec

logger = logging.getLogger(__name__)


class ElementTag(str, Enum):
    SCALING = "scaling"
    WAVELET = "wavelet"


@dataclass(frozen=True)
class FrameElement:
    """
    D^level epsilon_{v_coset}(Psi_generator) for wavelets; the bare Phi_generator
    at level 0 for scaling elements.
    """

    level: int
    coset: int
    generator: int
    section: Section
    tag: ElementTag


@dataclass(frozen=True)
class FrameSet:
    spec: DilationSpec
    depth: int
    elements: Tuple[FrameElement, ...]
    tables: Tuple[CosetTable, ...]
    scaling_count: int
    wavelet_count: int

    def scaling_elements(self) -> Tuple[FrameElement, ...]:
        return tuple(e for e in self.elements if e.tag is ElementTag.SCALING)

    def level_elements(self, level: int) -> Tuple[FrameElement, ...]:
        if not 0 <= level <= self.depth:
            raise ValidationError(f"Level {level} outside 0..{self.depth}")
        return tuple(
            e
            for e in self.elements
            if e.tag is ElementTag.WAVELET and e.level == level
        )

    def level_count(self, level: int) -> int:
        """r d^level, the rank W_level is free of."""
        return self.wavelet_count * self.spec.absdet ** level

    def expected_count(self) -> int:
        return self.scaling_count + sum(
            self.level_count(i) for i in range(self.depth + 1)
        )


def _check_generators(spec: DilationSpec, sections: Sequence[Section]) -> None:
    for s in sections:
        if s.n != spec.n:
            raise DimensionMismatch(
                f"Generator on n = {s.n} for a dilation on n = {spec.n}"
            )


def generate_frame(
    spec: DilationSpec,
    phis: Sequence[Section],
    psis: Sequence[Section],
    depth: int,
    cap: Optional[int] = None,
) -> FrameSet:
    """
    The frame {Phi_k} together with {D^i epsilon_{v_l}(Psi_k)} for i <= depth.

    Args:
        spec: the dilation A
        phis: a frame of V_0
        psis: a frame of W_0
        depth: the deepest wavelet level
        cap: largest allowed d^i, defaults to the configured level cap

    Returns:
        The FrameSet, scaling elements first, then ordered by level, coset and
        generator. Level i uses exactly the level-i coset table.
    """
    if depth < 0:
        raise ValidationError(f"Depth must be non-negative, got {depth}")
    _check_generators(spec, phis)
    _check_generators(spec, psis)

    elements: List[FrameElement] = [
        FrameElement(0, 0, k, phi, ElementTag.SCALING) for k, phi in enumerate(phis)
    ]
    tables = []
    for level in range(depth + 1):
        table = coset_table(spec, level, cap)
        tables.append(table)
        for l, v in enumerate(table.reps):
            for k, psi in enumerate(psis):
                elements.append(
                    FrameElement(
                        level=level,
                        coset=l,
                        generator=k,
                        section=dilate(spec, modulate(v, psi), level),
                        tag=ElementTag.WAVELET,
                    )
                )
        logger.debug("Frame level %d: %d coset representatives", level, len(table))

    frame = FrameSet(
        spec=spec,
        depth=depth,
        elements=tuple(elements),
        tables=tuple(tables),
        scaling_count=len(phis),
        wavelet_count=len(psis),
    )
    logger.info(
        "Generated a frame of %d elements up to depth %d", len(elements), depth
    )
    return frame
