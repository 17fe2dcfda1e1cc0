from .frame import ElementTag, FrameElement, FrameSet, generate_frame
from .generators import Generators, band_limited_generators, dyadic_dilation
from .verification import (
    certify_free_rank,
    character_sum,
    density_profile,
    expected_gram,
    gram_report,
    sample_corpus,
    verify_frame,
    verify_reconstruction,
)

__all__ = [
    "ElementTag",
    "FrameElement",
    "FrameSet",
    "Generators",
    "band_limited_generators",
    "certify_free_rank",
    "character_sum",
    "density_profile",
    "dyadic_dilation",
    "expected_gram",
    "generate_frame",
    "gram_report",
    "sample_corpus",
    "verify_frame",
    "verify_reconstruction",
]
