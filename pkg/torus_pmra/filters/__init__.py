from .bank import (
    FilterBank,
    dft_completion,
    gram_schmidt_completion,
    haar_filter_bank,
    tensor_filter,
    translate_gram,
    verify_filter_bank,
    verify_tensor_filter,
)
from .trigpoly import MultiTrigPoly, TrigPoly, e

__all__ = [
    "FilterBank",
    "MultiTrigPoly",
    "TrigPoly",
    "dft_completion",
    "e",
    "gram_schmidt_completion",
    "haar_filter_bank",
    "tensor_filter",
    "translate_gram",
    "verify_filter_bank",
    "verify_tensor_filter",
]
