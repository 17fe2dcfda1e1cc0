from .checks import (
    check_refinement,
    check_unit_lattice_norm,
    compare_scaling_function,
    haar_cascade,
    xi_membership,
)
from .decay import DecayModel, lattice_tail, radial_tail, separable_tail, tensor_model
from .evaluator import SectionEvaluator, evaluate, evaluate_point
from .grid import GridSamples, LatticeSumResult, TorusGrid
from .inner import inner_at, module_inner_product, periodize, rigged_inner_product
from .operators import dilate, modulate
from .sections import (
    ClosedFormHaar,
    CosineBump,
    Dilated,
    MeyerScaling,
    MeyerWavelet,
    Modulated,
    Product,
    QuasiPeriodicTheta,
    Scaled,
    Section,
    Shifted,
    Sum,
    TensorProduct,
    TrigPolynomial,
    TruncatedProduct,
)

__all__ = [
    "ClosedFormHaar",
    "CosineBump",
    "DecayModel",
    "Dilated",
    "GridSamples",
    "LatticeSumResult",
    "MeyerScaling",
    "MeyerWavelet",
    "Modulated",
    "Product",
    "QuasiPeriodicTheta",
    "Scaled",
    "Section",
    "SectionEvaluator",
    "Shifted",
    "Sum",
    "TensorProduct",
    "TorusGrid",
    "TrigPolynomial",
    "TruncatedProduct",
    "check_refinement",
    "check_unit_lattice_norm",
    "compare_scaling_function",
    "dilate",
    "evaluate",
    "evaluate_point",
    "haar_cascade",
    "inner_at",
    "lattice_tail",
    "modulate",
    "module_inner_product",
    "periodize",
    "radial_tail",
    "rigged_inner_product",
    "separable_tail",
    "tensor_model",
    "xi_membership",
]
