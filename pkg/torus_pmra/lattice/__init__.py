from .cosets import (
    CosetTable,
    ResidueSystem,
    coset_base,
    coset_table,
    reduce_mod,
    residue_key,
)
from .dilation import (
    DilationForm,
    DilationSpec,
    conjugate_spec,
    diagonal_dilation,
    validate_dilation,
)
from .unimodular import (
    UnimodularCompletion,
    Witnesses,
    cofactor_triple,
    extended_gcd,
    sl3_with_cofactors,
)

__all__ = [
    "CosetTable",
    "DilationForm",
    "DilationSpec",
    "ResidueSystem",
    "UnimodularCompletion",
    "Witnesses",
    "cofactor_triple",
    "conjugate_spec",
    "coset_base",
    "coset_table",
    "diagonal_dilation",
    "extended_gcd",
    "reduce_mod",
    "residue_key",
    "sl3_with_cofactors",
    "validate_dilation",
]
