"""The free braided algebra and its quotients."""

from .bicharacter import Bicharacter, coefficient
from .hopf import (
    GradedVector,
    all_serre_elements,
    comult,
    pairing_gram,
    serre_degree,
    serre_element,
    specialize_vector,
)
from .slices import (
    AlgebraSlice,
    DualSlice,
    certified_generic_ranks,
    classical_slice,
    coideal_defect,
    dk_ideal,
    dk_slice,
    free_slice,
    frobenius_dim_identity,
    lusztig_dual_view,
    primitives,
    serre_generates,
    serre_quotient_slice,
    small_dim,
    small_slice,
)
from .words import words_of

__all__ = [
    "AlgebraSlice",
    "Bicharacter",
    "DualSlice",
    "GradedVector",
    "all_serre_elements",
    "certified_generic_ranks",
    "classical_slice",
    "coefficient",
    "coideal_defect",
    "comult",
    "dk_ideal",
    "dk_slice",
    "free_slice",
    "frobenius_dim_identity",
    "lusztig_dual_view",
    "pairing_gram",
    "primitives",
    "serre_degree",
    "serre_element",
    "serre_generates",
    "serre_quotient_slice",
    "small_dim",
    "small_slice",
    "specialize_vector",
    "words_of",
]
