"""Exact arithmetic: number fields, Laurent polynomials, elimination, saturation."""

from . import kernels
from .field import (
    NumberField,
    Q,
    cyclotomic_field,
    cyclotomic_poly,
    field_for_order,
    nontorsion_field,
)
from .laurent import (
    LaurentPoly,
    frac_rank_and_kernel,
    normalize_vector,
    poly_det,
    poly_echelon,
    specialize_u,
)
from .linalg import (
    ExactMatrix,
    complement_projection,
    kernel_from_rref,
    left_dependency,
    matmul,
    rank,
    rank_and_kernel,
    rref,
    transpose,
)
from .saturation import reduction_at_one, saturate_at_u1, saturate_independent

__all__ = [
    "ExactMatrix",
    "LaurentPoly",
    "NumberField",
    "Q",
    "complement_projection",
    "cyclotomic_field",
    "cyclotomic_poly",
    "field_for_order",
    "frac_rank_and_kernel",
    "kernel_from_rref",
    "kernels",
    "left_dependency",
    "matmul",
    "nontorsion_field",
    "normalize_vector",
    "poly_det",
    "poly_echelon",
    "rank",
    "rank_and_kernel",
    "reduction_at_one",
    "rref",
    "saturate_at_u1",
    "saturate_independent",
    "specialize_u",
    "transpose",
]
