"""Exact linear algebra over Q and F_p."""

from .fields import GF, QQ, Field, ModInt, PrimeField, RationalField, field_of, parse_field
from .matrix import (
    Matrix,
    cef_with_transform,
    col_compress_with_transform,
    determinant,
    inverse,
    is_cef,
    is_ref,
    kernel_vectors,
    rank,
    ref_with_transform,
    row_compress_with_transform,
    rref,
    rref_with_transform,
    solve,
)
from .poly import (
    Polynomial,
    factor,
    parse_polynomial,
    poly_divexact,
    poly_eval,
    poly_gcd,
    poly_product,
)
from .subspace import (
    Subspace,
    complement_basis,
    image_basis,
    kernel_basis,
    quotient_map,
    subspace_intersect,
    subspace_sum,
)

__all__ = [
    "GF", "QQ", "Field", "ModInt", "PrimeField", "RationalField", "field_of", "parse_field",
    "Matrix", "cef_with_transform", "col_compress_with_transform", "determinant", "inverse",
    "is_cef", "is_ref", "kernel_vectors", "rank", "ref_with_transform",
    "row_compress_with_transform", "rref", "rref_with_transform", "solve",
    "Polynomial", "factor", "parse_polynomial", "poly_divexact", "poly_eval", "poly_gcd",
    "poly_product",
    "Subspace", "complement_basis", "image_basis", "kernel_basis", "quotient_map",
    "subspace_intersect", "subspace_sum",
]
