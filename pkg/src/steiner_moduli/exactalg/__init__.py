"""Exact arithmetic kernel: rationals, polynomials, matrices and pencils over Q."""

from .matrix import DimensionError, RatMatrix, bareiss_rank, rank, rref
from .pencil import (
    INFINITY,
    DropPoint,
    PencilAnalysis,
    PencilPoint,
    analyze_pencil,
    common_kernel_dim,
    determinantal_divisor,
    pencil_drop_locus,
    pencil_generic_rank,
    pencil_rank_at,
)
from .poly import UniPoly, poly_gcd, poly_xgcd, squarefree_part
from .scalars import Scalar, binomial, format_scalar, to_scalar

__all__ = [
    "DimensionError",
    "DropPoint",
    "INFINITY",
    "PencilAnalysis",
    "PencilPoint",
    "RatMatrix",
    "Scalar",
    "UniPoly",
    "analyze_pencil",
    "bareiss_rank",
    "binomial",
    "common_kernel_dim",
    "determinantal_divisor",
    "format_scalar",
    "pencil_drop_locus",
    "pencil_generic_rank",
    "pencil_rank_at",
    "poly_gcd",
    "poly_xgcd",
    "rank",
    "rref",
    "squarefree_part",
    "to_scalar",
]
