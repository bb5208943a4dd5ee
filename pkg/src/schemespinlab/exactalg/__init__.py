"""Exact cyclotomic arithmetic and small dense matrices."""

from .cyclotomic import Cyclo, cyclotomic_polynomial, totient
from .jsonio import decode_scalar, encode_scalar, mat_from_json, mat_to_json
from .linalg import (SingularMatrix, coordinates, inverse, nullspace, nullspace_exact, rank,
                     rref, solve_exact)
from .mat import DEFAULT_TOL, DimensionMismatch, Mat, SchurSingular, combine, schur_inverse, schur_product
from .scalars import (NotCyclotomic, as_scalar, conj, cyclo_sqrt_int, exact_sqrt, is_exact, recognize,
                      root_of_unity, to_complex)
from .spectral import (NonCommuting, NotDiagonalizable, eigen_decomposition,
                       simultaneous_eigenprojections)
from .surd import Surd

__all__ = [
    "Cyclo", "Surd", "Mat", "DEFAULT_TOL", "DimensionMismatch", "SchurSingular", "SingularMatrix",
    "NonCommuting", "NotDiagonalizable", "NotCyclotomic", "cyclotomic_polynomial", "totient",
    "as_scalar", "conj", "to_complex", "is_exact", "root_of_unity", "cyclo_sqrt_int", "exact_sqrt",
    "recognize", "schur_product", "schur_inverse", "combine", "inverse", "rank", "rref", "nullspace",
    "nullspace_exact", "solve_exact", "coordinates", "simultaneous_eigenprojections",
    "eigen_decomposition", "mat_to_json", "mat_from_json", "encode_scalar", "decode_scalar",
]
