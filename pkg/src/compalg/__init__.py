"""Exact computations with associative composition algebras.

Quadratic and quaternion algebras over the rationals and prime fields,
matrices over them (doubling representation, Study determinant, rank over
the algebra, guaranteed low-rank combinations), Poincare polynomials of the
classical quotients attached to pairs of such algebras, Weyl-group invariant
rings and index counts, integer-lattice exact-sequence checks, and Clifford
algebras with their groups.  Everything is exact; there is no floating point
anywhere in the package.

All value types are immutable, so they can be shared freely across threads
or processes; the verification harnesses are embarrassingly parallel over
trials if a caller wants to distribute them.
"""

from .fields import QQ, PrimeField, QuadExt, RationalField, Scalar, is_square
from .quaternion import (
    Mat2Algebra,
    Mat2Element,
    QuatAlgebra,
    QuaternionElement,
    mat2_to_quat,
    quat_to_mat2,
)
from .matrices import (
    CompMatrix,
    FieldMatrix,
    flatten_split,
    is_invertible,
    skew_column_rank,
    skew_solve,
    split_pair,
    study_det,
    symplectic_rep,
    unflatten_split,
)
from .rank import (
    SpanReport,
    comp_rank,
    dependence_bound,
    low_rank_combination,
    verify_span_bound,
)

__version__ = "0.1.0"

__all__ = [
    "QQ",
    "PrimeField",
    "QuadExt",
    "RationalField",
    "Scalar",
    "is_square",
    "Mat2Algebra",
    "Mat2Element",
    "QuatAlgebra",
    "QuaternionElement",
    "mat2_to_quat",
    "quat_to_mat2",
    "CompMatrix",
    "FieldMatrix",
    "flatten_split",
    "is_invertible",
    "skew_column_rank",
    "skew_solve",
    "split_pair",
    "study_det",
    "symplectic_rep",
    "unflatten_split",
    "SpanReport",
    "comp_rank",
    "dependence_bound",
    "low_rank_combination",
    "verify_span_bound",
]
