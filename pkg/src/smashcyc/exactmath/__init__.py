"""Exact scalars, sparse matrices and linear algebra over Q and Q(zeta_N)."""

from .scalars import (Cyclotomic, cyclotomic, cyclotomic_polynomial, zeta, rational,
                      q_integer, q_binomial, format_scalar, parse_scalar, div,
                      field_order, MAX_ORDER)
from .matrix import ExactMatrix, DimensionMismatch
from .linalg import (rank, kernel_basis, image_basis, pivot_columns, nullity, inverse,
                     solve, in_span, rref, Subquotient, make_subquotient,
                     subquotient_dim, induced_map, quotient, intersect_coordinate,
                     ContainmentViolation, NotWellDefined, NotInvertible)
