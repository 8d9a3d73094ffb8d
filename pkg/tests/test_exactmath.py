from __future__ import annotations

from fractions import Fraction

import pytest
import sympy
from hypothesis import given, strategies as st

from smashcyc.exactmath import (ExactMatrix, Cyclotomic, cyclotomic, cyclotomic_polynomial, zeta,
                                q_integer, q_binomial, format_scalar, parse_scalar, rank,
                                kernel_basis, image_basis, inverse, solve, in_span,
                                make_subquotient, induced_map, quotient, intersect_coordinate,
                                NotInvertible, NotWellDefined, ContainmentViolation,
                                DimensionMismatch, MAX_ORDER)

from conftest import matrices, small_rationals, to_sympy


# -- scalars ---------------------------------------------------------------


@pytest.mark.parametrize("n", range(1, MAX_ORDER + 1))
def test_cyclotomic_polynomial_matches_sympy(n):
    x = sympy.symbols("x")
    ref = sympy.Poly(sympy.cyclotomic_poly(n, x), x).all_coeffs()[::-1]
    assert list(cyclotomic_polynomial(n)) == [int(c) for c in ref]


@pytest.mark.parametrize("n", [3, 4, 5, 6, 8, 12])
def test_root_of_unity_has_exact_order(n):
    z = zeta(n)
    assert isinstance(z, Cyclotomic)
    assert z ** n == 1
    assert all(z ** k != 1 for k in range(1, n))


def test_i_squared():
    assert zeta(4) ** 2 == -1


@pytest.mark.parametrize("n", [2, 3, 4, 5, 6])
def test_q_integer_vanishes_at_root_of_unity(n):
    assert q_integer(n, zeta(n) if n > 2 else -1) == 0
    assert q_integer(1, zeta(n) if n > 2 else -1) == 1


def test_q_binomial_at_q_one_is_binomial():
    from math import comb
    for n in range(6):
        for k in range(n + 1):
            assert q_binomial(n, k, 1) == comb(n, k)


coeff_lists = st.lists(small_rationals, min_size=1, max_size=6)


@given(coeff_lists, coeff_lists, coeff_lists, st.sampled_from([3, 5, 8, 12]))
def test_cyclotomic_field_axioms(a, b, c, n):
    x, y, z = cyclotomic(n, a), cyclotomic(n, b), cyclotomic(n, c)
    assert (x + y) * z == x * z + y * z
    assert (x * y) * z == x * (y * z)
    assert x * y == y * x
    if x != 0:
        assert x * (1 / x) == 1


@given(coeff_lists, st.sampled_from([1, 3, 7, 10]))
def test_scalar_serialization_roundtrip(a, n):
    x = cyclotomic(n, a)
    assert parse_scalar(format_scalar(x)) == x


def test_rationals_demoted():
    assert cyclotomic(5, [Fraction(3, 2)]) == Fraction(3, 2)
    assert not isinstance(cyclotomic(4, [1, 0, 1]), Cyclotomic)   # 1 + i^2 = 0
    with pytest.raises(ValueError):
        cyclotomic(MAX_ORDER + 1, [0, 1])


# -- matrices --------------------------------------------------------------


@given(matrices())
def test_rank_matches_sympy(m):
    assert rank(m) == to_sympy(m).rank()


@given(matrices())
def test_kernel_basis_is_kernel(m):
    K = kernel_basis(m)
    assert (m @ K).is_zero()
    assert K.ncols == m.ncols - rank(m)
    assert rank(K) == K.ncols


@given(matrices())
def test_image_basis_spans_image(m):
    im = image_basis(m)
    assert rank(im) == im.ncols == rank(m)
    assert in_span(im, m)


@given(matrices(4, 4))
def test_inverse(m):
    if m.nrows != m.ncols or rank(m) < m.nrows:
        with pytest.raises(NotInvertible):
            inverse(m)
        return
    inv = inverse(m)
    assert (m @ inv).is_identity() and (inv @ m).is_identity()
    assert inv == ExactMatrix.from_dense(to_sympy(m).inv().tolist())


@given(matrices(), matrices())
def test_kron_mixed_product(a, b):
    # (A (x) B)(A^T (x) B^T) = A A^T (x) B B^T
    lhs = a.kron(b) @ a.T.kron(b.T)
    assert lhs == (a @ a.T).kron(b @ b.T)


def test_cyclotomic_rank():
    z = zeta(3)
    m = ExactMatrix.from_dense([[1, z], [z, z * z]])
    assert rank(m) == 1
    m2 = ExactMatrix.from_dense([[1, z], [z * z, z]])
    assert rank(m2) == 2


def test_solve_and_containment():
    k = ExactMatrix.from_dense([[1, 0], [0, 1], [1, 1]])
    w = ExactMatrix.from_dense([[2], [3], [5]])
    assert k @ solve(k, w) == w
    with pytest.raises(ContainmentViolation):
        solve(k, ExactMatrix.from_dense([[1], [0], [0]]))


def test_dimension_mismatch():
    with pytest.raises(DimensionMismatch):
        ExactMatrix.identity(2) @ ExactMatrix.identity(3)


# -- subquotients ----------------------------------------------------------


def test_subquotient_and_induced_map():
    # Z = span(e0, e1), B = span(e0) in k^3; the shift e0->e1->e2 is not defined on Z/B
    z = ExactMatrix.from_dense([[1, 0], [0, 1], [0, 0]])
    b = ExactMatrix.from_dense([[1], [0], [0]])
    sq = make_subquotient(z, b)
    assert sq.dim == 1
    proj = ExactMatrix.from_dense([[1, 0, 0], [0, 1, 0], [0, 0, 0]])
    assert induced_map(proj, sq, sq) == ExactMatrix.identity(1)
    shift = ExactMatrix.from_dense([[0, 0, 0], [1, 0, 0], [0, 1, 0]])
    with pytest.raises(NotWellDefined):
        induced_map(shift, sq, sq)
    with pytest.raises(ContainmentViolation):
        make_subquotient(b, z)


@given(matrices(5, 4))
def test_quotient_dimension(m):
    assert quotient(m.nrows, m).dim == m.nrows - rank(m)


def test_intersect_coordinate():
    span = ExactMatrix.from_dense([[1, 0], [1, 1], [0, 1]])
    # vectors of span with last coordinate zero: multiples of (1, 1, 0)
    sub = intersect_coordinate(span, [0, 1])
    assert sub.ncols == 1
    assert sub[2, 0] == 0 and sub[0, 0] == sub[1, 0] != 0
