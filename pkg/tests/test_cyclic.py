from __future__ import annotations

import pytest
from hypothesis import given, strategies as st

from smashcyc.algebra import tensor_algebra
from smashcyc.cyclic import (AlgebraCyclicModule, MixedComplex, check_axioms, check_b_B_relations,
                             check_generation, mixed_complex_of)
from smashcyc.cylindrical import CylindricalModule
from smashcyc.exactmath import ExactMatrix
from smashcyc.presets import cyclic_group, dual_numbers, sweedler, preset, pareigis_rmap
from smashcyc.report import AxiomViolation

ALGEBRAS = {
    "K2": cyclic_group(2),
    "Z3": cyclic_group(3),
    "D": dual_numbers(),
    "H4": sweedler().alg,
    "P1": preset("pareigis_surrogate(1)").algebra,
}


@pytest.mark.parametrize("name", sorted(ALGEBRAS))
@pytest.mark.parametrize("generated", [False, True])
def test_algebra_cyclic_module_axioms(name, generated):
    C = AlgebraCyclicModule(ALGEBRAS[name], generated=generated)
    n_max = 3 if ALGEBRAS[name].dim <= 3 else 2
    assert check_axioms(C, n_max, "cyclic").passed
    assert check_b_B_relations(C, n_max).passed


@pytest.mark.parametrize("name", sorted(ALGEBRAS))
def test_generation_matches_direct_formulas(name):
    C = AlgebraCyclicModule(ALGEBRAS[name])
    assert check_generation(C, 2).passed


def test_generated_first_face_multiplies():
    # generated d_0 on C_1(K2): x ⊗ x -> x x = 1
    C = AlgebraCyclicModule(cyclic_group(2), generated=True)
    sp = C.space(1)
    col = C.face(1, 0).cols[sp.vector("x", "x")]
    assert col == {C.space(0).vector("1"): 1}
    col = C.face(1, 0).cols[sp.vector("1", "x")]
    assert col == {C.space(0).vector("x"): 1}


def test_t_is_rotation():
    C = AlgebraCyclicModule(dual_numbers())
    sp = C.space(2)
    # t(a0, a1, a2) = (a2, a0, a1)
    assert C.t(2).cols[sp.vector("1", "1", "s")] == {sp.vector("s", "1", "1"): 1}


def test_paracyclic_row_is_not_cyclic():
    cyl = CylindricalModule(pareigis_rmap(1))
    row = cyl.row(0)
    assert check_axioms(row, 3, "paracyclic").passed
    rep = check_axioms(row, 3, "cyclic")
    assert not rep.passed
    bad = rep.find("t^{n+1} = id")
    failing = [c for c in bad if not c.passed]
    assert failing and failing[0].witness["lhs"] != failing[0].witness["rhs"]


def test_b_B_relation_is_nontrivial_on_paracyclic_row():
    cyl = CylindricalModule(pareigis_rmap(1))
    row = cyl.row(0)
    assert row.dim(1) == 8
    assert not (ExactMatrix.identity(8) - row.T(1)).is_zero()
    assert check_b_B_relations(row, 3).passed


def test_paracyclic_B_squared_is_nonzero():
    # on a genuinely paracyclic module B^2 = (1 - λ)(1 - T) s_{-1} s_{-1} N does not vanish
    cyl = CylindricalModule(pareigis_rmap(1))
    row = cyl.row(0)
    assert not (row.B(1) @ row.B(0)).is_zero()
    with pytest.raises(AxiomViolation):
        mixed_complex_of(row, 2)


def test_t_inverse():
    cyl = CylindricalModule(pareigis_rmap(1))
    row = cyl.row(1)
    for n in range(3):
        assert (row.t(n) @ row.t_inv(n)).is_identity()


def test_mixed_complex_detects_violations():
    z = ExactMatrix.zeros
    one = ExactMatrix.identity(1)
    mc = MixedComplex([1, 1, 1], [z(0, 1), one, z(1, 1)], [one, z(1, 1)], "toy")
    rep = mc.check()
    assert not rep.passed
    assert rep.find("bB + Bb = 0")[0].passed is False


group_orders = st.lists(st.integers(1, 3), min_size=1, max_size=2)


@given(group_orders, st.integers(1, 2))
def test_cyclic_axioms_on_group_algebras(orders, n_max):
    alg = cyclic_group(orders[0])
    for k in orders[1:]:
        alg = tensor_algebra(alg, cyclic_group(k))
    if alg.dim ** (n_max + 2) > 300:
        n_max = 1
    C = AlgebraCyclicModule(alg)
    assert check_axioms(C, n_max, "cyclic").passed
    mc = mixed_complex_of(C, n_max)
    assert mc.check().passed


@given(st.sampled_from(sorted(ALGEBRAS)), st.integers(0, 2))
def test_b_squares_to_zero(name, n):
    C = AlgebraCyclicModule(ALGEBRAS[name])
    assert (C.b(n + 1) @ C.b(n + 2)).is_zero()
