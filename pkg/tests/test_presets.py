from __future__ import annotations

import pytest

from smashcyc.bimodule import Bimodule, regular_bimodule
from smashcyc.exactmath import Cyclotomic, q_integer, zeta
from smashcyc.presets import (preset, taft, taft_action_on_cyclic, pareigis_sweedler_isomorphism,
                              dual_numbers_resolution_homology, UnknownPreset, UnsupportedField,
                              WrongAlgebra, dual_numbers, cyclic_group, PRESET_NAMES)
from smashcyc.spectral import column_bimodule, hochschild_with_coefficients
from smashcyc.cylindrical import CylindricalModule

ALL = ["dual_numbers", "cyclic_group(2)", "cyclic_group(3)", "sweedler", "taft(3)",
       "module_algebra_5_2(2)", "module_algebra_5_2(3)", "pareigis_surrogate(1)",
       "pareigis_surrogate(2)", "bismash(Z2,Z2)", "bismash(Z3,Z2)", "drinfeld_double_sweedler",
       "tensor_flip(K2,K2)", "tensor_flip(D,K2)"]


@pytest.mark.parametrize("name", ALL)
def test_every_preset_validates(name):
    p = preset(name)
    assert p.report.passed
    assert p.algebra.dim == p.smash.A.dim * p.smash.B.dim


def test_dimensions():
    assert preset("pareigis_surrogate(1)").algebra.dim == 4
    assert preset("pareigis_surrogate(2)").algebra.dim == 8
    assert preset("drinfeld_double_sweedler").algebra.dim == 16
    assert preset("bismash(Z3,Z2)").algebra.dim == 6
    assert not preset("bismash(Z3,Z2)").algebra.is_commutative()   # S3
    assert preset("tensor_flip(K2,K2)").algebra.is_commutative()


def test_pareigis_surrogate_is_sweedler():
    assert pareigis_sweedler_isomorphism(preset("pareigis_surrogate(1)").algebra).passed


def test_module_algebra_action_on_x():
    H, A, action = taft_action_on_cyclic(2)
    d, g = H.alg.index("x"), H.alg.index("g")
    x = A.index("x")
    assert action.cols[d * A.dim + x] == {A.index("1"): 1}      # ∂.x = 1
    assert action.cols[g * A.dim + x] == {x: -1}                # σ.x = -x


def test_taft_uses_cyclotomic_scalars():
    H = taft(3)
    assert H.alg.dim == 9
    assert any(isinstance(v, Cyclotomic) for c in H.alg.mult.cols for v in c.values())
    assert q_integer(3, zeta(3)) == 0


def test_unknown_and_unsupported():
    with pytest.raises(UnknownPreset):
        preset("no_such_thing")
    with pytest.raises(UnknownPreset):
        preset("bismash(Z5,Z2)")
    with pytest.raises(UnsupportedField):
        preset("taft(25)")
    assert "pareigis_surrogate(M)" in PRESET_NAMES


def test_resolution_oracle_on_dual_numbers():
    D = dual_numbers()
    # μ̄ = 0 and ν̄ = 2s·: H_0 = 2, H_q = 1
    assert dual_numbers_resolution_homology(regular_bimodule(D), 3) == [2, 1, 1, 1]
    with pytest.raises(WrongAlgebra):
        dual_numbers_resolution_homology(regular_bimodule(cyclic_group(2)), 2)


def test_resolution_oracle_matches_bar_complex_on_first_column():
    cyl = CylindricalModule(preset("pareigis_surrogate(1)").rmap)
    M = column_bimodule(cyl, 0)
    bar = hochschild_with_coefficients(M, 3).dims
    assert dual_numbers_resolution_homology(M, 3) == bar


def test_trivial_bimodule_resolution():
    # k ⊕ k with s acting by zero on both sides: every map vanishes
    from smashcyc.algebra import TensorSpace
    from smashcyc.exactmath import ExactMatrix
    from smashcyc.spectral import Factor
    D = dual_numbers()
    left = ExactMatrix(2, 4, [{0: 1}, {1: 1}, {}, {}])
    right = ExactMatrix(2, 4, [{0: 1}, {}, {1: 1}, {}])
    M = Bimodule(D, TensorSpace([Factor("V", 2)]), left, right, "trivial").require()
    assert dual_numbers_resolution_homology(M, 3) == [2, 2, 2, 2]
