from __future__ import annotations

import pytest

from smashcyc.exactmath import ExactMatrix
from smashcyc.hopf import (HopfAlgebra, check_hopf, dual_cop, drinfeld_matched_pair,
                           build_double_crossproduct, check_matched_pair,
                           check_inverse_antipode_identities, trivial_matched_pair,
                           is_group_like_table, MatchedPair, NotMatched)
from smashcyc.presets import sweedler, taft, cyclic_group_hopf, cyclic_group, dual_numbers


@pytest.mark.parametrize("H", [sweedler(), taft(3), cyclic_group_hopf(2), cyclic_group_hopf(3)],
                         ids=lambda h: h.name)
def test_hopf_axioms(H):
    assert check_hopf(H).passed


def test_dual_of_sweedler_is_hopf():
    Hd = dual_cop(sweedler())
    assert Hd.alg.dim == 4 and check_hopf(Hd).passed


def test_corrupted_antipode_fails():
    H = sweedler()
    bad = HopfAlgebra(H.alg, H.delta.matrix, H.eps.matrix, ExactMatrix.identity(4), validate=False)
    rep = check_hopf(bad)
    assert not rep.passed
    assert all(c.witness for c in rep.failures())


def test_sweedler_double():
    pair = drinfeld_matched_pair(sweedler())
    assert check_matched_pair(pair).passed
    assert check_inverse_antipode_identities(pair).passed
    dcp = build_double_crossproduct(pair)
    assert dcp.hopf.alg.dim == 16
    assert dcp.report.passed
    # the explicit formula is the inverse of R
    R = dcp.r_map.matrix
    assert (R @ dcp.r_explicit.matrix).is_identity()
    assert (dcp.r_explicit.matrix @ R).is_identity()


def test_trivial_pair_gives_tensor_product():
    H = sweedler()
    pair = trivial_matched_pair(H, H)
    dcp = build_double_crossproduct(pair)
    assert dcp.report.passed
    # trivial actions: R is the flip
    from smashcyc.algebra import flip_matrix
    assert dcp.r_map.matrix == flip_matrix(4, 4)


def test_broken_matched_pair_rejected():
    H = sweedler()
    good = drinfeld_matched_pair(H)
    zero_left = ExactMatrix.zeros(good.left.nrows, good.left.ncols)
    bad = MatchedPair(good.B, good.H, zero_left, good.right, name="broken")
    assert not check_matched_pair(bad).passed
    with pytest.raises(NotMatched):
        build_double_crossproduct(bad)


def test_group_like_tables():
    assert is_group_like_table(cyclic_group(3))
    assert not is_group_like_table(dual_numbers())
    assert not is_group_like_table(sweedler().alg)
