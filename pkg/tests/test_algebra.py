from __future__ import annotations

import json

import pytest
from hypothesis import given, strategies as st

from smashcyc.algebra import (FinDimAlgebra, TensorSpace, algebra_from_table, check_algebra,
                              multiply, tensor_algebra, permute, flip, local, identity_map)
from smashcyc.exactmath import ExactMatrix
from smashcyc.presets import cyclic_group, dual_numbers, sweedler, simple_algebra


class _F:
    def __init__(self, dim, name="F"):
        self.dim = dim
        self.name = name
        self.basis = [f"{name}{i}" for i in range(dim)]


dims_lists = st.lists(st.integers(1, 4), min_size=1, max_size=4)


@given(dims_lists, st.data())
def test_flat_multi_roundtrip(dims, data):
    sp = TensorSpace([_F(d) for d in dims])
    flat = data.draw(st.integers(0, sp.dim - 1))
    assert sp.flat(sp.multi(flat)) == flat


@given(dims_lists)
def test_leftmost_factor_most_significant(dims):
    sp = TensorSpace([_F(d) for d in dims])
    if len(dims) > 1 and dims[0] > 1:
        assert sp.flat([1] + [0] * (len(dims) - 1)) == sp.dim // dims[0]


@given(dims_lists, st.randoms())
def test_permutations_compose(dims, rnd):
    fs = [_F(d, f"F{i}") for i, d in enumerate(dims)]
    p1 = list(range(len(fs)))
    rnd.shuffle(p1)
    p2 = list(range(len(fs)))
    rnd.shuffle(p2)
    first = permute(fs, p1)
    second = permute(first.target.factors, p2)
    both = permute(fs, [p1[k] for k in p2])
    assert (second @ first).matrix == both.matrix


def test_flip_is_involution():
    A, B = _F(2, "a"), _F(3, "b")
    f = flip([A], [B])
    g = flip([B], [A])
    assert (g @ f).matrix.is_identity()


@pytest.mark.parametrize("alg", [cyclic_group(2), cyclic_group(3), dual_numbers(), sweedler().alg],
                         ids=lambda a: a.name)
def test_presets_are_algebras(alg):
    assert check_algebra(alg).passed


def test_nonassociative_table_rejected_with_witness():
    # x*x = 1, but (x*y) has no consistent value: x*y = y, y*x = 0, y*y = y
    table = {(0, 0): {0: 1}, (0, 1): {1: 1}, (1, 0): {1: 1}, (1, 1): {0: 1},
             (0, 2): {2: 1}, (2, 0): {2: 1}, (1, 2): {2: 1}, (2, 1): {}, (2, 2): {2: 1}}
    alg = algebra_from_table("bad", ["1", "x", "y"], table, "1", validate=False)
    rep = check_algebra(alg)
    assert not rep.passed
    bad = rep.find("associativity")[0]
    assert bad.witness["input"].count("⊗") == 2


def test_multiply_in_dual_numbers():
    D = dual_numbers()
    assert multiply(D, [1, 2], [3, 4]) == [3, 10]        # (1+2s)(3+4s) = 3 + 10s
    assert multiply(D, [0, 1], [0, 1]) == [0, 0]


def test_tensor_algebra_of_group_algebras_is_commutative():
    K = tensor_algebra(cyclic_group(2), cyclic_group(3))
    assert K.dim == 6 and check_algebra(K).passed and K.is_commutative()


def test_sweedler_is_not_commutative():
    assert not sweedler().alg.is_commutative()
    assert check_algebra(sweedler().alg.opposite()).passed


@pytest.mark.parametrize("name", ["K2", "D", "H4", "taft(3)", "cyclic_group(5)"])
def test_algebra_json_roundtrip(name):
    alg = simple_algebra(name)
    data = json.loads(json.dumps(alg.to_json()))
    back = FinDimAlgebra.from_json(data)
    assert back.mult == alg.mult and back.basis == alg.basis and back.unit == alg.unit


def test_algebra_json_missing_field():
    data = cyclic_group(2).to_json()
    del data["mult"]
    with pytest.raises(ValueError, match="mult"):
        FinDimAlgebra.from_json(data)


def test_local_operator_placement():
    A = cyclic_group(2)
    sp = TensorSpace([A, A, A])
    m = local(A.mult_map(), sp, 1)
    # x ⊗ x ⊗ x -> x ⊗ 1
    v = sp.vector("x", "x", "x")
    assert m.matrix.cols[v] == {m.target.vector("x", "1"): 1}
    assert local(identity_map(TensorSpace([A])), sp, 2).matrix.is_identity()
