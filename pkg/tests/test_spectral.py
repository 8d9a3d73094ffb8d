from __future__ import annotations

import sympy
import pytest
from hypothesis import given, strategies as st

from smashcyc.bimodule import hochschild_coefficient_differential
from smashcyc.cyclic import AlgebraCyclicModule, check_axioms
from smashcyc.cylindrical import build_cylindrical
from smashcyc.exactmath import ExactMatrix, kernel_basis
from smashcyc.homology import ChainComplex, module_homology
from smashcyc.presets import preset, dual_numbers_resolution_homology
from smashcyc.spectral import (FilteredComplex, check_duality, check_h0_coinvariants,
                               check_row_recoordinatize, coinvariant_cyclic, column_bimodule,
                               hochschild_with_coefficients, induced_cyclic_on_homology,
                               is_separable_group_algebra, normalized_column_bimodule,
                               normalized_row_bimodule, row_bimodule, row_recoordinatize,
                               separable_collapse_check, spectral_pages, spectral_sequence,
                               verify_spectral)

from conftest import small_rationals, to_sympy


# -- coefficient bimodules ---------------------------------------------------


@pytest.mark.parametrize("p", [0, 1, 2])
def test_coefficient_bimodules_satisfy_axioms(cyl_p1, p):
    for M in (column_bimodule(cyl_p1, p), row_bimodule(cyl_p1, p),
              normalized_column_bimodule(cyl_p1, p), normalized_row_bimodule(cyl_p1, p)):
        assert M.check().passed, M.name


@pytest.mark.parametrize("p,q", [(0, 1), (0, 2), (1, 1), (1, 2), (2, 1)])
def test_coefficient_differential_is_the_column_b(cyl_p1, p, q):
    M = column_bimodule(cyl_p1, p)
    assert hochschild_coefficient_differential(M, q) == cyl_p1.column(p).b(q)


def test_flip_zeroth_coefficient_homology(cyl_flip):
    # A = K2 commutative acting trivially: H_0(A, B (x) A) = B (x) A
    assert hochschild_with_coefficients(column_bimodule(cyl_flip, 0), 2).dims == [4, 0, 0]


@pytest.mark.parametrize("p", [0, 1])
def test_surrogate_coefficients_against_resolution(cyl_p1, p):
    M = column_bimodule(cyl_p1, p)
    assert hochschild_with_coefficients(M, 3).dims == dual_numbers_resolution_homology(M, 3)


# -- coinvariant cyclic modules ----------------------------------------------


@pytest.mark.parametrize("side", ["A", "B"])
def test_coinvariant_dims_equal_zeroth_homology(cyl_p1, side):
    co = coinvariant_cyclic(cyl_p1, side)
    for n in range(3):
        M = column_bimodule(cyl_p1, n) if side == "A" else row_bimodule(cyl_p1, n)
        assert co.dim(n) == hochschild_with_coefficients(M, 0).dims[0]


def test_surrogate_coinvariant_dims(cyl_p1):
    assert [coinvariant_cyclic(cyl_p1, "A").dim(n) for n in range(4)] == [3, 6, 12, 24]
    assert [coinvariant_cyclic(cyl_p1, "B").dim(n) for n in range(4)] == [2, 4, 8, 16]


def test_flip_coinvariants_are_b_powers_times_a(cyl_flip):
    assert [coinvariant_cyclic(cyl_flip, "A").dim(n) for n in range(3)] == [4, 8, 16]


def test_coinvariants_are_cyclic_though_the_row_is_not(cyl_p1):
    assert not check_axioms(cyl_p1.row(0), 2, "cyclic").passed
    assert check_axioms(coinvariant_cyclic(cyl_p1, "A"), 2, "cyclic").passed
    assert check_axioms(coinvariant_cyclic(cyl_p1, "B"), 2, "cyclic").passed


def test_surrogate_coinvariant_cyclic_homology(cyl_p1):
    assert module_homology(coinvariant_cyclic(cyl_p1, "A"), 2).dims == [2, 0, 2]
    # B = k[Z/2] is separable, so this side already gives HC(A # B)
    assert module_homology(coinvariant_cyclic(cyl_p1, "B"), 2).dims == [2, 1, 2]


@pytest.mark.parametrize("side", ["A", "B"])
def test_h0_is_the_coinvariant_module(cyl_p1, side):
    assert check_h0_coinvariants(cyl_p1, 2, side).passed


def test_induced_modules_on_higher_homology(cyl_p1):
    ind = induced_cyclic_on_homology(cyl_p1, 1, "A")
    assert check_axioms(ind, 2, "cyclic").passed
    assert [induced_cyclic_on_homology(cyl_p1, 1, "B").dim(n) for n in range(3)] == [0, 0, 0]


# -- re-coordinatization -------------------------------------------------------


@pytest.mark.parametrize("q", [0, 1, 2])
def test_recoordinatization_trivial_at_p0(cyl_p1, q):
    phi, psi = row_recoordinatize(cyl_p1, 0, q)
    assert phi.matrix.is_identity() and psi.matrix.is_identity()


def test_recoordinatization_inverse(cyl_p1):
    phi, psi = row_recoordinatize(cyl_p1, 1, 1)
    assert phi.matrix.nrows == 16
    assert (phi.matrix @ psi.matrix).is_identity()
    assert check_row_recoordinatize(cyl_p1, 2).passed


# -- spectral sequences ----------------------------------------------------------


@pytest.mark.parametrize("name,filtration,w", [
    ("pareigis_surrogate(1)", "rows", "cyclic"),
    ("pareigis_surrogate(1)", "columns", "cyclic"),
    ("pareigis_surrogate(1)", "rows", "hochschild"),
    ("pareigis_surrogate(1)", "columns", "hochschild"),
    ("module_algebra_5_2(2)", "rows", "cyclic"),
    ("module_algebra_5_2(2)", "columns", "cyclic"),
    ("tensor_flip(K2,K2)", "rows", "cyclic"),
])
def test_verify_spectral(name, filtration, w):
    sm = preset(name).smash
    cyl = build_cylindrical(sm, 3)
    direct = module_homology(AlgebraCyclicModule(sm.algebra), 2, w)
    rep, ss = verify_spectral(cyl, filtration, w, 2, direct)
    assert rep.passed, rep.failures()[:3]
    assert ss.homology[:3] == direct.dims


def test_duality(cyl_p1):
    assert check_duality(cyl_p1, "cyclic", 2).passed


@pytest.mark.parametrize("name,sides", [("bismash(Z2,Z2)", {"A", "B"}),
                                        ("cyclic_group(2)", {"A", "B"}),
                                        ("pareigis_surrogate(1)", {"B"})])
def test_separable_collapse(name, sides):
    sm = preset(name).smash
    cyl = build_cylindrical(sm, 3)
    found = {s for s, alg in (("A", cyl.A), ("B", cyl.B)) if is_separable_group_algebra(alg)}
    assert found == sides
    assert separable_collapse_check(cyl, 2).passed


def test_spectral_to_dict(cyl_p1):
    ss = spectral_sequence(cyl_p1, "rows", "cyclic", 2)
    d = ss.to_dict()
    assert set(d) == {"schema_version", "title", "pages", "e_infinity", "stable_page", "homology"}
    assert [pg["page"] for pg in d["pages"]] == sorted(ss.pages)
    # Tot is built one degree higher, so degrees 0..2 are all exact
    assert [h["n"] for h in d["homology"]] == [0, 1, 2]
    assert not any(h["flagged"] for h in d["homology"])
    assert sum(e["dim"] for e in d["e_infinity"] if e["p"] + e["q"] == 1) == ss.homology[1]


# -- brute-force oracle on random filtered complexes -------------------------------


def _span_dim(vecs, size):
    if not vecs:
        return 0
    return sympy.Matrix.hstack(*vecs).rank() if size else 0


def _z(dn, filt_n, filt_prev, p, r):
    """Basis of Z^r_p = {x in F_p : dx in F_{p-r}} as sympy column vectors."""
    size = len(filt_n)
    cols = [i for i, f in enumerate(filt_n) if f <= p]
    if not cols:
        return []
    rows = [i for i, f in enumerate(filt_prev) if f > p - r]
    if dn is None or not rows:
        basis = [sympy.eye(len(cols))[:, k] for k in range(len(cols))]
    else:
        basis = dn.extract(rows, cols).nullspace()
    out = []
    for v in basis:
        full = sympy.zeros(size, 1)
        for k, c in enumerate(cols):
            full[c] = v[k]
        out.append(full)
    return out


def _oracle_page(d, filt, n, p, r):
    dn = d[n] if n > 0 else None
    prev = filt[n - 1] if n > 0 else []
    Z = _z(dn, filt[n], prev, p, r)
    lower = _z(dn, filt[n], prev, p - 1, r - 1)
    up = [d[n + 1] * v for v in _z(d[n + 1], filt[n + 1], filt[n], p + r - 1, r - 1)] \
        if n + 1 < len(filt) else []
    size = len(filt[n])
    return _span_dim(Z, size) - _span_dim(lower + up, size)


@st.composite
def filtered_complexes(draw):
    dims = [draw(st.integers(1, 4)) for _ in range(3)]
    filt = [[draw(st.integers(0, 3)) for _ in range(k)] for k in dims]

    def masked(nr, nc, frow, fcol):
        cols = []
        for j in range(nc):
            col = {}
            for i in range(nr):
                if frow[i] <= fcol[j]:
                    v = draw(small_rationals)
                    if v:
                        col[i] = v
            cols.append(col)
        return ExactMatrix(nr, nc, cols)

    d1 = masked(dims[0], dims[1], filt[0], filt[1])
    # columns of d2: random combinations of cycles of d1 in the right filtration
    cols = []
    for j in range(dims[2]):
        allowed = [i for i, f in enumerate(filt[1]) if f <= filt[2][j]]
        col = {}
        if allowed:
            K = kernel_basis(d1.submatrix(cols=allowed))
            for k in range(K.ncols):
                c = draw(small_rationals)
                for i, v in K.cols[k].items():
                    col[allowed[i]] = col.get(allowed[i], 0) + c * v
        cols.append({i: v for i, v in col.items() if v})
    d2 = ExactMatrix(dims[1], dims[2], cols)
    cc = ChainComplex(dims, [ExactMatrix.zeros(0, dims[0]), d1, d2])
    return FilteredComplex(cc, filt)


@given(filtered_complexes())
def test_pages_match_brute_force(fc):
    ss = spectral_pages(fc)
    d = [to_sympy(m) for m in fc.complex.d]
    for r, page in ss.pages.items():
        for (p, q), dim in page.items():
            assert dim == _oracle_page(d, fc.filt, p + q, p, r), (r, p, q)
    for n in range(fc.complex.top):
        assert ss.total(n) == ss.homology[n]
        assert ss.homology[n] == fc.complex.dims[n] - d[n].rank() - d[n + 1].rank()
