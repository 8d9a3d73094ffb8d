from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import settings, strategies as st

from smashcyc.exactmath import ExactMatrix
from smashcyc.presets import preset
from smashcyc.cylindrical import build_cylindrical

settings.register_profile("default", max_examples=40, deadline=None)
settings.load_profile("default")

small_rationals = st.one_of(
    st.integers(-3, 3),
    st.builds(Fraction, st.integers(-4, 4), st.integers(1, 3)),
)


@st.composite
def matrices(draw, max_rows=5, max_cols=5, density=0.6):
    nr = draw(st.integers(1, max_rows))
    nc = draw(st.integers(1, max_cols))
    cols = []
    for _ in range(nc):
        col = {}
        for r in range(nr):
            if draw(st.floats(0, 1)) < density:
                v = draw(small_rationals)
                if v:
                    col[r] = v
        cols.append(col)
    return ExactMatrix(nr, nc, cols)


def to_sympy(m: ExactMatrix):
    import sympy
    return sympy.Matrix(m.nrows, m.ncols, lambda i, j: sympy.Rational(str(m[i, j])))


@pytest.fixture(scope="session")
def cyl_p1():
    return build_cylindrical(preset("pareigis_surrogate(1)").smash, 3)


@pytest.fixture(scope="session")
def cyl_flip():
    return build_cylindrical(preset("tensor_flip(K2,K2)").smash, 3)


@pytest.fixture(scope="session")
def cyl_52():
    return build_cylindrical(preset("module_algebra_5_2(2)").smash, 2)
