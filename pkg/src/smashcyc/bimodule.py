"""Bimodules over a finite-dimensional algebra and their Hochschild complexes."""

from __future__ import annotations

from dataclasses import dataclass

from .algebra import FinDimAlgebra, TensorSpace, TensorMap, local
from .exactmath import ExactMatrix
from .report import Report, compare


class NotBimodule(ValueError):
    pass


@dataclass
class Bimodule:
    """A vector space M with commuting actions A (x) M -> M and M (x) A -> M.

    ``space`` describes the basis of M (a tensor space, so witnesses carry
    readable labels).
    """

    algebra: FinDimAlgebra
    space: TensorSpace
    left: ExactMatrix
    right: ExactMatrix
    name: str = "M"

    @property
    def dim(self) -> int:
        return self.space.dim

    def check(self) -> Report:
        A, d = self.algebra, self.dim
        rep = Report(f"bimodule {self.name}")
        m = A.mult
        L, Rt = self.left, self.right
        idM = ExactMatrix.identity(d)
        mspace = TensorSpace([A, A]) + self.space
        lab = mspace.label
        # (ab).m = a.(b.m)
        rep.add(compare(L @ m.kron(idM), L @ L.pad(A.dim, 1), "left associative",
                        source_label=lab))
        u = ExactMatrix(A.dim, 1, [dict(A.unit)])
        rep.add(compare(L @ u.kron(idM), idM, "left unital", source_label=self.space.label))
        rspace = self.space + TensorSpace([A, A])
        rep.add(compare(Rt @ idM.kron(m), Rt @ Rt.pad(1, A.dim), "right associative",
                        source_label=rspace.label))
        rep.add(compare(Rt @ idM.kron(u), idM, "right unital", source_label=self.space.label))
        # (a.m).b = a.(m.b) on A (x) M (x) A
        both = TensorSpace([A]) + self.space + TensorSpace([A])
        rep.add(compare(Rt @ L.pad(1, A.dim), L @ Rt.pad(A.dim, 1), "actions commute",
                        source_label=both.label))
        return rep

    def require(self) -> "Bimodule":
        rep = self.check()
        if not rep.passed:
            c = rep.failures()[0]
            raise NotBimodule(f"{self.name}: {c.identity} fails, witness {c.witness}")
        return self

    def commutator_span(self) -> ExactMatrix:
        """Columns a.x - x.a for all basis a, x (as a spanning set)."""
        A, d = self.algebra, self.dim
        cols = []
        for a in range(A.dim):
            for x in range(d):
                lc = self.left.cols[a * d + x]
                rc = self.right.cols[x * A.dim + a]
                col = dict(lc)
                for k, v in rc.items():
                    s = col.get(k, 0) - v
                    if s == 0:
                        col.pop(k, None)
                    else:
                        col[k] = s
                cols.append(col)
        return ExactMatrix(d, len(cols), cols)


def regular_bimodule(A: FinDimAlgebra) -> Bimodule:
    return Bimodule(A, TensorSpace([A]), A.mult, A.mult, name=A.name)


def hochschild_coefficient_space(M: Bimodule, q: int) -> TensorSpace:
    return M.space + TensorSpace([M.algebra] * q)


def hochschild_coefficient_differential(M: Bimodule, q: int) -> ExactMatrix:
    """d: M (x) A^q -> M (x) A^{q-1}

    d(m|a_1..a_q) = (m.a_1|a_2..a_q) + sum_{i=1}^{q-1} (-1)^i (m|..a_i a_{i+1}..)
                    + (-1)^q (a_q.m|a_1..a_{q-1}).
    """
    A = M.algebra
    src = hochschild_coefficient_space(M, q)
    tgt = hochschild_coefficient_space(M, q - 1)
    if q == 0:
        return ExactMatrix.zeros(0, src.dim)
    nA = len(M.space)
    right = TensorMap(M.space + TensorSpace([A]), M.space, M.right)
    total = local(right, src, 0).matrix
    mult = A.mult_map()
    for i in range(1, q):
        term = local(mult, src, nA + i - 1).matrix
        total = total + term if i % 2 == 0 else total - term
    # wrap-around: move a_q to the front, then act on the left
    from .algebra import permute
    order = [len(src) - 1] + list(range(len(src) - 1))
    cyc = permute(src.factors, order)
    left = TensorMap(TensorSpace([A]) + M.space, M.space, M.left)
    wrap = (local(left, cyc.target, 0) @ cyc).matrix
    total = total + wrap if q % 2 == 0 else total - wrap
    assert total.shape == (tgt.dim, src.dim)
    return total
