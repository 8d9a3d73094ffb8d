"""Paracyclic and cyclic modules, their derived operators and mixed complexes.

A paracyclic module is described either by its last face maps d_n and the
extra degeneracy s_{-1} (all other operators are generated from these), or
directly by faces, degeneracies and the cyclic operator.  Operators are
materialized per level as exact matrices and cached.

Generation rules, with t_n = d_{n+1} s_{-1} on level n:

    d_i = t_{n-1}^{-(n-i)} d_n t_n^{n-i},   s_i = t_{n+1}^{i+1} s_{-1} t_n^{-(i+1)}.
"""

from __future__ import annotations

from dataclasses import dataclass

from .algebra import FinDimAlgebra, TensorSpace, embed_operator, permute, local
from .exactmath import ExactMatrix, inverse, NotInvertible
from .report import Check, Report, AxiomViolation, compare


class ParacyclicModule:
    """Base class; subclasses provide ``space(n)`` and either the generator
    pair (``last_face``, ``extra_degeneracy``) or the direct operators."""

    name = "C"
    cyclic_known = False  # set once t^{n+1} = id has been certified

    def __init__(self):
        self._cache: dict = {}

    # -- to be provided --------------------------------------------------
    def space(self, n: int) -> TensorSpace:
        raise NotImplementedError

    def last_face(self, n: int) -> ExactMatrix:
        """d_n: C_n -> C_{n-1} (n >= 1)."""
        return self.face(n, n)

    def extra_degeneracy(self, n: int) -> ExactMatrix:
        """s_{-1}: C_n -> C_{n+1}."""
        return self._memo(("s-1", n), lambda: self.t_inv(n + 1) @ self.degeneracy(n, 0) @ self.t(n))

    # -- generated operators -----------------------------------------------
    def dim(self, n: int) -> int:
        return self.space(n).dim

    def _memo(self, key, fn):
        c = self._cache
        if key not in c:
            c[key] = fn()
        return c[key]

    def t(self, n: int) -> ExactMatrix:
        return self._memo(("t", n), lambda: self.last_face(n + 1) @ self.extra_degeneracy(n))

    def t_inv(self, n: int) -> ExactMatrix:
        def build():
            if self.cyclic_known:
                return self.t_pow(n, n)
            try:
                return inverse(self.t(n))
            except NotInvertible as exc:
                raise NotInvertible(f"{self.name}: t_{n} is singular") from exc
        return self._memo(("t-1", n), build)

    def t_pow(self, n: int, k: int) -> ExactMatrix:
        if k == 0:
            return ExactMatrix.identity(self.dim(n))
        if k < 0:
            return self._memo(("t^", n, k), lambda: self.t_inv(n) @ self.t_pow(n, k + 1))
        if k == 1:
            return self.t(n)
        return self._memo(("t^", n, k), lambda: self.t(n) @ self.t_pow(n, k - 1))

    def face(self, n: int, i: int) -> ExactMatrix:
        return self.generated_face(n, i)

    def degeneracy(self, n: int, i: int) -> ExactMatrix:
        return self.generated_degeneracy(n, i)

    def generated_face(self, n: int, i: int) -> ExactMatrix:
        if not 0 <= i <= n:
            raise IndexError(f"face d_{i} on level {n}")
        return self._memo(("gd", n, i), lambda: (
            self.last_face(n) if i == n else
            self.t_pow(n - 1, -(n - i)) @ self.last_face(n) @ self.t_pow(n, n - i)))

    def generated_degeneracy(self, n: int, i: int) -> ExactMatrix:
        if not 0 <= i <= n:
            raise IndexError(f"degeneracy s_{i} on level {n}")
        return self._memo(("gs", n, i), lambda: (
            self.t_pow(n + 1, i + 1) @ self.extra_degeneracy(n) @ self.t_pow(n, -(i + 1))))

    # -- derived operators -------------------------------------------------
    def b(self, n: int) -> ExactMatrix:
        if n == 0:
            return ExactMatrix.zeros(0, self.dim(0))

        def build():
            total = self.face(n, 0)
            for i in range(1, n + 1):
                total = total + self.face(n, i) if i % 2 == 0 else total - self.face(n, i)
            return total
        return self._memo(("b", n), build)

    def T(self, n: int) -> ExactMatrix:
        return self.t_pow(n, n + 1)

    def N(self, n: int) -> ExactMatrix:
        def build():
            total = ExactMatrix.identity(self.dim(n))
            for i in range(1, n + 1):
                term = self.t_pow(n, i)
                total = total - term if (i * n) % 2 else total + term
            return total
        return self._memo(("N", n), build)

    def B(self, n: int) -> ExactMatrix:
        def build():
            one = ExactMatrix.identity(self.dim(n + 1))
            tt = self.t(n + 1)
            pre = one - tt if n % 2 else one + tt
            return pre @ self.extra_degeneracy(n) @ self.N(n)
        return self._memo(("B", n), build)

    def label(self, n: int):
        return self.space(n).label

    def __repr__(self):
        return f"{type(self).__name__}({self.name})"


# ---------------------------------------------------------------------------
# axiom checks


def _cmp(pm, lhs, rhs, identity, src, tgt, **ctx):
    return compare(lhs, rhs, identity, source_label=pm.label(src), target_label=pm.label(tgt), **ctx)


def check_axioms(pm: ParacyclicModule, n_max: int, mode: str = "paracyclic") -> Report:
    """Verify the simplicial and paracyclic identities (and, in cyclic mode,
    t^{n+1} = id) for levels <= n_max.

    Only identities whose every intermediate level is <= n_max are checked.
    """
    if mode not in ("paracyclic", "cyclic"):
        raise ValueError("mode must be 'paracyclic' or 'cyclic'")
    rep = Report(f"{mode} axioms of {pm.name} up to level {n_max}")
    for n in range(n_max + 1):
        # t invertible
        try:
            ti = pm.t_inv(n)
            rep.add(_cmp(pm, pm.t(n) @ ti, ExactMatrix.identity(pm.dim(n)),
                         "t invertible", n, n, level=n))
        except NotInvertible as exc:
            rep.add(Check("t invertible", False, {"level": n}, {"error": str(exc)}))
            continue
        # faces: d_i d_j = d_{j-1} d_i on C_n, i < j
        if n >= 2:
            for j in range(n + 1):
                for i in range(j):
                    rep.add(_cmp(pm, pm.face(n - 1, i) @ pm.face(n, j),
                                 pm.face(n - 1, j - 1) @ pm.face(n, i),
                                 "d_i d_j = d_{j-1} d_i", n, n - 2, level=n, i=i, j=j))
        # degeneracies: s_i s_j = s_{j+1} s_i on C_n -> C_{n+2}, i <= j
        if n + 2 <= n_max:
            for j in range(n + 1):
                for i in range(j + 1):
                    rep.add(_cmp(pm, pm.degeneracy(n + 1, i) @ pm.degeneracy(n, j),
                                 pm.degeneracy(n + 1, j + 1) @ pm.degeneracy(n, i),
                                 "s_i s_j = s_{j+1} s_i", n, n + 2, level=n, i=i, j=j))
        # mixed: d_i s_j on C_n via C_{n+1}
        if n + 1 <= n_max:
            for j in range(n + 1):
                for i in range(n + 2):
                    lhs = pm.face(n + 1, i) @ pm.degeneracy(n, j)
                    if i < j:
                        rhs = pm.degeneracy(n - 1, j - 1) @ pm.face(n, i)
                    elif i in (j, j + 1):
                        rhs = ExactMatrix.identity(pm.dim(n))
                    else:
                        rhs = pm.degeneracy(n - 1, j) @ pm.face(n, i - 1)
                    rep.add(_cmp(pm, lhs, rhs, "d_i s_j", n, n, level=n, i=i, j=j))
        # paracyclic
        if n >= 1:
            rep.add(_cmp(pm, pm.face(n, 0) @ pm.t(n), pm.face(n, n), "d_0 t = d_n", n, n - 1,
                         level=n))
        if n + 1 <= n_max:
            rep.add(_cmp(pm, pm.degeneracy(n, 0) @ pm.t(n),
                         pm.t_pow(n + 1, 2) @ pm.degeneracy(n, n), "s_0 t = t^2 s_n", n, n + 1,
                         level=n))
        if mode == "cyclic":
            rep.add(_cmp(pm, pm.T(n), ExactMatrix.identity(pm.dim(n)), "t^{n+1} = id", n, n,
                         level=n))
    return rep


def check_b_B_relations(pm: ParacyclicModule, n_max: int) -> Report:
    """bT = Tb and bB + Bb = 1 - T on levels <= n_max (uses level n_max+1)."""
    rep = Report(f"bT = Tb, bB + Bb = 1 - T for {pm.name}")
    for n in range(n_max + 1):
        one = ExactMatrix.identity(pm.dim(n))
        if n >= 1:
            rep.add(_cmp(pm, pm.b(n) @ pm.T(n), pm.T(n - 1) @ pm.b(n), "bT = Tb", n, n - 1,
                         level=n))
        lhs = pm.b(n + 1) @ pm.B(n)
        if n >= 1:
            lhs = lhs + pm.B(n - 1) @ pm.b(n)
        rep.add(_cmp(pm, lhs, one - pm.T(n), "bB + Bb = 1 - T", n, n, level=n))
    return rep


def check_generation(pm: ParacyclicModule, n_max: int) -> Report:
    """Directly supplied operators agree with those generated from d_n, s_{-1}."""
    rep = Report(f"generation consistency for {pm.name}")
    for n in range(n_max + 1):
        for i in range(n + 1):
            if n >= 1:
                rep.add(_cmp(pm, pm.face(n, i), pm.generated_face(n, i), "generated d_i", n, n - 1,
                             level=n, i=i))
            if n + 1 <= n_max + 1:
                rep.add(_cmp(pm, pm.degeneracy(n, i), pm.generated_degeneracy(n, i),
                             "generated s_i", n, n + 1, level=n, i=i))
    return rep


# ---------------------------------------------------------------------------
# the cyclic module of an algebra


class AlgebraCyclicModule(ParacyclicModule):
    """C_n(A) = A^{(x)(n+1)} with the usual faces, degeneracies and rotation.

    With ``generated=True`` only d_n and s_{-1} are given explicitly and
    every other operator is produced by the generation rules.
    """

    def __init__(self, alg: FinDimAlgebra, *, generated: bool = False):
        super().__init__()
        self.alg = alg
        self.generated = generated
        self.cyclic_known = not generated
        self.name = f"C({alg.name})" + (" [generated]" if generated else "")
        self._spaces: dict = {}

    def space(self, n):
        if n not in self._spaces:
            self._spaces[n] = TensorSpace([self.alg] * (n + 1))
        return self._spaces[n]

    def _rotation(self, n):
        return permute(self.space(n).factors, [n] + list(range(n)))

    def last_face(self, n):
        def build():
            rot = self._rotation(n)
            return (local(self.alg.mult_map(), rot.target, 0) @ rot).matrix
        return self._memo(("dn", n), build)

    def extra_degeneracy(self, n):
        return self._memo(("s-1", n), lambda: embed_operator(
            self.alg.unit_map(), [], self.space(n).factors).matrix)

    def face(self, n, i):
        if self.generated or i == n:
            return self.generated_face(n, i)
        if not 0 <= i < n:
            raise IndexError(f"face d_{i} on level {n}")
        return self._memo(("d", n, i), lambda: local(
            self.alg.mult_map(), self.space(n), i).matrix)

    def degeneracy(self, n, i):
        if self.generated:
            return self.generated_degeneracy(n, i)
        if not 0 <= i <= n:
            raise IndexError(f"degeneracy s_{i} on level {n}")
        fs = self.space(n).factors
        return self._memo(("s", n, i), lambda: embed_operator(
            self.alg.unit_map(), fs[:i + 1], fs[i + 1:]).matrix)

    def t(self, n):
        if self.generated:
            return super().t(n)
        return self._memo(("t", n), lambda: self._rotation(n).matrix)


# ---------------------------------------------------------------------------
# mixed complexes


@dataclass
class MixedComplex:
    """Spaces M_0..M_top with b: M_n -> M_{n-1} and B: M_n -> M_{n+1}.

    ``b[n]`` is defined for 0 <= n <= top (b[0] has zero rows) and
    ``B[n]`` for 0 <= n < top.
    """

    dims: list
    b: list
    B: list
    name: str = "M"

    @property
    def top(self) -> int:
        return len(self.dims) - 1

    def check(self) -> Report:
        rep = Report(f"mixed complex {self.name}")
        for n in range(self.top + 1):
            if n >= 2:
                rep.add(compare(self.b[n - 1] @ self.b[n], ExactMatrix.zeros(self.dims[n - 2], self.dims[n]),
                                "b^2 = 0", level=n))
            if n + 2 <= self.top:
                rep.add(compare(self.B[n + 1] @ self.B[n],
                                ExactMatrix.zeros(self.dims[n + 2], self.dims[n]), "B^2 = 0", level=n))
            if n + 1 <= self.top:
                lhs = self.b[n + 1] @ self.B[n]
                if n >= 1:
                    lhs = lhs + self.B[n - 1] @ self.b[n]
                rep.add(compare(lhs, ExactMatrix.zeros(self.dims[n], self.dims[n]),
                                "bB + Bb = 0", level=n))
        return rep

    def require(self) -> "MixedComplex":
        rep = self.check()
        if not rep.passed:
            c = rep.failures()[0]
            raise AxiomViolation(f"{self.name}: {c.identity} fails at {c.context}", c)
        return self


def mixed_complex_of(cm: ParacyclicModule, top: int, *, check: bool = True) -> MixedComplex:
    """(C_n, b, B) for levels 0..top of a cyclic module."""
    dims = [cm.dim(n) for n in range(top + 1)]
    b = [cm.b(n) for n in range(top + 1)]
    B = [cm.B(n) for n in range(top)]
    mc = MixedComplex(dims, b, B, name=cm.name)
    if check:
        mc.require()
    return mc
