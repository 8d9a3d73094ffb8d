"""Bimodules on the first column and bottom row of A♮B, coinvariant cyclic
modules, and the row/column spectral sequences of Tot(A♮B) ⊠ W.

Filtrations.  A basis vector of A♮B(i, j) u^-m inside (Tot ⊠ W)_n has row
filtration i + 2m and column filtration j + 2m.  With this choice the
differential b + εb̄ + u(B + TεB̄) never raises the filtration, d^0 is b̄
(rows) or b (columns), and E^1_{•,q} = H_q(A, C_•(♮B)) ⊠ W.

Pages are computed from the Z^r / B^r formulas on the finite complex:

    Z^r_p = {x in F_p : dx in F_{p-r}},
    E^r_p = Z^r_p / (Z^{r-1}_{p-1} + d Z^{r-1}_{p+r-1}),

using only ranks of submatrices of d.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .algebra import TensorSpace, local
from .bimodule import Bimodule, hochschild_coefficient_differential
from .cyclic import ParacyclicModule, check_axioms
from .cylindrical import CylindricalModule, total_mixed, _chain
from .exactmath import (ExactMatrix, rank, kernel_basis, in_span, induced_map,
                        make_subquotient, quotient, NotWellDefined)
from .homology import (ChainComplex, NotAComplex, HomologyTable, boxtimes_complex, coefficient,
                       homology_dims, module_homology)
from .hopf import is_group_like_table
from .report import SCHEMA_VERSION, Check, Report, compare


class TruncationTooSmall(RuntimeError):
    pass


class Factor:
    """A bare vector space with labelled basis, usable as a tensor factor."""

    def __init__(self, name: str, dim: int, prefix: str = "e"):
        self.name = name
        self.dim = dim
        self.basis = [f"{prefix}{i}" for i in range(dim)]

    def __repr__(self):
        return f"Factor({self.name}, {self.dim})"


# ---------------------------------------------------------------------------
# bimodules


def column_bimodule(cyl: CylindricalModule, p: int) -> Bimodule:
    """C_p(♮B) = B^{p+1} (x) A as an A-bimodule.

    a.(b_0..b_p | a_0) = (id (x) m_A)(Γ_p(a, b_0..b_p) | a_0), and the right
    action multiplies a_0 on the right.
    """
    A = cyl.A
    space = cyl.space(p, 0)
    src = TensorSpace([A]) + space
    step = local(cyl.gamma(p), src, 0)
    left = local(A.mult_map(), step.target, p + 1) @ step
    right = local(A.mult_map(), space + TensorSpace([A]), p + 1)
    return Bimodule(A, space, left.matrix, right.matrix, name=f"C_{p}(♮{cyl.B.name})")


def row_bimodule(cyl: CylindricalModule, q: int) -> Bimodule:
    """C_q(A♮) = B (x) A^{q+1} as a B-bimodule.

    b.(b_0 | a_0..a_q) = (b b_0 | a_0..a_q) and
    (b_0 | a_0..a_q).b = (m_B (x) id)(b_0 | Θ_q^-1(a_0..a_q, b)).
    """
    B = cyl.B
    space = cyl.space(0, q)
    left = local(B.mult_map(), TensorSpace([B]) + space, 0)
    src = space + TensorSpace([B])
    step = local(cyl.theta_inv(q), src, 1)
    right = local(B.mult_map(), step.target, 0) @ step
    return Bimodule(B, space, left.matrix, right.matrix, name=f"C_{q}({cyl.A.name}♮)")


def quotient_bimodule(M: Bimodule, sub: ExactMatrix, name: str | None = None) -> Bimodule:
    """M / span(sub); raises NotWellDefined unless sub is a sub-bimodule."""
    A = M.algebra
    sq = quotient(M.dim, sub)
    fac = Factor(name or f"{M.name}/~", sq.dim, prefix="v")
    space = TensorSpace([fac])
    idA = ExactMatrix.identity(A.dim)
    left = _induced_action(M.left, idA, sq, left_side=True)
    right = _induced_action(M.right, idA, sq, left_side=False)
    return Bimodule(A, space, left, right, name=fac.name)


def _induced_action(act: ExactMatrix, idA: ExactMatrix, sq, *, left_side: bool) -> ExactMatrix:
    """Action A (x) M/S -> M/S (or M/S (x) A -> M/S) induced from ``act``."""
    sec = sq.section
    lift = idA.kron(sec) if left_side else sec.kron(idA)
    sub = idA.kron(sq.b) if left_side else sq.b.kron(idA)
    if sub.ncols and not in_span(sq.b, act @ sub):
        raise NotWellDefined("the submodule is not stable under the action")
    return sq.coords(act @ lift)


def normalized_column_bimodule(cyl: CylindricalModule, p: int) -> Bimodule:
    """C_p(♮B) modulo the images of s_0..s_{p-1}."""
    M = column_bimodule(cyl, p)
    mats = [cyl.degeneracy(p - 1, 0, i) for i in range(p)]
    return quotient_bimodule(M, ExactMatrix.hstack(mats, M.dim), name=f"N{M.name}")


def normalized_row_bimodule(cyl: CylindricalModule, q: int) -> Bimodule:
    """C_q(A♮) modulo the images of s̄_0..s̄_{q-1}."""
    M = row_bimodule(cyl, q)
    mats = [cyl.degeneracy_bar(0, q - 1, j) for j in range(q)]
    return quotient_bimodule(M, ExactMatrix.hstack(mats, M.dim), name=f"N{M.name}")


def hochschild_complex(M: Bimodule, top: int) -> ChainComplex:
    dims = [M.dim * M.algebra.dim ** q for q in range(top + 1)]
    return ChainComplex(dims, [hochschild_coefficient_differential(M, q) for q in range(top + 1)],
                        name=f"C(A, {M.name})")


def hochschild_with_coefficients(M: Bimodule, q_max: int, *, check: bool = True) -> HomologyTable:
    """dim H_q(A, M) for q <= q_max (the complex is built to q_max + 1)."""
    if check:
        M.require()
    cc = hochschild_complex(M, q_max + 1)
    return homology_dims(cc, title=f"H(A, {M.name})").truncate(q_max)


# ---------------------------------------------------------------------------
# induced cyclic modules on subquotients


class InducedModule(ParacyclicModule):
    """Operators of a (para)cyclic module induced on a family of subquotients.

    ``levels(n)`` returns the Subquotient at level n; ``ops`` is an object
    with face(n, i), degeneracy(n, i), t(n), t_inv(n) on the ambient spaces.
    """

    def __init__(self, name: str, levels, ops):
        super().__init__()
        self.name = name
        self._levels = levels
        self.ops = ops
        self._spaces: dict = {}

    def level(self, n):
        return self._memo(("lvl", n), lambda: self._levels(n))

    def space(self, n):
        if n not in self._spaces:
            self._spaces[n] = TensorSpace([Factor(f"{self.name}_{n}", self.level(n).dim, "h")])
        return self._spaces[n]

    def face(self, n, i):
        return self._memo(("d", n, i), lambda: induced_map(
            self.ops.face(n, i), self.level(n), self.level(n - 1)))

    def degeneracy(self, n, i):
        return self._memo(("s", n, i), lambda: induced_map(
            self.ops.degeneracy(n, i), self.level(n), self.level(n + 1)))

    def t(self, n):
        return self._memo(("t", n), lambda: induced_map(self.ops.t(n), self.level(n), self.level(n)))

    def t_inv(self, n):
        return self._memo(("t-1", n), lambda: induced_map(
            self.ops.t_inv(n), self.level(n), self.level(n)))


def coinvariant_cyclic(cyl: CylindricalModule, side: str = "A") -> InducedModule:
    """C^A_•(♮B) with τ, ∂_i, σ_j induced by the row A♮B(•, 0) (side "A"), or
    C^B_•(A♮) with τ', ∂'_i, σ'_j induced by the column A♮B(0, •) (side "B")."""
    if side == "A":
        def levels(n):
            return quotient(cyl.dim(n, 0), column_bimodule(cyl, n).commutator_span())
        return InducedModule(f"C^{cyl.A.name}(♮{cyl.B.name})", levels, cyl.row(0))
    if side == "B":
        def levels(n):
            return quotient(cyl.dim(0, n), row_bimodule(cyl, n).commutator_span())
        return InducedModule(f"C^{cyl.B.name}({cyl.A.name}♮)", levels, cyl.column(0))
    raise ValueError("side must be 'A' or 'B'")


def _homology_level(d_out: ExactMatrix, d_in: ExactMatrix):
    return make_subquotient(kernel_basis(d_out), d_in)


def induced_cyclic_on_homology(cyl: CylindricalModule, q: int, side: str = "A") -> InducedModule:
    """H_q(A, C_•(♮B)) (side "A", homology of b̄ with unbarred operators) or
    H_q(B, C_•(A♮)) (side "B", homology of δ with the transported barred
    operators ψ d̄ φ, ψ s̄ φ, ψ t̄ φ)."""
    if side == "A":
        def levels(n):
            col = cyl.column(n)
            return _homology_level(col.b(q), col.b(q + 1))
        return InducedModule(f"H_{q}({cyl.A.name}, C(♮{cyl.B.name}))", levels, cyl.row(q))
    if side == "B":
        tr = TransportedColumn(cyl, q)

        def levels(n):
            return _homology_level(tr.delta(q, n), tr.delta(q + 1, n))
        return InducedModule(f"H_{q}({cyl.B.name}, C({cyl.A.name}♮))", levels, tr)
    raise ValueError("side must be 'A' or 'B'")


def check_h0_coinvariants(cyl: CylindricalModule, n_max: int, side: str = "A") -> Report:
    """H_0 with its induced operators is the coinvariant cyclic module: the
    identity of the ambient space induces an isomorphism P with
    P d_i = ∂_i P, P s_j = σ_j P and P t = τ P."""
    h0 = induced_cyclic_on_homology(cyl, 0, side)
    co = coinvariant_cyclic(cyl, side)
    rep = Report(f"H_0 versus coinvariants ({side} side) for {cyl.name}")
    P = {}
    for n in range(n_max + 1):
        one = ExactMatrix.identity(h0.level(n).ambient)
        P[n] = induced_map(one, h0.level(n), co.level(n))
        Q = induced_map(one, co.level(n), h0.level(n))
        rep.add(compare(Q @ P[n], ExactMatrix.identity(P[n].ncols), "P invertible", n=n))
        rep.add(compare(P[n] @ h0.t(n), co.t(n) @ P[n], "P t = τ P", n=n))
    for n in range(n_max + 1):
        for i in range(n + 1):
            if n >= 1:
                rep.add(compare(P[n - 1] @ h0.face(n, i), co.face(n, i) @ P[n], "P d_i = ∂_i P",
                                n=n, i=i))
            if n + 1 <= n_max:
                rep.add(compare(P[n + 1] @ h0.degeneracy(n, i), co.degeneracy(n, i) @ P[n],
                                "P s_j = σ_j P", n=n, j=i))
    return rep


# ---------------------------------------------------------------------------
# φ / ψ re-coordinatization of the bottom-row Hochschild complexes


def row_recoordinatize(cyl: CylindricalModule, p: int, q: int):
    """φ_{p,q}: B (x) A^{q+1} (x) B^p -> A♮B(p,q) and its inverse ψ_{p,q}.

    φ moves b_1, ..., b_p (in that order) leftwards across a_0..a_q with
    Θ_q^-1; ψ moves them back with Θ_q, starting from b_p.
    """
    B, A = cyl.B, cyl.A
    src = TensorSpace([B] + [A] * (q + 1) + [B] * p)
    ti, th = cyl.theta_inv(q), cyl.theta(q)
    phi = _chain(src, [(ti, k) for k in range(1, p + 1)])
    psi = _chain(cyl.space(p, q), [(th, k) for k in range(p, 0, -1)])
    return phi, psi


class TransportedColumn:
    """Operators of A♮B transported to C_p(B, C_q(A♮)) by φ/ψ, viewed as
    the paracyclic module in the q direction at fixed p (barred operators)
    plus the Hochschild differential δ."""

    def __init__(self, cyl: CylindricalModule, p_fixed: int):
        self.cyl = cyl
        self.p = p_fixed
        self._cache: dict = {}
        self.name = f"C_{p_fixed}(B, C(A♮))"

    def _memo(self, key, fn):
        if key not in self._cache:
            self._cache[key] = fn()
        return self._cache[key]

    def phi(self, p, q):
        return self._memo(("phi", p, q), lambda: row_recoordinatize(self.cyl, p, q)[0].matrix)

    def psi(self, p, q):
        return self._memo(("psi", p, q), lambda: row_recoordinatize(self.cyl, p, q)[1].matrix)

    def delta(self, p, q):
        """The Hochschild differential δ: C_p(B, C_q(A♮)) -> C_{p-1}(B, C_q(A♮))."""
        return self._memo(("delta", p, q), lambda: hochschild_coefficient_differential(
            row_bimodule(self.cyl, q), p))

    # the paracyclic structure in q (level n = q) at the fixed p
    def face(self, n, i):
        p, c = self.p, self.cyl
        return self._memo(("d", n, i), lambda: self.psi(p, n - 1) @ c.face_bar(p, n, i) @ self.phi(p, n))

    def degeneracy(self, n, i):
        p, c = self.p, self.cyl
        return self._memo(("s", n, i), lambda: self.psi(p, n + 1) @ c.degeneracy_bar(p, n, i)
                          @ self.phi(p, n))

    def t(self, n):
        p, c = self.p, self.cyl
        return self._memo(("t", n), lambda: self.psi(p, n) @ c.tbar(p, n) @ self.phi(p, n))

    def t_inv(self, n):
        p, c = self.p, self.cyl
        return self._memo(("t-1", n), lambda: self.psi(p, n) @ c.tbar_inv(p, n) @ self.phi(p, n))


def check_row_recoordinatize(cyl: CylindricalModule, bound: int) -> Report:
    """φψ = ψφ = id, ψ b = δ ψ, and the transported barred operators satisfy
    the paracyclic axioms in every fixed-p column."""
    rep = Report(f"φ/ψ re-coordinatization for {cyl.name}")
    for p in range(bound + 1):
        for q in range(bound + 1):
            phi, psi = row_recoordinatize(cyl, p, q)
            F, G = phi.matrix, psi.matrix
            rep.add(compare(F @ G, ExactMatrix.identity(F.nrows), "φ ψ = id", p=p, q=q))
            rep.add(compare(G @ F, ExactMatrix.identity(F.ncols), "ψ φ = id", p=p, q=q))
            if p >= 1:
                delta = hochschild_coefficient_differential(row_bimodule(cyl, q), p)
                _, psi_lo = row_recoordinatize(cyl, p - 1, q)
                rep.add(compare(psi_lo.matrix @ cyl.row(q).b(p), delta @ G, "ψ b = δ ψ",
                                source_label=cyl.label(p, q), p=p, q=q))
    for p in range(bound + 1):
        tr = _TransportedView(TransportedColumn(cyl, p), cyl, p)
        for c in check_axioms(tr, bound, "paracyclic").checks:
            rep.add(Check("transported: " + c.identity, c.passed, {**c.context, "p": p}, c.witness))
    return rep


class _TransportedView(ParacyclicModule):
    def __init__(self, tr: TransportedColumn, cyl, p):
        super().__init__()
        self.tr, self.cyl, self.p = tr, cyl, p
        self.name = tr.name

    def space(self, n):
        B, A = self.cyl.B, self.cyl.A
        return TensorSpace([B] + [A] * (n + 1) + [B] * self.p)

    def face(self, n, i):
        return self.tr.face(n, i)

    def degeneracy(self, n, i):
        return self.tr.degeneracy(n, i)

    def t(self, n):
        return self.tr.t(n)

    def t_inv(self, n):
        return self.tr.t_inv(n)


# ---------------------------------------------------------------------------
# filtered total complex and its spectral sequence


@dataclass
class FilteredComplex:
    complex: ChainComplex
    filt: list            # filt[n][i] = filtration degree of basis vector i in degree n
    name: str = "F"


def filtered_total(cyl: CylindricalModule, filtration: str, w: str, top: int) -> FilteredComplex:
    """(Tot(A♮B) ⊠ W, coordinate filtration) in degrees 0..top.

    Hochschild coefficients use the unnormalized total complex; cyclic
    coefficients need the normalized one (𝔹^2 = 0 only holds there).
    """
    w = coefficient(w)
    if filtration not in ("rows", "columns"):
        raise ValueError("filtration must be 'rows' or 'columns'")
    cyclic = w == "cyclic"
    mc = total_mixed(cyl, top, normalized=cyclic, check=cyclic)
    cc = boxtimes_complex(mc, w)
    rep = cc.check()
    if not rep.passed:
        raise NotAComplex(f"{cc.name}: d^2 != 0 at {rep.failures()[0].context}")
    filt = []
    for n in range(top + 1):
        f = []
        for j in range(n // 2 + 1 if w == "cyclic" else 1):
            m = n - 2 * j
            for (p, q), d in zip(mc.bidegrees[m], mc.block_dims[m]):
                f.extend([(p if filtration == "rows" else q) + 2 * j] * d)
        assert len(f) == cc.dims[n]
        filt.append(f)
    return FilteredComplex(cc, filt, name=f"{filtration} filtration of Tot({cyl.name}) ⊠ {w}")


def check_filtration(fc: FilteredComplex) -> Report:
    """The differential never raises the filtration degree, and each degree's
    filtration is bounded (length at most n + 1)."""
    rep = Report(f"filtration of {fc.name}")
    cc = fc.complex
    for n in range(1, cc.top + 1):
        bad = None
        for j, col in enumerate(cc.d[n].cols):
            for i in col:
                if fc.filt[n - 1][i] > fc.filt[n][j]:
                    bad = {"source": j, "target": i, "source_filtration": fc.filt[n][j],
                           "target_filtration": fc.filt[n - 1][i]}
                    break
            if bad:
                break
        rep.add(Check("d preserves the filtration", bad is None, {"degree": n}, bad))
    for n, f in enumerate(fc.filt):
        ok = not f or max(f) - min(f) <= n
        rep.add(Check("filtration length <= n + 1", ok, {"degree": n}))
    return rep


@dataclass
class SpectralSequence:
    name: str
    top: int
    pages: dict = field(default_factory=dict)        # r -> {(p, q): dim}
    ranks: dict = field(default_factory=dict)        # r -> {(p, q): rank of d^r leaving (p, q)}
    einf: dict = field(default_factory=dict)         # (p, q) -> dim
    stable_page: dict = field(default_factory=dict)  # (p, q) -> r
    homology: list = field(default_factory=list)     # total homology dims
    flagged: list = field(default_factory=list)      # unreliable total degrees

    @property
    def last_page(self) -> int:
        return max(self.pages)

    def page(self, r: int) -> dict:
        return self.pages[min(r, self.last_page)]

    def total(self, n: int, r: int | None = None) -> int:
        src = self.einf if r is None else self.page(r)
        return sum(d for (p, q), d in src.items() if p + q == n)

    def to_dict(self) -> dict:
        def entries(page):
            return [{"p": p, "q": q, "dim": d} for (p, q), d in sorted(page.items())]
        return {
            "schema_version": SCHEMA_VERSION,
            "title": self.name,
            "pages": [{"page": r, "entries": entries(self.pages[r]),
                       "differential_ranks": [{"p": p, "q": q, "rank": k}
                                              for (p, q), k in sorted(self.ranks.get(r, {}).items())]}
                      for r in sorted(self.pages)],
            "e_infinity": entries(self.einf),
            "stable_page": [{"p": p, "q": q, "r": r} for (p, q), r in sorted(self.stable_page.items())],
            "homology": [{"n": n, "dim": d, "flagged": n in self.flagged}
                         for n, d in enumerate(self.homology)],
        }


class _Ranks:
    """Cached rank queries on submatrices of the differential of a filtered complex."""

    def __init__(self, fc: FilteredComplex):
        self.cc = fc.complex
        self.filt = fc.filt
        self._cache: dict = {}

    def cols_le(self, n, p):
        return [i for i, f in enumerate(self.filt[n]) if f <= p]

    def rows_where(self, n, pred):
        return [i for i, f in enumerate(self.filt[n]) if pred(f)]

    def dimZ(self, n, r, p):
        """dim {x in F_p C_n : dx in F_{p-r}}; r = None means dx = 0."""
        key = ("Z", n, r, p)
        if key not in self._cache:
            cols = self.cols_le(n, p)
            if n == 0 or not cols:
                val = len(cols)
            else:
                rows = (list(range(self.cc.dims[n - 1])) if r is None
                        else self.rows_where(n - 1, lambda f: f > p - r))
                val = len(cols) - rank(self.cc.d[n].submatrix(rows=rows, cols=cols))
            self._cache[key] = val
        return self._cache[key]

    def rank_dZ(self, n, r, p):
        """rank of the filtration-p part of d Z^{r-1}_{p+r-1}(C_{n+1})."""
        key = ("dZ", n, r, p)
        if key not in self._cache:
            if r <= 0:
                val = 0
            else:
                d = self.cc.d[n + 1]
                cols = self.cols_le(n + 1, p + r - 1)
                high = self.rows_where(n, lambda f: f > p)
                sub = d.submatrix(cols=cols)
                K = kernel_basis(sub.submatrix(rows=high)) if high else ExactMatrix.identity(len(cols))
                at_p = self.rows_where(n, lambda f: f == p)
                val = rank(sub.submatrix(rows=at_p) @ K) if at_p and K.ncols else 0
            self._cache[key] = val
        return self._cache[key]

    def boundary_dim(self, n, p):
        """dim(im d_{n+1} ∩ F_p C_n)."""
        key = ("Bd", n, p)
        if key not in self._cache:
            d = self.cc.d[n + 1]
            high = self.rows_where(n, lambda f: f > p)
            self._cache[key] = rank(d) - (rank(d.submatrix(rows=high)) if high else 0)
        return self._cache[key]


def spectral_pages(fc: FilteredComplex, *, name: str | None = None) -> SpectralSequence:
    """All pages of the spectral sequence of a coordinate-filtered complex.

    The top degree lacks incoming differentials, so pages r >= 1 and E^∞ are
    only reported for degrees below it (the top is listed in ``flagged``).
    """
    cc = fc.complex
    top = cc.top
    R = _Ranks(fc)
    ss = SpectralSequence(name or fc.name, top, flagged=[top])
    lo = min(min(f) for f in fc.filt if f)
    hi = max(max(f) for f in fc.filt if f)
    r_last = hi - lo + 2
    for r in range(r_last + 1):
        page, ranks = {}, {}
        for n in range(top if r >= 1 else top + 1):
            for p in sorted(set(fc.filt[n])):
                q = n - p
                page[(p, q)] = R.dimZ(n, r, p) - R.dimZ(n, r - 1, p - 1) - R.rank_dZ(n, r, p)
                # rank of d^r: E^r_{p,q} -> E^r_{p-r,q+r-1}
                ranks[(p, q)] = (R.dimZ(n, r, p) - R.dimZ(n, r + 1, p)
                                 - R.dimZ(n, r - 1, p - 1) + R.dimZ(n, r, p - 1))
        ss.pages[r] = page
        ss.ranks[r] = ranks
    # E^∞ directly from cycles and boundaries
    hom = []
    for n in range(top):
        total = 0
        for p in sorted(set(fc.filt[n])):
            z = R.dimZ(n, None, p) - R.dimZ(n, None, p - 1)
            b = R.boundary_dim(n, p) - R.boundary_dim(n, p - 1)
            ss.einf[(p, n - p)] = z - b
            total += z - b
        hom.append(cc.dims[n] - rank(cc.d[n]) - rank(cc.d[n + 1]))
    ss.homology = hom
    last = ss.pages[r_last]
    for key, dim in ss.einf.items():
        if last.get(key) != dim:
            raise TruncationTooSmall(f"page {r_last} at {key} is {last.get(key)}, E^∞ is {dim}")
        r = r_last
        while r - 1 >= 1 and ss.pages[r - 1].get(key) == dim and all(
                ss.pages[s].get(key) == dim for s in range(r - 1, r_last + 1)):
            r -= 1
        ss.stable_page[key] = r
    return ss


def check_page_consistency(ss: SpectralSequence, r_max: int = 2) -> Report:
    """dim E^{r+1}_{p,q} = dim E^r_{p,q} - rank(d^r leaving) - rank(d^r arriving)
    for r < r_max, wherever the arriving differential lies inside the window."""
    rep = Report(f"E^(r+1) = H(E^r, d^r) for {ss.name}")
    for r in range(r_max):
        top_r = ss.top if r == 0 else ss.top - 1
        cur, ranks = ss.pages[r], ss.ranks[r]
        for (p, q), dim in sorted(ss.pages[r + 1].items()):
            if p + q + 1 > top_r:
                continue
            out_rank = ranks[(p, q)]
            in_rank = ranks.get((p + r, q - r + 1), 0)
            ok = dim == cur[(p, q)] - out_rank - in_rank
            rep.add(Check("E^(r+1) = H(E^r)", ok, {"r": r, "p": p, "q": q},
                          None if ok else {"E^r": cur[(p, q)], "out": out_rank, "in": in_rank,
                                           "E^(r+1)": dim}))
    return rep


def spectral_sequence(cyl: CylindricalModule, filtration: str, w: str, n_max: int) -> SpectralSequence:
    """Pages of the row or column spectral sequence, exact in
    total degrees <= n_max (Tot is built to n_max + 1)."""
    fc = filtered_total(cyl, filtration, w, n_max + 1)
    ss = spectral_pages(fc)
    ss.filtered = fc
    return ss


# ---------------------------------------------------------------------------
# verification of the E^1 / E^2 / E^∞ identifications


def _coefficient_tables(cyl, side, w, p_max, q_max):
    """{(level, q): dim H_q} for the coefficient bimodules (normalized for cyclic W)."""
    out = {}
    for lvl in range(p_max + 1):
        if side == "A":
            M = normalized_column_bimodule(cyl, lvl) if w == "cyclic" else column_bimodule(cyl, lvl)
        else:
            M = normalized_row_bimodule(cyl, lvl) if w == "cyclic" else row_bimodule(cyl, lvl)
        tab = hochschild_with_coefficients(M, q_max, check=False)
        for q, d in enumerate(tab.dims):
            out[(lvl, q)] = d
    return out


def verify_spectral(cyl: CylindricalModule, filtration: str, w: str, n_max: int,
                    direct: HomologyTable | None = None) -> tuple:
    """(report, spectral sequence) with the three identifications:

    (a) E^1 equals Hochschild homology with coefficients ⊠ W,
    (b) E^2 equals the cyclic homology of the induced cyclic modules,
    (c) Σ_{p+q=n} E^∞_{p,q} equals HC_n(A # B; W) (``direct`` if given).
    """
    w = coefficient(w)
    ss = spectral_sequence(cyl, filtration, w, n_max)
    side = "A" if filtration == "rows" else "B"
    rep = Report(f"spectral sequence ({filtration}, {w}) of {cyl.name}")
    rep.extend(check_filtration(ss.filtered))
    rep.extend(check_page_consistency(ss))
    # (a): E^1_{p,q} = ⊕_j H_q(coefficients at p - 2j)
    coeff = _coefficient_tables(cyl, side, w, n_max, n_max)
    for (p, q), dim in sorted(ss.pages[1].items()):
        if p + q > n_max:
            continue
        js = range(p // 2 + 1) if w == "cyclic" else [0]
        expect = sum(coeff[(p - 2 * j, q)] for j in js)
        rep.add(Check("E^1 = H(coefficients) ⊠ W", dim == expect, {"p": p, "q": q},
                      None if dim == expect else {"E1": dim, "expected": expect}))
    # (b): E^2_{p,q} = HC_p(H_q(...); W)
    for q in range(n_max + 1):
        ind = induced_cyclic_on_homology(cyl, q, side)
        tab = module_homology(ind, n_max - q, w, check=True)
        for p, d in enumerate(tab.dims):
            got = ss.pages[2].get((p, q))
            rep.add(Check("E^2 = HC(induced cyclic module)", got == d, {"p": p, "q": q},
                          None if got == d else {"E2": got, "expected": d}))
    # (c): convergence
    for n in range(n_max + 1):
        tot = ss.total(n)
        rep.add(Check("Σ E^∞ = H(Tot ⊠ W)", tot == ss.homology[n], {"n": n},
                      None if tot == ss.homology[n] else {"sum": tot, "homology": ss.homology[n]}))
        if direct is not None and n in direct.unflagged():
            ok = tot == direct.dims[n]
            rep.add(Check("Σ E^∞ = HC(A # B)", ok, {"n": n},
                          None if ok else {"sum": tot, "direct": direct.dims[n]}))
    return rep, ss


# ---------------------------------------------------------------------------
# separable collapse


def is_separable_group_algebra(alg) -> bool:
    """Group algebras of finite groups are separable in characteristic zero."""
    return alg.unit_index() is not None and is_group_like_table(alg)


def separable_collapse_check(cyl: CylindricalModule, n_max: int, w: str = "cyclic",
                             direct: HomologyTable | None = None) -> Report:
    """For each separable side, E^2_{p,q} = 0 for q > 0 and HC(A # B; W)
    equals HC of the coinvariant cyclic module."""
    from .cyclic import AlgebraCyclicModule
    from .smash import build_smash
    rep = Report(f"separable collapse for {cyl.name}")
    if direct is None:
        sm = build_smash(cyl.r, check=False)
        direct = module_homology(AlgebraCyclicModule(sm.algebra), n_max, w)
    sides = [(s, alg) for s, alg in (("A", cyl.A), ("B", cyl.B)) if is_separable_group_algebra(alg)]
    if not sides:
        rep.add(Check("a separable side exists", False, {"A": cyl.A.name, "B": cyl.B.name}))
        return rep
    for side, alg in sides:
        filtration = "rows" if side == "A" else "columns"
        ss = spectral_sequence(cyl, filtration, w, n_max)
        for (p, q), d in sorted(ss.pages[2].items()):
            if q > 0 and p + q <= n_max:
                rep.add(Check(f"E^2_(p,q) = 0 for q > 0 ({side} separable)", d == 0,
                              {"p": p, "q": q}, None if d == 0 else {"dim": d}))
        co = module_homology(coinvariant_cyclic(cyl, side), n_max, w)
        for n in range(n_max + 1):
            ok = co.dims[n] == direct.dims[n]
            rep.add(Check(f"HC(A # B) = HC(coinvariants, side {side})", ok, {"n": n},
                          None if ok else {"coinvariant": co.dims[n], "direct": direct.dims[n]}))
    return rep


def check_duality(cyl: CylindricalModule, w: str, n_max: int) -> Report:
    """Row and column spectral sequences have the same E^∞ totals."""
    rows = spectral_sequence(cyl, "rows", w, n_max)
    cols = spectral_sequence(cyl, "columns", w, n_max)
    rep = Report(f"row/column E^∞ totals for {cyl.name}")
    for n in range(n_max + 1):
        a, b = rows.total(n), cols.total(n)
        rep.add(Check("Σ E^∞ rows = Σ E^∞ columns", a == b, {"n": n},
                      None if a == b else {"rows": a, "columns": b}))
    return rep
