"""The cylindrical module A♮B of a strong smash product A #_R B.

A♮B(p, q) = B^{(x)(p+1)} (x) A^{(x)(q+1)}.  The unbarred operators act on
the B side:

    t_{p,q}   = f^{p+q+1,1} (id^p (x) Θ_q),     Θ_q = R_{q+1,q+2} ... R_{12}
    d_i       multiplies b_i b_{i+1}  (i < p),    d_p = d_0 t
    s_i       inserts 1_B after b_i

and the barred ones on the A side:

    t̄_{p,q}   = (Γ_p (x) id^q) f^{p+q+1,1},      Γ_p = R^-1_{p+1,p+2} ... R^-1_{12}
    d̄_j       multiplies a_j a_{j+1}  (j < q),    d̄_q = d̄_0 t̄
    s̄_j       inserts 1_A after a_j

Rows (fixed q) and columns (fixed p) are paracyclic modules, barred and
unbarred operators commute and t^{p+1} t̄^{q+1} = id.  The diagonal is a
cyclic module isomorphic to C(A # B) through Φ / Ψ.
"""

from __future__ import annotations

from .algebra import TensorSpace, TensorMap, embed_operator, identity_map, local, permute
from .cyclic import ParacyclicModule, MixedComplex, AlgebraCyclicModule, check_axioms
from .exactmath import ExactMatrix, induced_map, quotient
from .report import Check, Report, AxiomViolation, compare
from .smash import RMap, SmashAlgebra, build_smash


class IntertwinerViolation(AxiomViolation):
    pass


def _chain(space: TensorSpace, steps) -> TensorMap:
    """Compose ``(op, pos)`` steps, applied left to right, starting on ``space``."""
    out = identity_map(space)
    for op, pos in steps:
        out = local(op, out.target, pos) @ out
    return out


def _rotate_last_to_front(space: TensorSpace) -> TensorMap:
    k = len(space)
    return permute(space.factors, [k - 1] + list(range(k - 1)))


def _rotate_first_to_back(space: TensorSpace) -> TensorMap:
    k = len(space)
    return permute(space.factors, list(range(1, k)) + [0])


class CylindricalModule:
    def __init__(self, r: RMap, name: str | None = None):
        self.r = r
        self.A, self.B = r.A, r.B
        self.name = name or f"{self.A.name}♮{self.B.name}"
        self._cache: dict = {}

    def _memo(self, key, fn):
        if key not in self._cache:
            self._cache[key] = fn()
        return self._cache[key]

    def space(self, p: int, q: int) -> TensorSpace:
        return self._memo(("sp", p, q), lambda: TensorSpace([self.B] * (p + 1) + [self.A] * (q + 1)))

    def dim(self, p, q) -> int:
        return self.space(p, q).dim

    # -- braiding composites --------------------------------------------
    def theta(self, q: int) -> TensorMap:
        """Θ_q: B (x) A^{q+1} -> A^{q+1} (x) B, moving b to the right."""
        R = self.r.forward
        return self._memo(("theta", q), lambda: _chain(
            TensorSpace([self.B] + [self.A] * (q + 1)), [(R, k) for k in range(q + 1)]))

    def theta_inv(self, q: int) -> TensorMap:
        Ri = self.r.inverse_map
        return self._memo(("theta-1", q), lambda: _chain(
            TensorSpace([self.A] * (q + 1) + [self.B]), [(Ri, k) for k in range(q, -1, -1)]))

    def gamma(self, p: int) -> TensorMap:
        """Γ_p: A (x) B^{p+1} -> B^{p+1} (x) A, moving a to the right with R^-1."""
        Ri = self.r.inverse_map
        return self._memo(("gamma", p), lambda: _chain(
            TensorSpace([self.A] + [self.B] * (p + 1)), [(Ri, k) for k in range(p + 1)]))

    def gamma_inv(self, p: int) -> TensorMap:
        R = self.r.forward
        return self._memo(("gamma-1", p), lambda: _chain(
            TensorSpace([self.B] * (p + 1) + [self.A]), [(R, k) for k in range(p, -1, -1)]))

    # -- unbarred (B side) -------------------------------------------------
    def t(self, p, q) -> ExactMatrix:
        def build():
            sp = self.space(p, q)
            step = local(self.theta(q), sp, p)
            return (_rotate_last_to_front(step.target) @ step).matrix
        return self._memo(("t", p, q), build)

    def t_inv(self, p, q) -> ExactMatrix:
        def build():
            sp = self.space(p, q)
            rot = _rotate_first_to_back(sp)
            return (local(self.theta_inv(q), rot.target, p) @ rot).matrix
        return self._memo(("t-1", p, q), build)

    def face(self, p, q, i) -> ExactMatrix:
        if not 0 <= i <= p:
            raise IndexError(f"d_{i} at ({p},{q})")
        if i == p:
            return self._memo(("d", p, q, i), lambda: self.face(p, q, 0) @ self.t(p, q))
        return self._memo(("d", p, q, i), lambda: local(
            self.B.mult_map(), self.space(p, q), i).matrix)

    def degeneracy(self, p, q, i) -> ExactMatrix:
        if not 0 <= i <= p:
            raise IndexError(f"s_{i} at ({p},{q})")
        fs = self.space(p, q).factors
        return self._memo(("s", p, q, i), lambda: embed_operator(
            self.B.unit_map(), fs[:i + 1], fs[i + 1:]).matrix)

    # -- barred (A side) ---------------------------------------------------
    def tbar(self, p, q) -> ExactMatrix:
        def build():
            rot = _rotate_last_to_front(self.space(p, q))
            return (local(self.gamma(p), rot.target, 0) @ rot).matrix
        return self._memo(("tb", p, q), build)

    def tbar_inv(self, p, q) -> ExactMatrix:
        def build():
            sp = self.space(p, q)
            step = local(self.gamma_inv(p), sp, 0)
            return (_rotate_first_to_back(step.target) @ step).matrix
        return self._memo(("tb-1", p, q), build)

    def face_bar(self, p, q, j) -> ExactMatrix:
        if not 0 <= j <= q:
            raise IndexError(f"d̄_{j} at ({p},{q})")
        if j == q:
            return self._memo(("db", p, q, j), lambda: self.face_bar(p, q, 0) @ self.tbar(p, q))
        return self._memo(("db", p, q, j), lambda: local(
            self.A.mult_map(), self.space(p, q), p + 1 + j).matrix)

    def degeneracy_bar(self, p, q, j) -> ExactMatrix:
        if not 0 <= j <= q:
            raise IndexError(f"s̄_{j} at ({p},{q})")
        fs = self.space(p, q).factors
        k = p + 2 + j
        return self._memo(("sb", p, q, j), lambda: embed_operator(
            self.A.unit_map(), fs[:k], fs[k:]).matrix)

    # -- views ---------------------------------------------------------------
    def row(self, q: int) -> "RowModule":
        return self._memo(("row", q), lambda: RowModule(self, q))

    def column(self, p: int) -> "ColumnModule":
        return self._memo(("col", p), lambda: ColumnModule(self, p))

    def diagonal(self) -> "DiagonalModule":
        return self._memo("diag", lambda: DiagonalModule(self))

    def label(self, p, q):
        return self.space(p, q).label


class RowModule(ParacyclicModule):
    """A♮B(•, q): the paracyclic module in the B direction."""

    def __init__(self, cyl: CylindricalModule, q: int):
        super().__init__()
        self.cyl, self.q = cyl, q
        self.name = f"{cyl.name}(•,{q})"

    def space(self, n):
        return self.cyl.space(n, self.q)

    def face(self, n, i):
        return self.cyl.face(n, self.q, i)

    def degeneracy(self, n, i):
        return self.cyl.degeneracy(n, self.q, i)

    def t(self, n):
        return self.cyl.t(n, self.q)

    def t_inv(self, n):
        return self.cyl.t_inv(n, self.q)


class ColumnModule(ParacyclicModule):
    """A♮B(p, •): the paracyclic module in the A direction (barred operators)."""

    def __init__(self, cyl: CylindricalModule, p: int):
        super().__init__()
        self.cyl, self.p = cyl, p
        self.name = f"{cyl.name}({p},•)"

    def space(self, n):
        return self.cyl.space(self.p, n)

    def face(self, n, i):
        return self.cyl.face_bar(self.p, n, i)

    def degeneracy(self, n, i):
        return self.cyl.degeneracy_bar(self.p, n, i)

    def t(self, n):
        return self.cyl.tbar(self.p, n)

    def t_inv(self, n):
        return self.cyl.tbar_inv(self.p, n)


class DiagonalModule(ParacyclicModule):
    """Δ_n = A♮B(n, n) with d_i = d_i d̄_i, s_i = s_i s̄_i, t = t t̄."""

    def __init__(self, cyl: CylindricalModule):
        super().__init__()
        self.cyl = cyl
        self.name = f"Δ({cyl.name})"

    def space(self, n):
        return self.cyl.space(n, n)

    def face(self, n, i):
        c = self.cyl
        return self._memo(("d", n, i), lambda: c.face(n, n - 1, i) @ c.face_bar(n, n, i))

    def degeneracy(self, n, i):
        c = self.cyl
        return self._memo(("s", n, i), lambda: c.degeneracy(n, n + 1, i) @ c.degeneracy_bar(n, n, i))

    def t(self, n):
        c = self.cyl
        return self._memo(("t", n), lambda: c.t(n, n) @ c.tbar(n, n))

    def t_inv(self, n):
        c = self.cyl
        return self._memo(("t-1", n), lambda: c.tbar_inv(n, n) @ c.t_inv(n, n))


# ---------------------------------------------------------------------------
# certification


def _ops(cyl: CylindricalModule, p, q, barred: bool):
    """All operators of one direction leaving (p, q), as (name, matrix, target)."""
    out = []
    if barred:
        out.append(("t̄", cyl.tbar(p, q), (p, q)))
        for j in range(q + 1):
            if q >= 1:
                out.append((f"d̄_{j}", cyl.face_bar(p, q, j), (p, q - 1)))
            out.append((f"s̄_{j}", cyl.degeneracy_bar(p, q, j), (p, q + 1)))
    else:
        out.append(("t", cyl.t(p, q), (p, q)))
        for i in range(p + 1):
            if p >= 1:
                out.append((f"d_{i}", cyl.face(p, q, i), (p - 1, q)))
            out.append((f"s_{i}", cyl.degeneracy(p, q, i), (p + 1, q)))
    return out


def _same_op(cyl, name, p, q, barred):
    """Re-evaluate the operator called ``name`` at bidegree (p, q)."""
    if name in ("t", "t̄"):
        return cyl.tbar(p, q) if barred else cyl.t(p, q)
    kind, idx = name.split("_")
    idx = int(idx)
    table = {
        "d": cyl.face, "s": cyl.degeneracy, "d̄": cyl.face_bar, "s̄": cyl.degeneracy_bar,
    }
    return table[kind](p, q, idx)


def check_cylindrical(cyl: CylindricalModule, bound: int) -> Report:
    """Certify A♮B on the grid p, q <= bound.

    Rows and columns are checked as paracyclic modules; every barred and
    unbarred operator pair must commute; t^{p+1} t̄^{q+1} = id.  Only
    identities whose bidegrees all stay inside the grid are tested.
    """
    rep = Report(f"cylindrical module {cyl.name}, bound {bound}")
    for q in range(bound + 1):
        sub = check_axioms(cyl.row(q), bound, "paracyclic")
        for c in sub.checks:
            rep.add(Check("row: " + c.identity, c.passed, {**c.context, "q": q}, c.witness))
    for p in range(bound + 1):
        sub = check_axioms(cyl.column(p), bound, "paracyclic")
        for c in sub.checks:
            rep.add(Check("column: " + c.identity, c.passed, {**c.context, "p": p}, c.witness))

    def inside(pq):
        return 0 <= pq[0] <= bound and 0 <= pq[1] <= bound

    for p in range(bound + 1):
        for q in range(bound + 1):
            for un, U, (p1, q1) in _ops(cyl, p, q, False):
                if not inside((p1, q1)):
                    continue
                for bn, V, (p2, q2) in _ops(cyl, p, q, True):
                    if not inside((p2, q2)) or not inside((p1, q2)):
                        continue
                    # U after V  vs  V after U
                    lhs = _same_op(cyl, un, p, q2, False) @ V
                    rhs = _same_op(cyl, bn, p1, q, True) @ U
                    rep.add(compare(lhs, rhs, f"{un} {bn} = {bn} {un}",
                                    source_label=cyl.label(p, q),
                                    target_label=cyl.label(p1, q2), p=p, q=q))
            one = ExactMatrix.identity(cyl.dim(p, q))
            lhs = (cyl.t(p, q) ** (p + 1)) @ (cyl.tbar(p, q) ** (q + 1))
            rep.add(compare(lhs, one, "t^{p+1} t̄^{q+1} = id",
                            source_label=cyl.label(p, q), target_label=cyl.label(p, q), p=p, q=q))
    return rep


def build_cylindrical(smash_or_r, bound: int, *, check: bool = True) -> CylindricalModule:
    r = smash_or_r.r if isinstance(smash_or_r, SmashAlgebra) else smash_or_r
    cyl = CylindricalModule(r)
    cyl.bound = bound
    if check:
        rep = check_cylindrical(cyl, bound)
        cyl.report = rep
        if not rep.passed:
            c = rep.failures()[0]
            raise AxiomViolation(f"{cyl.name}: {c.identity} fails at {c.context}", c)
    return cyl


def diagonal(cyl: CylindricalModule, n_max: int | None = None) -> DiagonalModule:
    """The diagonal, re-verified as a cyclic module up to ``n_max``."""
    d = cyl.diagonal()
    if n_max is not None:
        rep = check_axioms(d, n_max, "cyclic")
        if not rep.passed:
            c = rep.failures()[0]
            raise AxiomViolation(f"{d.name}: {c.identity} fails at {c.context}", c)
        d.cyclic_known = True
    return d


# ---------------------------------------------------------------------------
# Φ / Ψ


def phi(cyl: CylindricalModule, n: int) -> TensorMap:
    """Φ_n: B^{n+1} (x) A^{n+1} -> (A (x) B)^{n+1}.

    Group k (k = 0..n, applied in order) moves a_k from slot n+1+k left to
    slot 2k with R_{n+k, n+k+1}, ..., R_{2k, 2k+1} (0-based positions).
    """
    R = cyl.r.forward
    steps = []
    for k in range(n + 1):
        steps.extend((R, pos) for pos in range(n + k, 2 * k - 1, -1))
    return cyl._memo(("phi", n), lambda: _chain(cyl.space(n, n), steps))


def psi(cyl: CylindricalModule, n: int) -> TensorMap:
    """Ψ_n: (A (x) B)^{n+1} -> B^{n+1} (x) A^{n+1}, the inverse of Φ_n built
    from R^-1 in layers: group j swaps the pairs starting at j, j+2, ..., 2n-j."""
    Ri = cyl.r.inverse_map
    steps = []
    for j in range(n + 1):
        steps.extend((Ri, pos) for pos in range(j, 2 * n - j + 1, 2))
    space = TensorSpace([cyl.A, cyl.B] * (n + 1))
    return cyl._memo(("psi", n), lambda: _chain(space, steps))


def check_phi_psi(cyl: CylindricalModule, n_max: int, smash: SmashAlgebra | None = None) -> Report:
    """Φ Ψ = Ψ Φ = id and Φ intertwines every cyclic operator, levels <= n_max."""
    sm = smash or build_smash(cyl.r, check=False)
    C = AlgebraCyclicModule(sm.algebra)
    D = cyl.diagonal()
    rep = Report(f"Φ/Ψ for {cyl.name}")
    for n in range(n_max + 1):
        F, G = phi(cyl, n).matrix, psi(cyl, n).matrix
        lab_d, lab_c = D.label(n), C.label(n)
        rep.add(compare(F @ G, ExactMatrix.identity(F.nrows), "Φ Ψ = id",
                        source_label=lab_c, target_label=lab_c, level=n))
        rep.add(compare(G @ F, ExactMatrix.identity(F.ncols), "Ψ Φ = id",
                        source_label=lab_d, target_label=lab_d, level=n))
        rep.add(compare(F @ D.t(n), C.t(n) @ F, "Φ t t̄ = t Φ",
                        source_label=lab_d, target_label=lab_c, level=n))
        for i in range(n + 1):
            if n >= 1:
                Fm = phi(cyl, n - 1).matrix
                rep.add(compare(C.face(n, i) @ F, Fm @ D.face(n, i), "d_i Φ = Φ d_i d̄_i",
                                source_label=lab_d, target_label=C.label(n - 1), level=n, i=i))
            if n + 1 <= n_max:
                Fp = phi(cyl, n + 1).matrix
                rep.add(compare(C.degeneracy(n, i) @ F, Fp @ D.degeneracy(n, i),
                                "s_i Φ = Φ s_i s̄_i", source_label=lab_d,
                                target_label=C.label(n + 1), level=n, i=i))
    return rep


def require_phi_psi(cyl, n_max, smash=None) -> Report:
    rep = check_phi_psi(cyl, n_max, smash)
    if not rep.passed:
        c = rep.failures()[0]
        raise IntertwinerViolation(f"{cyl.name}: {c.identity} fails at {c.context}", c)
    return rep


# ---------------------------------------------------------------------------
# total mixed complex


def degenerate_span(cyl: CylindricalModule, p: int, q: int) -> ExactMatrix:
    """Span of the images of all s_i and s̄_j landing in A♮B(p, q)."""
    mats = [cyl.degeneracy(p - 1, q, i) for i in range(p)]
    mats += [cyl.degeneracy_bar(p, q - 1, j) for j in range(q)]
    return ExactMatrix.hstack(mats, cyl.dim(p, q))


def total_mixed(cyl: CylindricalModule, top: int, *, normalized: bool = True,
                check: bool = True) -> MixedComplex:
    """Tot_n = ⊕_{p+q=n} A♮B(p,q), blocks ordered by p.

    𝕓 = b + ε b̄ and 𝔹 = B + T ε B̄ with ε = (-1)^p on A♮B(p,q); the sign makes
    the barred and unbarred differentials anticommute.

    On a paracyclic row B^2 = (1 - λ)(1 - T) s_{-1} s_{-1} N is nonzero, so the
    unnormalized total complex only satisfies 𝔹^2 = 0 modulo degenerate
    chains.  With ``normalized`` (the default) every A♮B(p,q) is replaced by
    its quotient by the degenerate span; induced_map raises NotWellDefined if
    some operator fails to preserve that span.
    """
    grid = [(p, n - p) for n in range(top + 1) for p in range(n + 1)]
    if normalized:
        sq = {pq: quotient(cyl.dim(*pq), degenerate_span(cyl, *pq)) for pq in grid}
        size = {pq: sq[pq].dim for pq in grid}
    else:
        size = {pq: cyl.dim(*pq) for pq in grid}

    def fit(m, src, tgt):
        return induced_map(m, sq[src], sq[tgt]) if normalized else m

    dims = [[size[(p, n - p)] for p in range(n + 1)] for n in range(top + 1)]
    bs, Bs = [ExactMatrix.zeros(0, sum(dims[0]))], []
    for n in range(1, top + 1):
        blocks = {}
        for p in range(n + 1):
            q = n - p
            if p >= 1:
                blocks[(p - 1, p)] = fit(cyl.row(q).b(p), (p, q), (p - 1, q))
            if q >= 1:
                bb = fit(cyl.column(p).b(q), (p, q), (p, q - 1))
                blocks[(p, p)] = bb if p % 2 == 0 else -bb
        bs.append(ExactMatrix.block(blocks, dims[n - 1], dims[n]))
    for n in range(top):
        blocks = {}
        for p in range(n + 1):
            q = n - p
            blocks[(p + 1, p)] = fit(cyl.row(q).B(p), (p, q), (p + 1, q))
            Bbar = fit(cyl.row(q + 1).T(p) @ cyl.column(p).B(q), (p, q), (p, q + 1))
            blocks[(p, p)] = Bbar if p % 2 == 0 else -Bbar
        Bs.append(ExactMatrix.block(blocks, dims[n + 1], dims[n]))
    mc = MixedComplex([sum(d) for d in dims], bs, Bs, name=f"Tot({cyl.name})")
    mc.bidegrees = [[(p, n - p) for p in range(n + 1)] for n in range(top + 1)]
    mc.block_dims = dims
    if check:
        mc.require()
    return mc


def check_anticommutation(cyl: CylindricalModule, bound: int) -> Report:
    """b̄B = -B b̄ and B̄ b = -b B̄ once the Koszul sign is applied; also T T̄ = 1."""
    rep = Report(f"cross-direction relations for {cyl.name}")
    for p in range(bound + 1):
        for q in range(bound + 1):
            T = cyl.row(q).T(p)
            Tb = cyl.column(p).T(q)
            rep.add(compare(T @ Tb, ExactMatrix.identity(cyl.dim(p, q)), "T T̄ = 1", p=p, q=q))
            if q >= 1 and p + 1 <= bound:
                # b̄ B vs B b̄ from (p,q) to (p+1,q-1); with signs they anticommute
                lhs = cyl.column(p + 1).b(q) @ cyl.row(q).B(p)
                rhs = cyl.row(q - 1).B(p) @ cyl.column(p).b(q)
                rep.add(compare(lhs, rhs, "b̄ B = B b̄ (unsigned)", p=p, q=q))
            if p >= 1 and q + 1 <= bound:
                lhs = cyl.column(p - 1).B(q) @ cyl.row(q).b(p)
                rhs = cyl.row(q + 1).b(p) @ cyl.column(p).B(q)
                rep.add(compare(lhs, rhs, "B̄ b = b B̄ (unsigned)", p=p, q=q))
    return rep
