"""R-maps R: B (x) A -> A (x) B and the smash product algebras they define.

The product on A (x) B is (a (x) b)(a' (x) b') = a R(b (x) a') b'.  For this
to be associative and unital, R must be quasitriangular and normal; it is
"strong" when invertible, and then R^-1 defines B # A as well.
"""

from __future__ import annotations

from dataclasses import dataclass

from .algebra import (FinDimAlgebra, TensorSpace, TensorMap, identity_map, permute, local,
                      check_algebra)
from .exactmath import ExactMatrix, inverse, rank, NotInvertible
from .report import Check, Report, AxiomViolation, compare


class NotModuleAlgebra(ValueError):
    def __init__(self, message, check=None):
        super().__init__(message)
        self.check = check


class RMap:
    """Linear map R: B (x) A -> A (x) B with a cached inverse."""

    def __init__(self, A: FinDimAlgebra, B: FinDimAlgebra, forward: ExactMatrix, *,
                 name: str = "R", inverse_matrix: ExactMatrix | None = None):
        n = A.dim * B.dim
        if forward.shape != (n, n):
            raise ValueError(f"R must be {n}x{n}, got {forward.shape}")
        self.A = A
        self.B = B
        self.name = name
        self.matrix = forward
        self._inverse = inverse_matrix

    @property
    def forward(self) -> TensorMap:
        return TensorMap(TensorSpace([self.B, self.A]), TensorSpace([self.A, self.B]), self.matrix)

    @property
    def inverse(self) -> ExactMatrix:
        if self._inverse is None:
            self._inverse = inverse(self.matrix)
        return self._inverse

    @property
    def inverse_map(self) -> TensorMap:
        return TensorMap(TensorSpace([self.A, self.B]), TensorSpace([self.B, self.A]), self.inverse)

    def is_invertible(self) -> bool:
        return rank(self.matrix) == self.matrix.nrows

    def apply_label(self, b: str, a: str) -> dict:
        return self.forward.apply_label(b, a)

    def __repr__(self):
        return f"RMap({self.name}: {self.B.name}⊗{self.A.name} -> {self.A.name}⊗{self.B.name})"


def check_rmap(r: RMap) -> Report:
    """Quasitriangularity (both identities), normality and invertibility."""
    A, B = r.A, r.B
    rep = Report(f"R-map {r.name}")
    R = r.forward
    mA, mB = A.mult_map(), B.mult_map()
    idA = identity_map(TensorSpace([A]))
    idB = identity_map(TensorSpace([B]))
    # R (m_B (x) id) = (id (x) m_B) R12 R23 on B B A
    bba = TensorSpace([B, B, A])
    lhs = R @ mB.tensor(idA)
    r23 = local(R, bba, 1)
    r12 = local(R, r23.target, 0)
    rhs = idA.tensor(mB) @ r12 @ r23
    rep.add(lhs.compare(rhs, "quasitriangular (m_B)"))
    # R (id (x) m_A) = (m_A (x) id) R23 R12 on B A A
    baa = TensorSpace([B, A, A])
    lhs = R @ idB.tensor(mA)
    r12 = local(R, baa, 0)
    r23 = local(R, r12.target, 1)
    rhs = mA.tensor(idB) @ r23 @ r12
    rep.add(lhs.compare(rhs, "quasitriangular (m_A)"))
    # normality
    uA, uB = A.unit_map(), B.unit_map()
    rep.add((R @ uB.tensor(idA)).compare(idA.tensor(uB), "normal: R(1 ⊗ a) = a ⊗ 1"))
    rep.add((R @ idB.tensor(uA)).compare(uA.tensor(idB), "normal: R(b ⊗ 1) = 1 ⊗ b"))
    ok = r.is_invertible()
    rep.add(Check("invertible", ok, {}, None if ok else
                  {"rank": rank(r.matrix), "dim": r.matrix.nrows}))
    return rep


def invert_rmap(r: RMap) -> RMap:
    """The R-map R^-1: A (x) B -> B (x) A, which defines B # A."""
    try:
        inv = r.inverse
    except NotInvertible as exc:
        raise NotInvertible(f"{r.name} is not invertible") from exc
    return RMap(r.B, r.A, inv, name=f"{r.name}^-1", inverse_matrix=r.matrix)


@dataclass
class SmashAlgebra:
    A: FinDimAlgebra
    B: FinDimAlgebra
    r: RMap
    algebra: FinDimAlgebra

    @property
    def name(self):
        return self.algebra.name

    def element(self, a: str, b: str) -> int:
        return self.A.index(a) * self.B.dim + self.B.index(b)


def smash_product_matrix(r: RMap) -> ExactMatrix:
    A, B = r.A, r.B
    space = TensorSpace([A, B, A, B])
    mid = local(r.forward, space, 1)            # a b a' b' -> a a' b b'
    out = A.mult_map().tensor(B.mult_map())
    return (out @ mid).matrix


def build_smash(r: RMap, name: str | None = None, *, check: bool = True) -> SmashAlgebra:
    """Structure constants of A #_R B on the basis a#b (index a*dimB + b)."""
    if check:
        rep = check_rmap(r)
        bad = rep.failures()
        if bad and any(c.identity != "invertible" for c in bad):
            c = bad[0]
            raise AxiomViolation(f"{r.name}: {c.identity} fails, witness {c.witness}", c)
    A, B = r.A, r.B
    mult = smash_product_matrix(r)
    unit = {i * B.dim + j: x * y for i, x in A.unit.items() for j, y in B.unit.items()}
    basis = [f"{a}#{b}" for a in A.basis for b in B.basis]
    alg = FinDimAlgebra(name or f"{A.name}#{B.name}", basis,
                        [unit.get(k, 0) for k in range(A.dim * B.dim)], mult, validate=False)
    rep = check_algebra(alg)
    if not rep.passed:
        c = rep.failures()[0]
        raise AxiomViolation(f"smash product {alg.name}: {c.identity} fails, witness {c.witness}", c)
    return SmashAlgebra(A, B, r, alg)


def check_subalgebra_embeddings(sm: SmashAlgebra) -> Report:
    """a -> a#1 and b -> 1#b are multiplicative on all basis pairs."""
    A, B, alg = sm.A, sm.B, sm.algebra
    rep = Report(f"embeddings {alg.name}")
    iA = TensorMap(TensorSpace([A]), TensorSpace([alg]),
                   identity_map(TensorSpace([A])).tensor(B.unit_map()).matrix)
    iB = TensorMap(TensorSpace([B]), TensorSpace([alg]),
                   A.unit_map().tensor(identity_map(TensorSpace([B]))).matrix)
    for name, inc, X in (("A", iA, A), ("B", iB, B)):
        lhs = alg.mult_map() @ inc.tensor(inc)
        rhs = inc @ X.mult_map()
        rep.add(lhs.compare(rhs, f"{name} embeds as a subalgebra"))
    return rep


def flip_rmap(A: FinDimAlgebra, B: FinDimAlgebra) -> RMap:
    """R = flip, giving the tensor product algebra."""
    m = permute([B, A], [1, 0]).matrix
    return RMap(A, B, m, name="flip", inverse_matrix=permute([A, B], [1, 0]).matrix)


def check_module_algebra(H, A: FinDimAlgebra, action: ExactMatrix) -> Report:
    """h.(aa') = (h1.a)(h2.a'), h.1 = eps(h)1, (gh).a = g.(h.a), 1.a = a."""
    rep = Report(f"module algebra {H.name} on {A.name}")
    Hh = H.alg
    act = TensorMap(TensorSpace([Hh, A]), TensorSpace([A]), action)
    idA = identity_map(TensorSpace([A]))
    idH = identity_map(TensorSpace([Hh]))
    rep.add((act @ idH.tensor(act)).compare(act @ H.m.tensor(idA), "action associative"))
    rep.add((act @ H.eta.tensor(idA)).compare(idA, "action unital"))
    lhs = act @ idH.tensor(A.mult_map())
    # h a a' -> h1 h2 a a' -> h1 a h2 a'
    split = local(H.delta, TensorSpace([Hh, A, A]), 0)
    reorder = permute([Hh, Hh, A, A], [0, 2, 1, 3])
    rhs = A.mult_map() @ act.tensor(act) @ reorder @ split
    rep.add(lhs.compare(rhs, "h.(aa') = (h1.a)(h2.a')"))
    rep.add((act @ idH.tensor(A.unit_map())).compare(A.unit_map() @ H.eps, "h.1 = eps(h)1"))
    return rep


def crossed_product_rmap(H, action: ExactMatrix, A: FinDimAlgebra, *,
                         name: str | None = None) -> tuple:
    """R(h (x) a) = h1.a (x) h2 for a left H-module algebra A.

    Returns ``(rmap, report)``; the report compares the closed-form inverse
    R^-1(a (x) h) = h2 (x) S^-1(h1).a with the matrix inverse of R.
    """
    rep = check_module_algebra(H, A, action)
    if not rep.passed:
        c = rep.failures()[0]
        raise NotModuleAlgebra(f"{c.identity} fails, witness {c.witness}", c)
    Hh = H.alg
    act = TensorMap(TensorSpace([Hh, A]), TensorSpace([A]), action)
    idH = identity_map(TensorSpace([Hh]))
    split = local(H.delta, TensorSpace([Hh, A]), 0)          # h1 h2 a
    reorder = permute([Hh, Hh, A], [0, 2, 1])                # h1 a h2
    R = act.tensor(idH) @ reorder @ split
    # closed-form inverse: a h -> a h1 h2 -> h2 h1 a -> h2 S^-1(h1).a
    sp = local(H.delta, TensorSpace([A, Hh]), 1)             # a h1 h2
    re = permute([A, Hh, Hh], [2, 1, 0])                     # h2 h1 a
    tail = idH.tensor(act @ H.S_inv.tensor(identity_map(TensorSpace([A]))))
    Rinv = tail @ re @ sp
    rmap = RMap(A, Hh, R.matrix, name=name or f"R[{H.name} on {A.name}]")
    try:
        rep.add(compare(rmap.inverse, Rinv.matrix, "closed-form inverse equals matrix inverse",
                        source_label=Rinv.source.label, target_label=Rinv.target.label))
    except NotInvertible:
        rep.add(Check("closed-form inverse equals matrix inverse", False, {}, {"error": "singular"}))
    return rmap, rep


def flip_braid_report(r: RMap, others=None) -> Report:
    """The flip/braid relations with one R^{+-1} on three-factor spaces.

    With f_ij the flip of factors i, j:
    f12 f23 R12 = R23 f12 f23,  f12 R23 f12 = f23 R12 f23,
    R12 f23 f12 = f23 f12 R23, and the same for R^-1; the free factor
    ranges over A and B.
    """
    rep = Report(f"flip/braid relations {r.name}")
    inv = invert_rmap(r)
    for label, rm in (("R", r), ("R^-1", inv)):
        X, Y = rm.B, rm.A          # rm: X (x) Y -> Y (x) X
        R = rm.forward
        for Z in (others or [r.A, r.B]):
            def f(space, i):
                order = list(range(len(space)))
                order[i], order[i + 1] = order[i + 1], order[i]
                return permute(space.factors, order)

            def chain(space, steps):
                total = identity_map(space)
                for kind, pos in steps:
                    step = local(R, total.target, pos) if kind == "R" else f(total.target, pos)
                    total = step @ total
                return total

            ctx = {"map": label, "free_factor": Z.name}
            s1 = TensorSpace([X, Y, Z])
            lhs = chain(s1, [("R", 0), ("f", 1), ("f", 0)])
            rhs = chain(s1, [("f", 1), ("f", 0), ("R", 1)])
            rep.add(lhs.compare(rhs, "f12 f23 R12 = R23 f12 f23", **ctx))
            s2 = TensorSpace([X, Z, Y])
            lhs = chain(s2, [("f", 0), ("R", 1), ("f", 0)])
            rhs = chain(s2, [("f", 1), ("R", 0), ("f", 1)])
            rep.add(lhs.compare(rhs, "f12 R23 f12 = f23 R12 f23", **ctx))
            s3 = TensorSpace([Z, X, Y])
            lhs = chain(s3, [("f", 0), ("f", 1), ("R", 0)])
            rhs = chain(s3, [("R", 1), ("f", 0), ("f", 1)])
            rep.add(lhs.compare(rhs, "R12 f23 f12 = f23 f12 R23", **ctx))
    return rep


def rmap_to_json(r: RMap) -> dict:
    from .exactmath import format_scalar
    return {
        "A": r.A.to_json(),
        "B": r.B.to_json(),
        "R": [[rr, c, format_scalar(v)] for rr, c, v in r.matrix.entries()],
    }


def rmap_from_json(data: dict) -> RMap:
    from .exactmath import parse_scalar
    for key in ("A", "B", "R"):
        if key not in data:
            raise ValueError(f"R-map descriptor is missing field '{key}'")
    A = FinDimAlgebra.from_json(data["A"])
    B = FinDimAlgebra.from_json(data["B"])
    n = A.dim * B.dim
    m = ExactMatrix.from_entries(n, n, [(int(i), int(j), parse_scalar(v)) for i, j, v in data["R"]])
    return RMap(A, B, m, name=data.get("name", "R"))
