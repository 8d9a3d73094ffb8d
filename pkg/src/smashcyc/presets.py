"""Named example algebras, R-maps, Hopf algebras and matched pairs.

Every constructor validates its object completely before returning it.
Preset names are the identifiers accepted by the command line, e.g.
``cyclic_group(3)``, ``taft(3)``, ``pareigis_surrogate(1)``,
``tensor_flip(K2,K2)``, ``bismash(Z3,Z2)``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
import re

from .algebra import FinDimAlgebra, algebra_from_table, TensorSpace
from .bimodule import Bimodule
from .exactmath import (ExactMatrix, MAX_ORDER, zeta, q_integer, q_binomial,
                        rank)
from .hopf import (HopfAlgebra, check_hopf, drinfeld_matched_pair,
                   build_double_crossproduct, group_matched_pair, trivial_matched_pair,
                   check_matched_pair, check_inverse_antipode_identities,
                   cyclic_group_elements, is_group_like_table,
                   DoubleCrossproduct, MatchedPair)
from .report import Report, Check, AxiomViolation, compare
from .smash import (RMap, SmashAlgebra, build_smash, check_rmap, invert_rmap,
                    crossed_product_rmap, flip_rmap, flip_braid_report,
                    check_subalgebra_embeddings)


class UnknownPreset(ValueError):
    pass


class UnsupportedField(ValueError):
    pass


class WrongAlgebra(ValueError):
    pass


# ---------------------------------------------------------------------------
# algebras


def ground_field() -> FinDimAlgebra:
    return FinDimAlgebra("k", ["1"], [1], ExactMatrix(1, 1, [{0: 1}]))


def dual_numbers() -> FinDimAlgebra:
    """D = k[s]/(s^2)."""
    return algebra_from_table("D", ["1", "s"], {(0, 0): {0: 1}, (0, 1): {1: 1}, (1, 0): {1: 1}}, "1")


def cyclic_group(n: int, name: str | None = None, var: str = "x") -> FinDimAlgebra:
    """k[x]/(x^n - 1)."""
    if n < 1:
        raise ValueError("cyclic_group needs n >= 1")
    basis = ["1"] + [var if i == 1 else f"{var}^{i}" for i in range(1, n)]
    table = {(i, j): {(i + j) % n: 1} for i in range(n) for j in range(n)}
    return algebra_from_table(name or ("K2" if n == 2 else f"k[Z/{n}]"), basis, table, "1")


def cyclic_group_hopf(n: int, name: str | None = None, var: str = "x") -> HopfAlgebra:
    alg = cyclic_group(n, name, var)
    cop = ExactMatrix(n * n, n, [{i * n + i: 1} for i in range(n)])
    counit = ExactMatrix(1, n, [{0: 1} for _ in range(n)])
    anti = ExactMatrix(n, n, [{(-i) % n: 1} for i in range(n)])
    return HopfAlgebra(alg, cop, counit, anti)


# ---------------------------------------------------------------------------
# Taft algebras: basis sigma^i d^j (flat index j*N + i), d sigma = q sigma d


def _taft_labels(n):
    if n == 2:
        return ["1", "g", "x", "gx"]
    out = []
    for j in range(n):
        for i in range(n):
            s = ("g" if i == 1 else f"g^{i}") if i else ""
            t = ("x" if j == 1 else f"x^{j}") if j else ""
            out.append((s + t) or "1")
    return out


def taft(n: int) -> HopfAlgebra:
    """Taft algebra of dimension n^2 over Q(zeta_n) (Sweedler's algebra for n=2).

    Generators sigma (group-like, sigma^n = 1) and d (d^n = 0) with
    d sigma = q sigma d, q = zeta_n;
    Delta(sigma^i d^j) = sum_m [j choose m]_q sigma^{i+m} d^{j-m} (x) sigma^i d^m.
    """
    if n < 2 or n > MAX_ORDER:
        raise UnsupportedField(f"taft({n}) needs 2 <= N <= {MAX_ORDER}")
    q = zeta(n)
    if q_integer(n, q) != 0:
        raise AxiomViolation(f"(N)_q is not zero for N={n}")
    dim = n * n

    def idx(i, j):
        return j * n + i

    table = {}
    for j in range(n):
        for i in range(n):
            for l in range(n):
                for k in range(n):
                    if j + l < n:
                        table[(idx(i, j), idx(k, l))] = {idx((i + k) % n, j + l): q ** (j * k)}
    labels = _taft_labels(n)
    alg = algebra_from_table("H4" if n == 2 else f"T{n}", labels, table, "1")
    cop_cols = []
    for j in range(n):
        for i in range(n):
            col = {}
            for m in range(j + 1):
                c = q_binomial(j, m, q)
                if c != 0:
                    col[idx((i + m) % n, j - m) * dim + idx(i, m)] = c
            cop_cols.append(col)
    cop = ExactMatrix(dim * dim, dim, cop_cols)
    counit = ExactMatrix(1, dim, [({0: 1} if k < n else {}) for k in range(dim)])
    # S(sigma) = sigma^-1, S(d) = -sigma^-1 d, extended anti-multiplicatively
    s_sigma = {idx(n - 1, 0): 1}
    s_d = {idx(n - 1, 1): -1}
    anti_cols = []
    for j in range(n):
        for i in range(n):
            v = {idx(0, 0): 1}
            for _ in range(j):
                v = alg.mul_vec(v, s_d)
            for _ in range(i):
                v = alg.mul_vec(v, s_sigma)
            anti_cols.append(v)
    anti = ExactMatrix(dim, dim, anti_cols)
    return HopfAlgebra(alg, cop, counit, anti)


def sweedler() -> HopfAlgebra:
    return taft(2)


# ---------------------------------------------------------------------------
# the preset container


@dataclass
class Preset:
    name: str
    algebra: FinDimAlgebra
    smash: SmashAlgebra | None = None
    hopf: HopfAlgebra | None = None
    pair: MatchedPair | None = None
    double: DoubleCrossproduct | None = None
    report: Report = field(default_factory=lambda: Report("preset"))
    extras: dict = field(default_factory=dict)

    @property
    def rmap(self) -> RMap | None:
        return self.smash.r if self.smash else None


def smash_certification(r: RMap) -> Report:
    """check_rmap, the R^-1 round trip, flip/braid relations, embeddings."""
    rep = Report(f"R-map suite {r.name}")
    rep.extend(check_rmap(r))
    inv = invert_rmap(r)
    rt = check_rmap(inv)
    for c in rt.checks:
        c.identity = "inverse: " + c.identity
    rep.extend(rt)
    rep.add(compare(invert_rmap(inv).matrix, r.matrix, "inverting twice gives R"))
    rep.extend(flip_braid_report(r))
    return rep


def _smash_preset(name, r: RMap, extra_reports=()) -> Preset:
    rep = Report(f"preset {name}")
    rep.extend(check_algebra_pair(r))
    rep.extend(smash_certification(r))
    for e in extra_reports:
        rep.extend(e)
    rep.require()
    sm = build_smash(r, name=name)
    rep.extend(check_subalgebra_embeddings(sm))
    rep.require()
    return Preset(name, sm.algebra, smash=sm, report=rep)


def check_algebra_pair(r: RMap) -> Report:
    from .algebra import check_algebra
    rep = Report("factors")
    rep.extend(check_algebra(r.A)).extend(check_algebra(r.B))
    return rep


def pareigis_rmap(M: int) -> RMap:
    """R(t^r (x) s) = (-1)^r s (x) t^r on k[Z/2M] (x) D; units pass through."""
    if M < 1:
        raise ValueError("pareigis_surrogate needs M >= 1")
    D = dual_numbers()
    T = cyclic_group(2 * M, name=f"k[Z/{2 * M}]", var="t")
    # basis of B (x) A is t^r (x) a (index r*2 + a); target a (x) t^r (index a*2M + r)
    n = 2 * M
    cols = []
    for r_ in range(n):
        for a in range(2):
            sign = (-1) ** r_ if a == 1 else 1
            cols.append({a * n + r_: sign})
    return RMap(D, T, ExactMatrix(2 * n, 2 * n, cols), name=f"R[P{M}]")


def pareigis_surrogate(M: int = 1) -> Preset:
    """Finite stand-in D # k[Z/2M] for the Pareigis algebra: t^{2M} = 1,
    s^2 = 0, st = -ts."""
    r = pareigis_rmap(M)
    p = _smash_preset(f"P{M}", r)
    if M == 1:
        p.report.extend(pareigis_sweedler_isomorphism(p.algebra))
        p.report.require()
    return p


def pareigis_sweedler_isomorphism(alg: FinDimAlgebra) -> Report:
    """1#1 -> 1, 1#t -> g, s#1 -> x, s#t -> -gx preserves structure constants."""
    H = sweedler().alg
    phi = ExactMatrix.from_columns(4, [{0: 1}, {1: 1}, {2: 1}, {3: -1}])
    rep = Report("P1 ≅ Sweedler")
    rep.add(Check("same dimension", alg.dim == H.dim))
    rep.add(compare(phi @ alg.mult, H.mult @ phi.kron(phi), "basis map is multiplicative",
                    source_label=TensorSpace([alg, alg]).label,
                    target_label=lambda k: H.basis[k]))
    rep.add(compare(ExactMatrix(4, 1, [phi.apply(alg.unit)]),
                    ExactMatrix(4, 1, [dict(H.unit)]), "basis map is unital"))
    rep.add(Check("basis map is invertible", rank(phi) == 4))
    return rep


def taft_action_on_cyclic(n: int) -> tuple:
    """(H, A, action) with d.x^m = (m)_q x^{m-1}, sigma.x^m = q^m x^m."""
    H = taft(n)
    A = cyclic_group(n)
    q = zeta(n)
    dim = n * n
    cols = []
    for j in range(n):
        for i in range(n):
            for m in range(n):
                coeff, deg = 1, m
                for _ in range(j):
                    coeff = coeff * q_integer(deg, q)
                    deg -= 1
                if coeff == 0 or deg < 0:
                    cols.append({})
                    continue
                coeff = coeff * q ** (i * deg)
                cols.append({deg: coeff} if coeff != 0 else {})
    # column order must be (h, a) with h flat index j*n+i
    action = ExactMatrix(n, dim * n, cols)
    return H, A, action


def module_algebra_5_2(n: int = 2) -> Preset:
    """k[x]/(x^n - 1) # Taft(n) via the crossed product of the q-derivation action."""
    H, A, action = taft_action_on_cyclic(n)
    r, rep = crossed_product_rmap(H, action, A, name=f"R[q-derivation,N={n}]")
    p = _smash_preset(f"A{n}#T{n}" if n > 2 else "K2#H4", r, [rep, check_hopf(H)])
    p.hopf = H
    p.extras["action"] = action
    return p


def tensor_flip(A: FinDimAlgebra, B: FinDimAlgebra) -> Preset:
    r = flip_rmap(A, B)
    return _smash_preset(f"{A.name}⊗{B.name}", r)


def drinfeld_double_sweedler() -> Preset:
    H = sweedler()
    pair = drinfeld_matched_pair(H)
    rep = Report("preset D(H4)")
    rep.extend(check_matched_pair(pair)).extend(check_inverse_antipode_identities(pair))
    rep.require()
    dcp = build_double_crossproduct(pair, name="D(H4)")
    rep.extend(dcp.report)
    rep.extend(smash_certification(dcp.r_map))
    rep.require()
    sm = build_smash(dcp.r_map, name="D(H4)")
    rep.extend(check_subalgebra_embeddings(sm))
    rep.require()
    return Preset("D(H4)", sm.algebra, smash=sm, hopf=dcp.hopf, pair=pair, double=dcp, report=rep)


_GROUPS = {
    "Z2": lambda: cyclic_group_elements(2),
    "Z3": lambda: cyclic_group_elements(3),
}


def bismash(g: str, k: str) -> Preset:
    """Group algebra of a bismash product.  (Z2, Z2) uses trivial actions;
    (Z3, Z2) lets Z2 act on Z3 by inversion (giving S3)."""
    if g not in _GROUPS or k not in _GROUPS:
        raise UnknownPreset(f"bismash supports groups {sorted(_GROUPS)}")
    G, Kg = _GROUPS[g](), _GROUPS[k]()
    if (g, k) == ("Z3", "Z2"):
        def left(kk, gg):
            return gg if kk == 0 else (-gg) % 3
    else:
        def left(kk, gg):
            return gg

    def right(kk, gg):
        return kk

    pair = group_matched_pair(G, Kg, left, right, name=f"({g},{k})")
    rep = Report(f"preset bismash({g},{k})")
    rep.extend(check_matched_pair(pair)).extend(check_inverse_antipode_identities(pair))
    rep.require()
    dcp = build_double_crossproduct(pair, name=f"k[{g}⋈{k}]")
    rep.extend(dcp.report)
    rep.extend(smash_certification(dcp.r_map))
    alg = dcp.hopf.alg
    rep.add(Check("bismash structure constants are a group table", is_group_like_table(alg)))
    rep.require()
    sm = build_smash(dcp.r_map, name=f"k[{g}⋈{k}]")
    rep.extend(check_subalgebra_embeddings(sm))
    return Preset(f"bismash({g},{k})", sm.algebra, smash=sm, hopf=dcp.hopf, pair=pair,
                  double=dcp, report=rep)


def sweedler_trivial_pair() -> MatchedPair:
    H = sweedler()
    return trivial_matched_pair(H, H)


# ---------------------------------------------------------------------------
# name resolution


_SIMPLE = {
    "k": ground_field,
    "D": dual_numbers,
    "dual_numbers": dual_numbers,
    "K2": lambda: cyclic_group(2),
}


def simple_algebra(name: str) -> FinDimAlgebra:
    name = name.strip()
    if name in _SIMPLE:
        return _SIMPLE[name]()
    m = re.fullmatch(r"cyclic_group\((\d+)\)", name)
    if m:
        return cyclic_group(int(m.group(1)))
    if name in ("sweedler", "H4"):
        return sweedler().alg
    m = re.fullmatch(r"taft\((\d+)\)", name)
    if m:
        return taft(int(m.group(1))).alg
    raise UnknownPreset(f"unknown algebra {name!r}")


PRESET_NAMES = (
    "dual_numbers", "cyclic_group(N)", "sweedler", "taft(N)", "module_algebra_5_2(N)",
    "pareigis_surrogate(M)", "bismash(G,K)", "drinfeld_double_sweedler", "tensor_flip(A,B)",
)


@lru_cache(maxsize=None)
def preset(name: str) -> Preset:
    """Resolve a preset name to a validated object."""
    name = name.replace(" ", "")
    if name in ("dual_numbers", "D"):
        alg = dual_numbers()
        return Preset("D", alg, smash=_trivial_smash(alg))
    if name == "K2":
        name = "cyclic_group(2)"
    m = re.fullmatch(r"cyclic_group\((\d+)\)", name)
    if m:
        n = int(m.group(1))
        H = cyclic_group_hopf(n)
        return Preset(H.name, H.alg, smash=_trivial_smash(H.alg), hopf=H, report=check_hopf(H))
    if name in ("sweedler", "H4"):
        H = sweedler()
        return Preset("H4", H.alg, smash=_trivial_smash(H.alg), hopf=H, report=check_hopf(H))
    m = re.fullmatch(r"taft\((\d+)\)", name)
    if m:
        H = taft(int(m.group(1)))
        return Preset(H.name, H.alg, smash=_trivial_smash(H.alg), hopf=H, report=check_hopf(H))
    m = re.fullmatch(r"module_algebra_5_2\((\d+)\)", name)
    if m:
        return module_algebra_5_2(int(m.group(1)))
    m = re.fullmatch(r"pareigis_surrogate\((\d+)\)", name)
    if m:
        return pareigis_surrogate(int(m.group(1)))
    if name == "drinfeld_double_sweedler":
        return drinfeld_double_sweedler()
    m = re.fullmatch(r"bismash\((\w+),(\w+)\)", name)
    if m:
        return bismash(m.group(1), m.group(2))
    m = re.fullmatch(r"tensor_flip\((.+)\)", name)
    if m:
        parts = _split_args(m.group(1))
        if len(parts) != 2:
            raise UnknownPreset("tensor_flip takes two algebra names")
        return tensor_flip(simple_algebra(parts[0]), simple_algebra(parts[1]))
    raise UnknownPreset(f"unknown preset {name!r}; known: {', '.join(PRESET_NAMES)}")


def _split_args(s: str) -> list:
    out, depth, cur = [], 0, ""
    for ch in s:
        if ch == "," and depth == 0:
            out.append(cur)
            cur = ""
            continue
        depth += ch == "("
        depth -= ch == ")"
        cur += ch
    out.append(cur)
    return out


def _trivial_smash(alg: FinDimAlgebra) -> SmashAlgebra:
    """alg viewed as alg # k with the flip, so every preset has a smash form."""
    k = ground_field()
    r = flip_rmap(alg, k)
    return SmashAlgebra(alg, k, r, alg)


# ---------------------------------------------------------------------------
# dual numbers: small periodic resolution


def dual_numbers_resolution_homology(M: Bimodule, q_max: int) -> list:
    """dim H_q(D, M) for q <= q_max from the periodic resolution.

    With mu(m) = ms - sm and nu(m) = ms + sm, the complex is
    M <-mu- M <-nu- M <-mu- M ...; returns a list of dimensions.
    """
    A = M.algebra
    if A.dim != 2 or A.basis != ["1", "s"] or A.product(1, 1):
        raise WrongAlgebra(f"resolution oracle needs the dual numbers, got {A.name}")
    d = M.dim
    s = 1
    left_s = ExactMatrix(d, d, [M.left.cols[s * d + x] for x in range(d)])
    right_s = ExactMatrix(d, d, [M.right.cols[x * 2 + s] for x in range(d)])
    mu = right_s - left_s
    nu = right_s + left_s
    dims = []
    for q in range(q_max + 1):
        out_map = None if q == 0 else (mu if q % 2 == 1 else nu)
        in_map = mu if q % 2 == 0 else nu
        ker = d - (rank(out_map) if out_map is not None else 0)
        dims.append(ker - rank(in_map))
    return dims
