"""Finite-dimensional Hopf algebras, matched pairs and double crossproducts.

Sweedler-notation formulas are compiled into pipelines of tensor maps: a
coproduct splits a factor in two, a permutation reorders factors, and the
structure maps act on adjacent factors.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product as iproduct

from .algebra import (FinDimAlgebra, TensorSpace, TensorMap, identity_map, permute,
                      local, flip, check_algebra)
from .exactmath import ExactMatrix, inverse, NotInvertible
from .report import Check, Report, compare


class NotMatched(ValueError):
    pass


K = TensorSpace([])  # the ground field


class Pipeline:
    """Compose local maps on a running list of factors."""

    def __init__(self, factors):
        self.space = TensorSpace(factors)
        self.map = identity_map(self.space)

    def at(self, pos: int, op: TensorMap) -> "Pipeline":
        step = local(op, self.space, pos)
        self.map = step @ self.map
        self.space = step.target
        return self

    def perm(self, order) -> "Pipeline":
        step = permute(self.space.factors, order)
        self.map = step @ self.map
        self.space = step.target
        return self

    def result(self) -> TensorMap:
        return self.map


class HopfAlgebra:
    def __init__(self, alg: FinDimAlgebra, coproduct: ExactMatrix, counit: ExactMatrix,
                 antipode: ExactMatrix, *, validate: bool = True,
                 antipode_inverse: ExactMatrix | None = None):
        self.alg = alg
        one = TensorSpace([alg])
        two = TensorSpace([alg, alg])
        self.delta = TensorMap(one, two, coproduct)
        self.eps = TensorMap(one, K, counit)
        self.S = TensorMap(one, one, antipode)
        self._S_inv = antipode_inverse
        self.m = alg.mult_map()
        self.eta = alg.unit_map()
        if validate:
            check_hopf(self).require()

    @property
    def name(self):
        return self.alg.name

    @property
    def dim(self):
        return self.alg.dim

    @property
    def S_inv(self) -> TensorMap:
        if self._S_inv is None:
            self._S_inv = inverse(self.S.matrix)
        return TensorMap(self.S.source, self.S.target, self._S_inv)

    def delta_power(self, k: int) -> TensorMap:
        """Iterated coproduct H -> H^{(x) k}."""
        pipe = Pipeline([self.alg])
        for i in range(k - 1):
            pipe.at(i, self.delta)
        return pipe.result()

    def __repr__(self):
        return f"HopfAlgebra({self.alg.name!r}, dim={self.dim})"


def check_hopf(H: HopfAlgebra) -> Report:
    A = H.alg
    rep = Report(f"hopf {A.name}").extend(check_algebra(A))
    one = TensorSpace([A])
    idH = identity_map(one)
    D, e, S, m, u = H.delta, H.eps, H.S, H.m, H.eta
    rep.add((D.tensor(idH) @ D).compare(idH.tensor(D) @ D, "coassociativity"))
    rep.add((e.tensor(idH) @ D).compare(idH, "left counit"))
    rep.add((idH.tensor(e) @ D).compare(idH, "right counit"))
    mid = permute([A, A, A, A], [0, 2, 1, 3])
    rep.add((D @ m).compare(m.tensor(m) @ mid @ D.tensor(D), "coproduct multiplicative"))
    rep.add((D @ u).compare(u.tensor(u), "coproduct unital"))
    rep.add((e @ m).compare(e.tensor(e), "counit multiplicative"))
    rep.add((e @ u).compare(identity_map(K), "counit unital"))
    rep.add((m @ S.tensor(idH) @ D).compare(u @ e, "left antipode"))
    rep.add((m @ idH.tensor(S) @ D).compare(u @ e, "right antipode"))
    try:
        Si = H.S_inv
        rep.add((S @ Si).compare(idH, "antipode invertible"))
    except NotInvertible:
        rep.add(Check("antipode invertible", False, {}, {"error": "singular antipode"}))
    return rep


def group_algebra_hopf(name, elements, mul, inv, identity) -> HopfAlgebra:
    """k[G] for a finite group given by element labels and operations."""
    idx = {g: i for i, g in enumerate(elements)}
    n = len(elements)
    cols = [{idx[mul(g, h)]: 1} for g in elements for h in elements]
    alg = FinDimAlgebra(name, [str(g) for g in elements],
                        [1 if g == identity else 0 for g in elements],
                        ExactMatrix(n, n * n, cols))
    cop = ExactMatrix(n * n, n, [{i * n + i: 1} for i in range(n)])
    counit = ExactMatrix(1, n, [{0: 1} for _ in range(n)])
    anti = ExactMatrix(n, n, [{idx[inv(g)]: 1} for g in elements])
    return HopfAlgebra(alg, cop, counit, anti)


def cyclic_group_elements(n):
    return list(range(n)), (lambda a, b: (a + b) % n), (lambda a: (-a) % n), 0


def dual_cop(H: HopfAlgebra, name: str | None = None) -> HopfAlgebra:
    """H^{*cop} in the dual basis {e^i}."""
    A = H.alg
    d = A.dim
    mult = H.delta.matrix.transpose()          # e^i e^j = sum_k Delta_k^{ij} e^k
    unit = [H.eps.matrix.cols[k].get(0, 0) for k in range(d)]
    dual = FinDimAlgebra(name or f"{A.name}*cop", [f"{b}*" for b in A.basis], unit, mult)
    swap = flip([A], [A]).matrix
    cop = swap @ A.mult.transpose()             # opposite of Delta(f)(x(x)y) = f(xy)
    counit = ExactMatrix(1, d, [({0: A.unit[k]} if k in A.unit else {}) for k in range(d)])
    s_inv = H.S_inv.matrix
    return HopfAlgebra(dual, cop, counit, s_inv.transpose(),
                       antipode_inverse=H.S.matrix.transpose())


# ---------------------------------------------------------------------------
# matched pairs


@dataclass
class MatchedPair:
    B: HopfAlgebra
    H: HopfAlgebra
    left: ExactMatrix      # H (x) B -> B   (h |> b)
    right: ExactMatrix     # H (x) B -> H   (h <| b)
    name: str = "matched pair"
    _cache: dict = field(default_factory=dict, repr=False)

    @property
    def act(self) -> TensorMap:
        return TensorMap(TensorSpace([self.H.alg, self.B.alg]), TensorSpace([self.B.alg]), self.left)

    @property
    def ract(self) -> TensorMap:
        return TensorMap(TensorSpace([self.H.alg, self.B.alg]), TensorSpace([self.H.alg]), self.right)

    def delta_hb(self) -> TensorMap:
        """h (x) b -> h1 (x) b1 (x) h2 (x) b2."""
        Hh, Bb = self.H.alg, self.B.alg
        return (Pipeline([Hh, Bb]).at(0, self.H.delta).at(2, self.B.delta)
                .perm([0, 2, 1, 3]).result())

    def r_forward(self) -> TensorMap:
        """R(h (x) b) = h1 |> b1 (x) h2 <| b2 : H (x) B -> B (x) H."""
        if "R" not in self._cache:
            self._cache["R"] = self.act.tensor(self.ract) @ self.delta_hb()
        return self._cache["R"]

    def r_formula(self) -> TensorMap:
        """The explicit candidate inverse
        r(b (x) h) = h3 <| (S^-1 h2 |> S^-1 b3) (x) (S^-1 h1 <| S^-1 b2) |> b1."""
        Hh, Bb = self.H.alg, self.B.alg
        SBi, SHi = self.B.S_inv, self.H.S_inv
        pipe = Pipeline([Bb, Hh])
        pipe.at(1, self.H.delta_power(3)).at(0, self.B.delta_power(3))
        # factors: b1 b2 b3 h1 h2 h3
        pipe.at(1, SBi).at(2, SBi).at(3, SHi).at(4, SHi)
        pipe.perm([5, 4, 2, 3, 1, 0])        # h3 h2 b3 h1 b2 b1
        pipe.at(1, self.act)                 # h3 X h1 b2 b1
        pipe.at(0, self.ract)                # F h1 b2 b1
        pipe.at(1, self.ract)                # F Y b1
        pipe.at(1, self.act)                 # F G
        return pipe.result()


def check_matched_pair(pair: MatchedPair) -> Report:
    """Module-coalgebra axioms and the three matched-pair compatibilities,
    witnesses on failure."""
    Bh, Hh = pair.B, pair.H
    B, H = Bh.alg, Hh.alg
    rep = Report(f"matched pair {pair.name}")
    act, ract = pair.act, pair.ract
    idB, idH = identity_map(TensorSpace([B])), identity_map(TensorSpace([H]))
    dhb = pair.delta_hb()
    R = pair.r_forward()
    # B is a left H-module coalgebra via |>
    rep.add((act @ idH.tensor(act)).compare(act @ Hh.m.tensor(idB), "|> associative"))
    rep.add((act @ Hh.eta.tensor(idB)).compare(idB, "|> unital"))
    rep.add((Bh.delta @ act).compare(act.tensor(act) @ dhb, "|> comultiplicative"))
    rep.add((Bh.eps @ act).compare(Hh.eps.tensor(Bh.eps), "|> counital"))
    # H is a right B-module coalgebra via <|
    rep.add((ract @ ract.tensor(idB)).compare(ract @ idH.tensor(Bh.m), "<| associative"))
    rep.add((ract @ idH.tensor(Bh.eta)).compare(idH, "<| unital"))
    rep.add((Hh.delta @ ract).compare(ract.tensor(ract) @ dhb, "<| comultiplicative"))
    rep.add((Hh.eps @ ract).compare(Hh.eps.tensor(Bh.eps), "<| counital"))
    # h |> 1 = eps(h) 1 and h |> (b b') = (h1 |> b1)((h2 <| b2) |> b')
    rep.add((act @ idH.tensor(Bh.eta)).compare(Bh.eta @ Hh.eps, "|> fixes the unit"))
    lhs = act @ idH.tensor(Bh.m)
    rhs = Bh.m @ idB.tensor(act) @ R.tensor(idB)
    rep.add(lhs.compare(rhs, "|> twisted multiplicative"))
    # 1 <| b = eps(b) 1 and (h h') <| b = (h <| (h'1 |> b1))(h'2 <| b2)
    rep.add((ract @ Hh.eta.tensor(idB)).compare(Hh.eta @ Bh.eps, "<| fixes the unit"))
    lhs = ract @ Hh.m.tensor(idB)
    rhs = Hh.m @ ract.tensor(idH) @ idH.tensor(R)
    rep.add(lhs.compare(rhs, "<| twisted multiplicative"))
    # h1 <| b1 (x) h2 |> b2 = h2 <| b2 (x) h1 |> b1
    lhs = ract.tensor(act) @ dhb
    rhs = flip([B], [H]) @ R
    rep.add(lhs.compare(rhs, "actions cocommute"))
    return rep


def check_inverse_antipode_identities(pair: MatchedPair) -> Report:
    """How the inverse antipodes pass through the actions, as matrix
    identities on H (x) B."""
    Bh, Hh = pair.B, pair.H
    B, H = Bh.alg, Hh.alg
    rep = Report(f"inverse antipode identities {pair.name}")
    SBi, SHi = Bh.S_inv, Hh.S_inv
    # S_B^-1(h |> b) = (h <| b2) |> S_B^-1(b1)
    lhs = SBi @ pair.act
    rhs = (Pipeline([H, B]).at(1, Bh.delta).perm([0, 2, 1])   # h b2 b1
           .at(0, pair.ract).at(1, SBi).at(0, pair.act).result())
    rep.add(lhs.compare(rhs, "S_B^-1 through |>"))
    # S_H^-1(h <| b) = S_H^-1(h2) <| (h1 |> b)
    lhs = SHi @ pair.ract
    rhs = (Pipeline([H, B]).at(0, Hh.delta).perm([1, 0, 2])   # h2 h1 b
           .at(1, pair.act).at(0, SHi).at(0, pair.ract).result())
    rep.add(lhs.compare(rhs, "S_H^-1 through <|"))
    return rep


@dataclass
class DoubleCrossproduct:
    source: MatchedPair
    hopf: HopfAlgebra
    r_map: object  # smash.RMap
    r_explicit: TensorMap
    report: Report


def build_double_crossproduct(pair: MatchedPair, name: str | None = None,
                              *, check: bool = True) -> DoubleCrossproduct:
    from .smash import RMap, build_smash, check_rmap
    rep = Report(f"double crossproduct {pair.name}")
    if check:
        mp = check_matched_pair(pair)
        if not mp.passed:
            c = mp.failures()[0]
            raise NotMatched(f"{c.identity} fails: {c.witness}")
        rep.extend(mp)
    Bh, Hh = pair.B, pair.H
    B, H = Bh.alg, Hh.alg
    R = pair.r_forward()
    r = pair.r_formula()
    rmap = RMap(B, H, R.matrix, name=f"R[{pair.name}]")
    rep.add((R @ r).compare(identity_map(TensorSpace([B, H])), "R r = id"))
    rep.add((r @ R).compare(identity_map(TensorSpace([H, B])), "r R = id"))
    try:
        inv = rmap.inverse
        rep.add(compare(r.matrix, inv, "r equals matrix inverse of R"))
    except NotInvertible:
        rep.add(Check("r equals matrix inverse of R", False, {}, {"error": "R singular"}))
    rep.extend(check_rmap(rmap))
    smash = build_smash(rmap, name=name or f"{B.name}⋈{H.name}", check=False)
    alg = smash.algebra
    # coproduct b1 h1 b2 h2, counit eps eps, S = R o flip o (S_B (x) S_H)
    cop = (Pipeline([B, H]).at(0, Bh.delta).at(2, Hh.delta).perm([0, 2, 1, 3]).result())
    counit = Bh.eps.tensor(Hh.eps)
    anti = R @ flip([B], [H]) @ Bh.S.tensor(Hh.S)
    hopf = HopfAlgebra(alg, cop.matrix, counit.matrix, anti.matrix, validate=False)
    hrep = check_hopf(hopf)
    rep.extend(hrep)
    return DoubleCrossproduct(pair, hopf, rmap, r, rep)


def trivial_matched_pair(B: HopfAlgebra, H: HopfAlgebra) -> MatchedPair:
    """|> = eps_H (x) id_B and <| = id_H (x) eps_B."""
    left = H.eps.tensor(identity_map(TensorSpace([B.alg]))).matrix
    right = identity_map(TensorSpace([H.alg])).tensor(B.eps).matrix
    return MatchedPair(B, H, left, right, name=f"trivial({B.name},{H.name})")


def drinfeld_matched_pair(H: HopfAlgebra, Hdual: HopfAlgebra | None = None) -> MatchedPair:
    """The matched pair (H^{*cop}, H) whose double crossproduct is D(H).

    The actions are read off the Drinfeld double product
    (1 x h)(f x 1) = (h1 -> f <- S^-1 h3) x h2 with (h -> f)(x) = f(xh) and
    (f <- h)(x) = f(hx): projecting with the counits gives
    h |> f = h1 -> f <- S^-1 h2 and h <| f = f(S^-1(h3) h1) h2.
    """
    Hs = Hdual or dual_cop(H)
    A = H.alg
    d = A.dim
    Si = H.S_inv.matrix
    eps = H.eps.matrix

    def coeff(vec_pairs, target):
        # coefficient of e_target in a product given as {k: c}
        return vec_pairs.get(target, 0)

    def triple(g, x, h):
        return A.mul_vec(A.product(g, x), {h: 1})

    D3 = H.delta_power(3).matrix
    left_cols, right_cols = [], []
    for hi in range(d):
        terms = []
        for idx, c in D3.cols[hi].items():
            h1, rest = divmod(idx, d * d)
            h2, h3 = divmod(rest, d)
            terms.append((h1, h2, h3, c))
        for fk in range(d):
            out_left: dict = {}
            out_right: dict = {}
            for h1, h2, h3, c in terms:
                for g, sc in Si.cols[h3].items():
                    # h <| f = f(S^-1(h3) h1) h2
                    v = coeff(A.product(g, h1), fk)
                    if v:
                        out_right[h2] = out_right.get(h2, 0) + c * sc * v
                    # h |> f = h1 -> f <- S^-1(h3) with eps(h2); on e_x: f(S^-1(h3) x h1)
                    e2 = eps.cols[h2].get(0, 0)
                    if e2:
                        for x in range(d):
                            v = coeff(triple(g, x, h1), fk)
                            if v:
                                out_left[x] = out_left.get(x, 0) + c * sc * e2 * v
            left_cols.append({k: v for k, v in out_left.items() if v != 0})
            right_cols.append({k: v for k, v in out_right.items() if v != 0})
    left = ExactMatrix(d, d * d, left_cols)
    right = ExactMatrix(d, d * d, right_cols)
    return MatchedPair(Hs, H, left, right, name=f"({Hs.name},{H.name})")


def group_matched_pair(G, Kg, left_action, right_action, name="bismash") -> MatchedPair:
    """Matched pair of groups, given as (elements, mul, inv, identity) tuples
    for G (acted on from the left) and K (acted on from the right).

    ``left_action(k, g)`` is k |> g in G and ``right_action(k, g)`` is
    k <| g in K.  The group-level compatibility conditions are checked on
    every element triple.
    """
    gel, gmul, ginv, ge = G
    kel, kmul, kinv, ke = Kg
    problems = []
    for k in kel:
        if left_action(k, ge) != ge:
            problems.append(("k|>e", k))
        for g, g2 in iproduct(gel, gel):
            if left_action(k, gmul(g, g2)) != gmul(left_action(k, g),
                                                  left_action(right_action(k, g), g2)):
                problems.append(("|> twisted multiplicative", k, g, g2))
    for g in gel:
        if right_action(ke, g) != ke:
            problems.append(("e<|g", g))
        for k, k2 in iproduct(kel, kel):
            if right_action(kmul(k, k2), g) != kmul(right_action(k, left_action(k2, g)),
                                                   right_action(k2, g)):
                problems.append(("<| twisted multiplicative", k, k2, g))
    for k in kel:
        if left_action(k, ge) != ge:
            problems.append(("unit", k))
    for g in gel:
        for k, k2 in iproduct(kel, kel):
            if left_action(kmul(k, k2), g) != left_action(k, left_action(k2, g)):
                problems.append(("left action", k, k2, g))
        for k in kel:
            for g2 in gel:
                if right_action(right_action(k, g), g2) != right_action(k, gmul(g, g2)):
                    problems.append(("right action", k, g, g2))
    if problems:
        raise NotMatched(f"group pair fails compatibility at {problems[0]}")
    Bh = group_algebra_hopf("k[G]", gel, gmul, ginv, ge)
    Hh = group_algebra_hopf("k[K]", kel, kmul, kinv, ke)
    gi = {g: i for i, g in enumerate(gel)}
    ki = {k: i for i, k in enumerate(kel)}
    nb = len(gel)
    left_cols, right_cols = [], []
    for k in kel:
        for g in gel:
            left_cols.append({gi[left_action(k, g)]: 1})
            right_cols.append({ki[right_action(k, g)]: 1})
    left = ExactMatrix(nb, len(kel) * nb, left_cols)
    right = ExactMatrix(len(kel), len(kel) * nb, right_cols)
    return MatchedPair(Bh, Hh, left, right, name=name)


def is_group_like_table(alg: FinDimAlgebra) -> bool:
    """All structure constants 0/1 and every product a single basis vector
    with each row of the table a permutation."""
    d = alg.dim
    for i in range(d):
        seen = set()
        for j in range(d):
            col = alg.product(i, j)
            if len(col) != 1:
                return False
            (k, c), = col.items()
            if c != 1 or k in seen:
                return False
            seen.add(k)
    return True
