"""Homology of chain complexes and of mixed complexes with coefficients.

For a mixed complex (M, b, B) and a graded k[u]-module W, M ⊠ W carries the
differential b + uB.  Two coefficient modules have finite-dimensional
degrees and are supported:

    hochschild   W = k[u]/uk[u]          (M ⊠ W)_n = M_n,           d = b
    cyclic       W = k[u,u^-1]/uk[u]     (M ⊠ W)_n = ⊕_j M_{n-2j} u^-j

On the cyclic complex, b + uB sends m u^-j to (bm) u^-j + (Bm) u^{-j+1},
the second term vanishing when j = 0.

Truncation: a mixed complex built on levels 0..top determines degrees
0..top-1 exactly; degree ``top`` still lacks the boundaries coming from
top+1 and is flagged.
"""

from __future__ import annotations

import csv
import io
import json
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

from .cyclic import ParacyclicModule, MixedComplex, check_axioms, mixed_complex_of
from .exactmath import ExactMatrix, rank, induced_map, quotient
from .report import SCHEMA_VERSION, Report, Check


class NotAComplex(ValueError):
    pass


class NotMixed(ValueError):
    pass


class NotCyclic(ValueError):
    pass


class Unsupported(ValueError):
    pass


# ---------------------------------------------------------------------------
# tables


@dataclass
class HomologyTable:
    title: str
    dims: list
    flagged: list = field(default_factory=list)

    @property
    def top(self) -> int:
        return len(self.dims) - 1

    def unflagged(self) -> dict:
        return {n: d for n, d in enumerate(self.dims) if n not in self.flagged}

    def truncate(self, n_max: int) -> "HomologyTable":
        return HomologyTable(self.title, self.dims[:n_max + 1],
                             [n for n in self.flagged if n <= n_max])

    def rows(self):
        return [{"n": n, "dim": d, "flagged": n in self.flagged} for n, d in enumerate(self.dims)]

    def to_dict(self) -> dict:
        return {"schema_version": SCHEMA_VERSION, "title": self.title, "rows": self.rows()}

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, ensure_ascii=False)

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["n", "dim", "flagged"])
        for r in self.rows():
            w.writerow([r["n"], r["dim"], str(r["flagged"]).lower()])
        return buf.getvalue()

    def to_text(self) -> str:
        lines = [self.title]
        for r in self.rows():
            lines.append(f"  n={r['n']}: {r['dim']}" + ("  (truncated)" if r["flagged"] else ""))
        return "\n".join(lines)


def agree(tables, upto: int | None = None) -> bool:
    """True when all tables agree on every degree unflagged in all of them."""
    common = None
    for t in tables:
        u = t.unflagged()
        if upto is not None:
            u = {n: d for n, d in u.items() if n <= upto}
        keys = set(u)
        common = keys if common is None else common & keys
    ref = tables[0].unflagged()
    return all(t.unflagged()[n] == ref[n] for t in tables for n in common)


# ---------------------------------------------------------------------------
# chain complexes


@dataclass
class ChainComplex:
    """Spaces of dimension ``dims[n]`` and differentials ``d[n]``: degree n -> n-1."""

    dims: list
    d: list
    name: str = "C"

    @property
    def top(self) -> int:
        return len(self.dims) - 1

    def check(self) -> Report:
        rep = Report(f"d^2 = 0 on {self.name}")
        for n in range(2, self.top + 1):
            prod = self.d[n - 1] @ self.d[n]
            rep.add(Check("d^2 = 0", prod.is_zero(), {"degree": n}))
        return rep


def _ranks(mats, workers: int = 1) -> list:
    if workers > 1 and len(mats) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            return list(pool.map(rank, mats))
    return [rank(m) for m in mats]


def homology_dims(cc: ChainComplex, *, title: str | None = None, check: bool = True,
                  workers: int = 1) -> HomologyTable:
    """dim H_n = dim ker d_n - rank d_{n+1}; the top degree is flagged."""
    if check:
        rep = cc.check()
        if not rep.passed:
            raise NotAComplex(f"{cc.name}: d^2 != 0 at {rep.failures()[0].context}")
    ranks = _ranks(cc.d, workers)
    dims = []
    for n in range(cc.top + 1):
        ker = cc.dims[n] - ranks[n]
        im = ranks[n + 1] if n + 1 <= cc.top else 0
        dims.append(ker - im)
    return HomologyTable(title or f"H({cc.name})", dims, [cc.top])


# ---------------------------------------------------------------------------
# coefficients


COEFFICIENTS = ("hochschild", "cyclic")
_REJECTED = {
    "negative": "W = k[u] (negative cyclic homology)",
    "periodic": "W = k[u,u^-1] (periodic cyclic homology)",
}


def coefficient(w: str) -> str:
    if w in COEFFICIENTS:
        return w
    if w in _REJECTED:
        raise Unsupported(f"{_REJECTED[w]}: every degree of M ⊠ W is infinite-dimensional")
    raise Unsupported(f"unknown coefficient module {w!r}")


def boxtimes_complex(mc: MixedComplex, w: str) -> ChainComplex:
    """The chain complex M ⊠ W for levels 0..mc.top."""
    w = coefficient(w)
    if w == "hochschild":
        return ChainComplex(list(mc.dims), list(mc.b), name=f"{mc.name} ⊠ hochschild")
    # degree n = ⊕_{j=0}^{n//2} M_{n-2j}, ordered by j
    comp = [[mc.dims[n - 2 * j] for j in range(n // 2 + 1)] for n in range(mc.top + 1)]
    ds = [ExactMatrix.zeros(0, sum(comp[0]))]
    for n in range(1, mc.top + 1):
        blocks = {}
        for j in range(n // 2 + 1):
            m = n - 2 * j
            if j <= (n - 1) // 2:
                blocks[(j, j)] = mc.b[m]
            if j >= 1:
                blocks[(j - 1, j)] = mc.B[m]
        ds.append(ExactMatrix.block(blocks, comp[n - 1], comp[n]))
    return ChainComplex([sum(c) for c in comp], ds, name=f"{mc.name} ⊠ cyclic")


def cyclic_homology(mc: MixedComplex, w: str = "cyclic", *, check: bool = True,
                    workers: int = 1) -> HomologyTable:
    """HC_*(M; W) on degrees 0..mc.top (top flagged)."""
    w = coefficient(w)
    if check:
        rep = mc.check()
        if not rep.passed:
            raise NotMixed(f"{mc.name}: {rep.failures()[0].identity} at {rep.failures()[0].context}")
    cc = boxtimes_complex(mc, w)
    label = "HH" if w == "hochschild" else "HC"
    return homology_dims(cc, title=f"{label}({mc.name})", check=check, workers=workers)


def hochschild_dims(cm: ParacyclicModule, n_max: int, **kw) -> HomologyTable:
    """HH_n of a (para)cyclic module from the b-complex, degrees 0..n_max exact."""
    top = n_max + 1
    cc = ChainComplex([cm.dim(n) for n in range(top + 1)], [cm.b(n) for n in range(top + 1)],
                      name=cm.name)
    return homology_dims(cc, title=f"HH({cm.name})", **kw).truncate(n_max)


def module_homology(cm: ParacyclicModule, n_max: int, w: str = "cyclic", **kw) -> HomologyTable:
    """HC_n(cm; W) for n <= n_max, building levels up to n_max + 1."""
    mc = mixed_complex_of(cm, n_max + 1, check=kw.pop("check", True))
    return cyclic_homology(mc, w, **kw).truncate(n_max)


# ---------------------------------------------------------------------------
# Connes' λ-complex


def connes_lambda_dims(cm: ParacyclicModule, top: int, *, check: bool = True) -> HomologyTable:
    """Homology of C_n / im(1 - (-1)^n t) with the induced b, degrees 0..top.

    Needs a genuine cyclic module (characteristic zero makes this quotient
    compute cyclic homology); the top degree is flagged.
    """
    if check:
        rep = check_axioms(cm, top, "cyclic")
        if not rep.passed:
            c = rep.failures()[0]
            raise NotCyclic(f"{cm.name}: {c.identity} fails at {c.context}")
    sqs = []
    for n in range(top + 2):
        one = ExactMatrix.identity(cm.dim(n))
        t = cm.t(n)
        rel = one - t if n % 2 == 0 else one + t
        sqs.append(quotient(cm.dim(n), rel))
    ds = [ExactMatrix.zeros(0, sqs[0].dim)]
    for n in range(1, top + 2):
        ds.append(induced_map(cm.b(n), sqs[n], sqs[n - 1]))
    cc = ChainComplex([s.dim for s in sqs], ds, name=f"{cm.name} λ")
    return homology_dims(cc, title=f"HC^λ({cm.name})", check=check).truncate(top)


# ---------------------------------------------------------------------------
# SBI consistency


def sbi_consistency(hh: HomologyTable, hc: HomologyTable) -> Report:
    """Check that dimensions fit an exact sequence

        ... -> HH_n -I-> HC_n -S-> HC_{n-2} -B-> HH_{n-1} -> ... -> HH_0 -> HC_0 -> 0.

    Reading the sequence from the right end, each map's rank is forced by
    exactness; every forced rank must be at least 0 and at most the
    dimensions it connects.  Only degrees unflagged in both tables are used.
    """
    rep = Report(f"SBI consistency of {hh.title} / {hc.title}")
    uh, uc = hh.unflagged(), hc.unflagged()
    n = 0
    while n in uh and n in uc:
        n += 1
    last = n - 1
    if last < 0:
        return rep

    def HC(k):
        return uc[k] if k >= 0 else 0

    # right-to-left: HC_0, HH_0, then for k >= 1: HC_{k-2}, HC_k, HH_k
    seq = [("HC", 0, HC(0)), ("HH", 0, uh[0])]
    for k in range(1, last + 1):
        seq += [("HC", k - 2, HC(k - 2)), ("HC", k, HC(k)), ("HH", k, uh[k])]
    out_rank = 0
    for pos, (kind, k, dim) in enumerate(seq):
        in_rank = dim - out_rank
        nxt = seq[pos + 1][2] if pos + 1 < len(seq) else HC(last - 1)
        ok = 0 <= in_rank <= nxt
        rep.add(Check("forced rank within bounds", ok,
                      {"space": f"{kind}_{k}", "dim": dim, "incoming_rank": in_rank}))
        out_rank = in_rank
    return rep
