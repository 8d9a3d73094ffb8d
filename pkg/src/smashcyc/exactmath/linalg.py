"""Exact Gaussian elimination and the derived subspace operations.

Elimination works on the rows of a matrix.  The nonzero pattern is first
split into connected blocks (rows and columns linked by a shared nonzero
entry), each block is reduced independently, and the reduced row echelon
form is assembled.  Because the RREF is unique, kernel and image bases do
not depend on the order in which rows are processed; the order only
affects speed.

Over Q, rows are kept as primitive integer vectors (content divided out
after every combination), which is a fraction-free scheme.  Rows with
cyclotomic entries are reduced over the field directly.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm

from .matrix import ExactMatrix, DimensionMismatch, _norm
from .scalars import Cyclotomic, div


class ContainmentViolation(ValueError):
    """A subspace that must lie inside another does not."""


class NotWellDefined(ValueError):
    """A map does not descend to the requested subquotients."""


class NotInvertible(ValueError):
    pass


# ---------------------------------------------------------------------------
# row kernels


def _primitive(row: dict) -> dict:
    """Scale a rational row to coprime integers with positive leading entry."""
    den, frac = 1, False
    for v in row.values():
        if type(v) is Fraction:
            den, frac = lcm(den, v.denominator), True
    if frac:
        row = {c: int(v * den) for c, v in row.items()}
    g = 0
    for v in row.values():
        g = gcd(g, v)
        if g == 1:
            break
    lead = row[min(row)]
    if lead < 0:
        g = -g
    if g != 1:
        row = {c: v // g for c, v in row.items()}
    return row


def _int_eliminate(row: dict, piv: dict, col: int) -> dict:
    """row <- p*row - r*piv so that column ``col`` vanishes; then primitive."""
    p = piv[col]
    r = row[col]
    g = gcd(p, r)
    p //= g
    r //= g
    out = {c: v * p for c, v in row.items()} if p != 1 else dict(row)
    for c, v in piv.items():
        s = out.get(c, 0) - r * v
        if s:
            out[c] = s
        else:
            out.pop(c, None)
    if not out:
        return out
    g = 0
    for v in out.values():
        g = gcd(g, v)
        if g == 1:
            break
    if g != 1:
        out = {c: v // g for c, v in out.items()}
    return out


def _field_eliminate(row: dict, piv: dict, col: int) -> dict:
    """row <- row - row[col]*piv (piv has leading coefficient 1)."""
    f = row[col]
    out = dict(row)
    for c, v in piv.items():
        s = out.get(c, 0) - f * v
        if s == 0:
            out.pop(c, None)
        else:
            out[c] = _norm(s)
    return out


def _field_monic(row: dict) -> dict:
    lead = row[min(row)]
    if lead == 1:
        return row
    inv = div(1, lead)
    return {c: _norm(v * inv) for c, v in row.items()}


def _echelon(rows, use_int: bool):
    """Insert rows (sparsest first) into an echelon keyed by leading column."""
    pivots: dict = {}
    elim = _int_eliminate if use_int else _field_eliminate
    for row in sorted(rows, key=len):
        if not row:
            continue
        row = _primitive(row) if use_int else _field_monic(row)
        while row:
            c = min(row)
            piv = pivots.get(c)
            if piv is None:
                if use_int:
                    if row[c] < 0:
                        row = {k: -v for k, v in row.items()}
                else:
                    row = _field_monic(row)
                pivots[c] = row
                break
            row = elim(row, piv, c)
    return pivots


def _field_rref(pivots: dict) -> dict:
    """Back-substitute an echelon with monic rows into RREF."""
    done: dict = {}
    for c in sorted(pivots, reverse=True):
        row = pivots[c]
        for k in sorted(k for k in row if k != c and k in done):
            if k in row:
                row = _field_eliminate(row, done[k], k)
        done[c] = row
    return done


def _rational_rref(pivots: dict) -> dict:
    order = sorted(pivots, reverse=True)
    done: dict = {}
    for c in order:
        row = pivots[c]
        lead = row[c]
        if lead != 1:
            row = {k: _norm(Fraction(v, lead)) for k, v in row.items()}
        for k in sorted(k for k in row if k != c and k in done):
            if k in row:
                row = _field_eliminate(row, done[k], k)
        done[c] = row
    return done


def _blocks(rows, ncols):
    """Connected components of the row/column incidence graph."""
    parent = list(range(ncols))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for row in rows:
        it = iter(row)
        first = next(it, None)
        if first is None:
            continue
        a = find(first)
        for c in it:
            b = find(c)
            if b != a:
                parent[b] = a
    groups: dict = {}
    for i, row in enumerate(rows):
        if row:
            groups.setdefault(find(next(iter(row))), []).append(row)
    return list(groups.values())


def _use_int(rows) -> bool:
    for row in rows:
        for v in row.values():
            if isinstance(v, Cyclotomic):
                return False
    return True


def echelon_pivots(m: ExactMatrix) -> dict:
    rows = m.rows()
    use_int = _use_int(rows)
    pivots: dict = {}
    for block in _blocks(rows, m.ncols):
        pivots.update(_echelon(block, use_int))
    return pivots


def rref(m: ExactMatrix) -> dict:
    """Reduced row echelon form as ``{pivot_col: row dict}`` (unit pivots)."""
    rows = m.rows()
    use_int = _use_int(rows)
    out: dict = {}
    for block in _blocks(rows, m.ncols):
        piv = _echelon(block, use_int)
        out.update(_rational_rref(piv) if use_int else _field_rref(piv))
    return out


# ---------------------------------------------------------------------------
# public operations


def rank(m: ExactMatrix) -> int:
    if m.nrows == 0 or m.ncols == 0:
        return 0
    # eliminate along the shorter side
    if m.ncols < m.nrows:
        m = m.transpose()
    return len(echelon_pivots(m))


def kernel_basis(m: ExactMatrix) -> ExactMatrix:
    """Columns spanning ker(m), one per free column in increasing order."""
    red = rref(m)
    pivot_cols = sorted(red)
    free = [c for c in range(m.ncols) if c not in red]
    # entries of free column f in pivot rows
    by_free: dict = {f: {} for f in free}
    for p in pivot_cols:
        for c, v in red[p].items():
            if c != p:
                by_free[c][p] = -v
    cols = []
    for f in free:
        col = by_free[f]
        col[f] = 1
        cols.append(col)
    return ExactMatrix(m.ncols, len(cols), cols)


def pivot_columns(m: ExactMatrix) -> list:
    return sorted(echelon_pivots(m))


def image_basis(m: ExactMatrix) -> ExactMatrix:
    """The columns of m at pivot positions (a basis of the column space)."""
    return m.submatrix(cols=pivot_columns(m))


def nullity(m: ExactMatrix) -> int:
    return m.ncols - rank(m)


def inverse(m: ExactMatrix) -> ExactMatrix:
    if m.nrows != m.ncols:
        raise NotInvertible(f"non-square matrix {m.shape}")
    n = m.ncols
    aug = ExactMatrix.hstack([m, ExactMatrix.identity(n)])
    red = rref(aug)
    if any(c >= n for c in red) or len(red) != n:
        raise NotInvertible(f"matrix of shape {m.shape} is singular")
    cols = [{} for _ in range(n)]
    for p, row in red.items():
        for c, v in row.items():
            if c >= n:
                cols[c - n][p] = v
    return ExactMatrix(n, n, cols)


def solve(k: ExactMatrix, w: ExactMatrix, *, strict: bool = True):
    """Return X with k @ X == w, assuming the columns of k are independent.

    If some column of w is outside the column span of k, raise
    :class:`ContainmentViolation` (``strict``) or return ``None``.
    """
    if k.nrows != w.nrows:
        raise DimensionMismatch("solve: row mismatch")
    n = k.ncols
    red = rref(ExactMatrix.hstack([k, w], nrows=k.nrows))
    bad = [c for c in red if c >= n]
    if bad:
        if strict:
            raise ContainmentViolation(
                f"column {min(bad) - n} of the right-hand side is not in the span")
        return None
    if len(red) != n:
        raise ValueError("solve: basis columns are linearly dependent")
    cols = [{} for _ in range(w.ncols)]
    for p, row in red.items():
        for c, v in row.items():
            if c >= n:
                cols[c - n][p] = v
    return ExactMatrix(n, w.ncols, cols)


def in_span(k: ExactMatrix, w: ExactMatrix) -> bool:
    """Whether every column of w lies in the column span of k."""
    if w.ncols == 0:
        return True
    return rank(ExactMatrix.hstack([k, w], nrows=k.nrows)) == rank(k)


def first_outside(k: ExactMatrix, w: ExactMatrix):
    """Index of the first column of w outside span(k), or None."""
    base = rank(k)
    for j in range(w.ncols):
        if rank(ExactMatrix.hstack([k, w.submatrix(cols=[j])], nrows=k.nrows)) > base:
            return j
    return None


def intersect_coordinate(span: ExactMatrix, keep_rows) -> ExactMatrix:
    """Basis of span(columns) intersected with the coordinate subspace on
    ``keep_rows`` (all other coordinates zero)."""
    keep = set(keep_rows)
    other = [r for r in range(span.nrows) if r not in keep]
    if not other:
        return image_basis(span)
    comb = kernel_basis(span.submatrix(rows=other))
    return image_basis(span @ comb)


# ---------------------------------------------------------------------------
# subquotients


@dataclass(frozen=True)
class Subquotient:
    """The space Z/B for subspaces B <= Z of k^ambient.

    ``section`` holds representatives of a basis of Z/B: the columns of Z
    that become pivots after the columns of B, so [B | section] is a basis
    of Z.
    """

    ambient: int
    z: ExactMatrix
    b: ExactMatrix
    section: ExactMatrix
    _frame: ExactMatrix

    @property
    def dim(self) -> int:
        return self.section.ncols

    def coords(self, vectors: ExactMatrix) -> ExactMatrix:
        """Coordinates in the section basis of vectors lying in Z."""
        x = solve(self._frame, vectors)
        nb = self._frame.ncols - self.section.ncols
        return x.submatrix(rows=list(range(nb, self._frame.ncols)))


def make_subquotient(z: ExactMatrix, b: ExactMatrix | None = None) -> Subquotient:
    """Build Z/B; B must lie in span(Z) (ContainmentViolation otherwise)."""
    n = z.nrows
    if b is None:
        b = ExactMatrix.zeros(n, 0)
    if b.nrows != n:
        raise DimensionMismatch("subquotient ambient mismatch")
    bb = image_basis(b)
    zb = image_basis(z)
    if bb.ncols and not in_span(zb, bb):
        raise ContainmentViolation("B is not contained in Z")
    piv = pivot_columns(ExactMatrix.hstack([bb, zb], nrows=n))
    sec_idx = [c - bb.ncols for c in piv if c >= bb.ncols]
    section = zb.submatrix(cols=sec_idx)
    frame = ExactMatrix.hstack([bb, section], nrows=n)
    return Subquotient(n, zb, bb, section, frame)


def subquotient_dim(z: ExactMatrix, b: ExactMatrix) -> int:
    rz = rank(z)
    if b.ncols == 0:
        return rz
    if rank(ExactMatrix.hstack([z, b], nrows=z.nrows)) != rz:
        raise ContainmentViolation("col-span(B) is not contained in col-span(Z)")
    return rz - rank(b)


def induced_map(m: ExactMatrix, source: Subquotient, target: Subquotient) -> ExactMatrix:
    """Matrix of the map Z_s/B_s -> Z_t/B_t induced by m."""
    if m.ncols != source.ambient or m.nrows != target.ambient:
        raise DimensionMismatch("induced_map: ambient dimensions")
    img_z = m @ source.z
    if not in_span(target._frame, img_z):
        raise NotWellDefined("the map does not send Z into the target Z")
    img_b = m @ source.b
    if img_b.ncols and not in_span(target.b, img_b):
        raise NotWellDefined("the map does not send B into the target B")
    return target.coords(m @ source.section)


def quotient(ambient: int, sub: ExactMatrix) -> Subquotient:
    """k^ambient / span(sub)."""
    return make_subquotient(ExactMatrix.identity(ambient), sub)
