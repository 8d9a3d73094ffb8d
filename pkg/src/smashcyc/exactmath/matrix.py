"""Sparse exact matrices stored column-wise.

Every operator in the package (faces, cyclic operators, R-maps, ...) is an
:class:`ExactMatrix`.  A column is a dict ``{row: nonzero scalar}``; zeros
are never stored, so ``==`` is a literal comparison of the nonzero pattern
and values.
"""

from __future__ import annotations

from fractions import Fraction

from .scalars import Cyclotomic, _clean


class DimensionMismatch(ValueError):
    pass


def _norm(x):
    if type(x) is Fraction:
        return _clean(x)
    return x


class ExactMatrix:
    __slots__ = ("nrows", "ncols", "cols", "_hash")

    def __init__(self, nrows: int, ncols: int, cols=None):
        self.nrows = nrows
        self.ncols = ncols
        if cols is None:
            cols = [{} for _ in range(ncols)]
        elif len(cols) != ncols:
            raise DimensionMismatch(f"expected {ncols} columns, got {len(cols)}")
        self.cols = cols
        self._hash = None

    # constructors ---------------------------------------------------------
    @classmethod
    def zeros(cls, nrows: int, ncols: int) -> "ExactMatrix":
        return cls(nrows, ncols)

    @classmethod
    def identity(cls, n: int) -> "ExactMatrix":
        return cls(n, n, [{i: 1} for i in range(n)])

    @classmethod
    def from_entries(cls, nrows: int, ncols: int, entries) -> "ExactMatrix":
        """Build from ``(row, col, value)`` triples; duplicates are summed."""
        cols = [{} for _ in range(ncols)]
        for r, c, v in entries:
            if not (0 <= r < nrows and 0 <= c < ncols):
                raise IndexError(f"entry ({r}, {c}) outside {nrows}x{ncols}")
            col = cols[c]
            s = col.get(r, 0) + v
            if s == 0:
                col.pop(r, None)
            else:
                col[r] = _norm(s)
        return cls(nrows, ncols, cols)

    @classmethod
    def from_columns(cls, nrows: int, columns) -> "ExactMatrix":
        cols = []
        for col in columns:
            cols.append({r: _norm(v) for r, v in col.items() if v != 0})
        return cls(nrows, len(cols), cols)

    @classmethod
    def from_dense(cls, rows) -> "ExactMatrix":
        rows = [list(r) for r in rows]
        nrows = len(rows)
        ncols = len(rows[0]) if rows else 0
        cols = [{} for _ in range(ncols)]
        for i, row in enumerate(rows):
            if len(row) != ncols:
                raise DimensionMismatch("ragged dense matrix")
            for j, v in enumerate(row):
                if v != 0:
                    cols[j][i] = _norm(v)
        return cls(nrows, ncols, cols)

    @classmethod
    def from_function(cls, nrows: int, ncols: int, fn) -> "ExactMatrix":
        """``fn(j)`` returns the image of basis vector j as a dict or pair list."""
        cols = []
        for j in range(ncols):
            out = fn(j)
            items = out.items() if isinstance(out, dict) else out
            col = {}
            for r, v in items:
                s = col.get(r, 0) + v
                if s == 0:
                    col.pop(r, None)
                else:
                    col[r] = s
            cols.append({r: _norm(v) for r, v in col.items()})
        return cls(nrows, ncols, cols)

    # basic access ---------------------------------------------------------
    @property
    def shape(self):
        return (self.nrows, self.ncols)

    def __getitem__(self, key):
        r, c = key
        return self.cols[c].get(r, 0)

    def entries(self):
        """Canonical row-major list of nonzero ``(row, col, value)``."""
        out = [(r, c, v) for c, col in enumerate(self.cols) for r, v in col.items()]
        out.sort(key=lambda e: (e[0], e[1]))
        return out

    def nnz(self) -> int:
        return sum(len(c) for c in self.cols)

    def to_dense(self):
        rows = [[0] * self.ncols for _ in range(self.nrows)]
        for c, col in enumerate(self.cols):
            for r, v in col.items():
                rows[r][c] = v
        return rows

    def column(self, j: int) -> dict:
        return self.cols[j]

    def rows(self):
        """Row-wise dict representation ``[{col: val}]``."""
        out = [{} for _ in range(self.nrows)]
        for c, col in enumerate(self.cols):
            for r, v in col.items():
                out[r][c] = v
        return out

    def has_cyclotomic(self) -> bool:
        return any(isinstance(v, Cyclotomic) for col in self.cols for v in col.values())

    # algebra --------------------------------------------------------------
    def __matmul__(self, other: "ExactMatrix") -> "ExactMatrix":
        if self.ncols != other.nrows:
            raise DimensionMismatch(f"cannot multiply {self.shape} by {other.shape}")
        mine = self.cols
        out = []
        for col in other.cols:
            acc: dict = {}
            for k, bv in col.items():
                for r, av in mine[k].items():
                    acc[r] = acc.get(r, 0) + av * bv
            out.append({r: _norm(v) for r, v in acc.items() if v != 0})
        return ExactMatrix(self.nrows, other.ncols, out)

    def apply(self, vec: dict) -> dict:
        """Image of a sparse vector ``{index: coeff}``."""
        acc: dict = {}
        for k, bv in vec.items():
            for r, av in self.cols[k].items():
                acc[r] = acc.get(r, 0) + av * bv
        return {r: _norm(v) for r, v in acc.items() if v != 0}

    def _combine(self, other, sign):
        if self.shape != other.shape:
            raise DimensionMismatch(f"shape mismatch {self.shape} vs {other.shape}")
        out = []
        for a, b in zip(self.cols, other.cols):
            col = dict(a)
            for r, v in b.items():
                s = col.get(r, 0) + sign * v
                if s == 0:
                    col.pop(r, None)
                else:
                    col[r] = _norm(s)
            out.append(col)
        return ExactMatrix(self.nrows, self.ncols, out)

    def __add__(self, other):
        return self._combine(other, 1)

    def __sub__(self, other):
        return self._combine(other, -1)

    def __neg__(self):
        return ExactMatrix(self.nrows, self.ncols,
                           [{r: -v for r, v in col.items()} for col in self.cols])

    def scale(self, c) -> "ExactMatrix":
        if c == 0:
            return ExactMatrix.zeros(self.nrows, self.ncols)
        return ExactMatrix(self.nrows, self.ncols,
                           [{r: _norm(v * c) for r, v in col.items()} for col in self.cols])

    def __rmul__(self, c):
        return self.scale(c)

    def __pow__(self, k: int) -> "ExactMatrix":
        if self.nrows != self.ncols:
            raise DimensionMismatch("power of a non-square matrix")
        if k < 0:
            from .linalg import inverse
            return inverse(self) ** (-k)
        result = ExactMatrix.identity(self.nrows)
        base = self
        while k:
            if k & 1:
                result = base @ result
            k >>= 1
            if k:
                base = base @ base
        return result

    def transpose(self) -> "ExactMatrix":
        out = [{} for _ in range(self.nrows)]
        for c, col in enumerate(self.cols):
            for r, v in col.items():
                out[r][c] = v
        return ExactMatrix(self.ncols, self.nrows, out)

    @property
    def T(self):
        return self.transpose()

    def kron(self, other: "ExactMatrix") -> "ExactMatrix":
        """Kronecker product, leftmost factor most significant."""
        m, n = other.nrows, other.ncols
        out = []
        for acol in self.cols:
            for bcol in other.cols:
                col = {}
                for ra, va in acol.items():
                    base = ra * m
                    for rb, vb in bcol.items():
                        col[base + rb] = _norm(va * vb)
                out.append(col)
        return ExactMatrix(self.nrows * m, self.ncols * n, out)

    def pad(self, left: int, right: int) -> "ExactMatrix":
        """``I_left (x) self (x) I_right`` without materializing identities."""
        if left == 1 and right == 1:
            return self
        rows_in, cols_in = self.nrows, self.ncols
        out = []
        for li in range(left):
            for j in range(cols_in):
                col_j = self.cols[j]
                for ri in range(right):
                    out.append({(li * rows_in + r) * right + ri: v
                                for r, v in col_j.items()})
        return ExactMatrix(left * rows_in * right, left * cols_in * right, out)

    @staticmethod
    def hstack(mats, nrows: int | None = None) -> "ExactMatrix":
        mats = list(mats)
        if nrows is None:
            if not mats:
                raise DimensionMismatch("hstack of nothing needs nrows")
            nrows = mats[0].nrows
        cols = []
        for m in mats:
            if m.nrows != nrows:
                raise DimensionMismatch("hstack row mismatch")
            cols.extend(m.cols)
        return ExactMatrix(nrows, len(cols), cols)

    @staticmethod
    def vstack(mats, ncols: int | None = None) -> "ExactMatrix":
        mats = list(mats)
        if ncols is None:
            ncols = mats[0].ncols
        cols = [{} for _ in range(ncols)]
        offset = 0
        for m in mats:
            if m.ncols != ncols:
                raise DimensionMismatch("vstack column mismatch")
            for c, col in enumerate(m.cols):
                for r, v in col.items():
                    cols[c][offset + r] = v
            offset += m.nrows
        return ExactMatrix(offset, ncols, cols)

    @staticmethod
    def block(blocks, row_dims, col_dims) -> "ExactMatrix":
        """Assemble from ``{(i, j): matrix}`` with given block row/col sizes."""
        roff = [0]
        for d in row_dims:
            roff.append(roff[-1] + d)
        coff = [0]
        for d in col_dims:
            coff.append(coff[-1] + d)
        cols = [{} for _ in range(coff[-1])]
        for (i, j), m in blocks.items():
            if m.shape != (row_dims[i], col_dims[j]):
                raise DimensionMismatch(f"block ({i},{j}) has shape {m.shape}")
            for c, col in enumerate(m.cols):
                target = cols[coff[j] + c]
                for r, v in col.items():
                    rr = roff[i] + r
                    s = target.get(rr, 0) + v
                    if s == 0:
                        target.pop(rr, None)
                    else:
                        target[rr] = s
        return ExactMatrix(roff[-1], coff[-1], cols)

    def submatrix(self, rows=None, cols=None) -> "ExactMatrix":
        """Select rows/columns (lists of indices, in the given order)."""
        col_idx = range(self.ncols) if cols is None else cols
        if rows is None:
            return ExactMatrix(self.nrows, len(col_idx), [dict(self.cols[c]) for c in col_idx])
        pos = {r: i for i, r in enumerate(rows)}
        out = []
        for c in col_idx:
            out.append({pos[r]: v for r, v in self.cols[c].items() if r in pos})
        return ExactMatrix(len(rows), len(col_idx), out)

    # comparisons ----------------------------------------------------------
    def __eq__(self, other):
        if not isinstance(other, ExactMatrix):
            return NotImplemented
        return self.shape == other.shape and self.cols == other.cols

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.nrows, self.ncols, tuple(self.entries())))
        return self._hash

    def is_zero(self) -> bool:
        return all(not col for col in self.cols)

    def is_identity(self) -> bool:
        if self.nrows != self.ncols:
            return False
        return all(col == {i: 1} for i, col in enumerate(self.cols))

    def first_difference(self, other: "ExactMatrix"):
        """First column (basis index) where two same-shape matrices differ."""
        for j, (a, b) in enumerate(zip(self.cols, other.cols)):
            if a != b:
                return j
        return None

    def __repr__(self):
        return f"ExactMatrix({self.nrows}x{self.ncols}, nnz={self.nnz()})"
