"""Finite-dimensional algebras, tensor-power spaces and maps between them.

A tensor space is an ordered list of factors.  Flat indices are mixed-radix
with the leftmost factor most significant, so the basis vector
``e_{i_1} (x) ... (x) e_{i_k}`` has index ``((i_1 * d_2 + i_2) * d_3 + ...)``.
Every sign-sensitive operator relies on this convention.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product
import json

from .exactmath import ExactMatrix, DimensionMismatch, format_scalar, parse_scalar
from .report import Check, Report, compare


class FinDimAlgebra:
    """Unital associative algebra given by structure constants.

    ``mult`` is the matrix of m: A (x) A -> A (dim x dim^2), column
    ``i * dim + j`` holding e_i e_j.  The axioms are checked on creation
    unless ``validate=False``.
    """

    def __init__(self, name: str, basis, unit, mult: ExactMatrix, *, validate: bool = True):
        self.name = name
        self.basis = list(basis)
        self.dim = len(self.basis)
        unit = list(unit)
        if len(unit) != self.dim:
            raise DimensionMismatch(f"unit vector has length {len(unit)}, expected {self.dim}")
        self.unit = {i: u for i, u in enumerate(unit) if u != 0}
        if mult.shape != (self.dim, self.dim * self.dim):
            raise DimensionMismatch(f"multiplication matrix has shape {mult.shape}")
        self.mult = mult
        if validate:
            check_algebra(self).require()

    # small helpers -------------------------------------------------------
    def unit_vector(self) -> dict:
        return dict(self.unit)

    def unit_index(self):
        """Index of the unit if it is a basis vector, else None."""
        if len(self.unit) == 1:
            (i, c), = self.unit.items()
            if c == 1:
                return i
        return None

    def product(self, i: int, j: int) -> dict:
        return self.mult.cols[i * self.dim + j]

    def mul_vec(self, u: dict, v: dict) -> dict:
        acc: dict = {}
        for i, a in u.items():
            for j, b in v.items():
                ab = a * b
                for k, c in self.product(i, j).items():
                    acc[k] = acc.get(k, 0) + ab * c
        return {k: c for k, c in acc.items() if c != 0}

    def index(self, label: str) -> int:
        return self.basis.index(label)

    def mult_map(self) -> "TensorMap":
        return TensorMap(TensorSpace([self, self]), TensorSpace([self]), self.mult)

    def unit_map(self) -> "TensorMap":
        return TensorMap(TensorSpace([]), TensorSpace([self]),
                         ExactMatrix(self.dim, 1, [dict(self.unit)]))

    def opposite(self) -> "FinDimAlgebra":
        return FinDimAlgebra(self.name + "^op", self.basis,
                             [self.unit.get(i, 0) for i in range(self.dim)],
                             self.mult @ flip_matrix(self.dim, self.dim), validate=False)

    def is_commutative(self) -> bool:
        return self.mult == self.mult @ flip_matrix(self.dim, self.dim)

    def __repr__(self):
        return f"FinDimAlgebra({self.name!r}, dim={self.dim})"

    # serialization -------------------------------------------------------
    def to_json(self) -> dict:
        mult = []
        for i in range(self.dim):
            for j in range(self.dim):
                col = self.product(i, j)
                if col:
                    mult.append({"i": i, "j": j,
                                 "out": [{"k": k, "c": format_scalar(col[k])} for k in sorted(col)]})
        return {
            "name": self.name,
            "dim": self.dim,
            "basis": list(self.basis),
            "unit": [format_scalar(self.unit.get(i, 0)) for i in range(self.dim)],
            "mult": mult,
        }

    @classmethod
    def from_json(cls, data: dict, *, validate: bool = True) -> "FinDimAlgebra":
        for key in ("name", "dim", "basis", "unit", "mult"):
            if key not in data:
                raise ValueError(f"algebra descriptor is missing field '{key}'")
        dim = int(data["dim"])
        if len(data["basis"]) != dim:
            raise ValueError("algebra descriptor: 'basis' length differs from 'dim'")
        entries = []
        for item in data["mult"]:
            i, j = int(item["i"]), int(item["j"])
            for o in item["out"]:
                entries.append((int(o["k"]), i * dim + j, parse_scalar(o["c"])))
        mult = ExactMatrix.from_entries(dim, dim * dim, entries)
        unit = [parse_scalar(u) for u in data["unit"]]
        return cls(data["name"], data["basis"], unit, mult, validate=validate)


def algebra_from_table(name, basis, table, unit_label=None, *, validate=True) -> FinDimAlgebra:
    """Build an algebra from ``table[(i, j)] = {k: c}`` (missing pairs are 0)."""
    dim = len(basis)
    cols = [dict(table.get((i, j), {})) for i in range(dim) for j in range(dim)]
    mult = ExactMatrix.from_columns(dim, cols)
    unit = [0] * dim
    unit[basis.index(unit_label) if unit_label is not None else 0] = 1
    return FinDimAlgebra(name, basis, unit, mult, validate=validate)


def check_algebra(alg: FinDimAlgebra) -> Report:
    """Associativity and unitality as matrix identities on basis tensors."""
    d = alg.dim
    rep = Report(f"algebra {alg.name}")
    m = alg.mult
    # m(m (x) id) = m(id (x) m) on A (x) A (x) A
    lhs = m @ m.pad(1, d)
    rhs = m @ m.pad(d, 1)
    space3 = TensorSpace([alg] * 3)
    rep.add(compare(lhs, rhs, "associativity", source_label=space3.label,
                    target_label=lambda k: alg.basis[k]))
    u = ExactMatrix(d, 1, [dict(alg.unit)])
    ident = ExactMatrix.identity(d)
    rep.add(compare(m @ u.kron(ident), ident, "left unit",
                    source_label=lambda k: alg.basis[k], target_label=lambda k: alg.basis[k]))
    rep.add(compare(m @ ident.kron(u), ident, "right unit",
                    source_label=lambda k: alg.basis[k], target_label=lambda k: alg.basis[k]))
    return rep


def multiply(alg: FinDimAlgebra, u, v) -> list:
    """Product of two coefficient vectors of length ``alg.dim``."""
    if len(u) != alg.dim or len(v) != alg.dim:
        raise DimensionMismatch(f"vectors must have length {alg.dim}")
    w = alg.mul_vec({i: a for i, a in enumerate(u) if a != 0},
                    {j: b for j, b in enumerate(v) if b != 0})
    return [w.get(k, 0) for k in range(alg.dim)]


def tensor_algebra(a: FinDimAlgebra, b: FinDimAlgebra, name=None) -> FinDimAlgebra:
    """A (x) B with componentwise product."""
    # (a (x) b)(a' (x) b') = aa' (x) bb': reorder A B A B -> A A B B, then m (x) m
    perm = permutation_matrix([a.dim, b.dim, a.dim, b.dim], [0, 2, 1, 3])
    mult = a.mult.kron(b.mult) @ perm
    unit = {i * b.dim + j: x * y for i, x in a.unit.items() for j, y in b.unit.items()}
    return FinDimAlgebra(name or f"{a.name}⊗{b.name}",
                         [f"{x}⊗{y}" for x in a.basis for y in b.basis],
                         [unit.get(k, 0) for k in range(a.dim * b.dim)], mult)


# ---------------------------------------------------------------------------
# tensor spaces and maps


class TensorSpace:
    """An ordered tensor product of factors (anything with ``dim``/``basis``)."""

    __slots__ = ("factors", "dims", "dim", "strides")

    def __init__(self, factors):
        self.factors = tuple(factors)
        self.dims = tuple(f.dim for f in self.factors)
        self.strides = []
        s = 1
        for d in reversed(self.dims):
            self.strides.append(s)
            s *= d
        self.strides = tuple(reversed(self.strides))
        self.dim = s

    def flat(self, multi) -> int:
        if len(multi) != len(self.dims):
            raise DimensionMismatch("multi-index length")
        idx = 0
        for i, d in zip(multi, self.dims):
            if not 0 <= i < d:
                raise IndexError(f"index {i} out of range {d}")
            idx = idx * d + i
        return idx

    def multi(self, flat: int) -> tuple:
        out = []
        for d in reversed(self.dims):
            flat, r = divmod(flat, d)
            out.append(r)
        return tuple(reversed(out))

    def label(self, flat: int) -> str:
        if not self.factors:
            return "1"
        return "⊗".join(f.basis[i] for f, i in zip(self.factors, self.multi(flat)))

    def vector(self, *labels) -> int:
        """Flat index of the basis tensor named by factor labels."""
        return self.flat([f.basis.index(l) for f, l in zip(self.factors, labels)])

    def __add__(self, other: "TensorSpace") -> "TensorSpace":
        return TensorSpace(self.factors + other.factors)

    def __eq__(self, other):
        return isinstance(other, TensorSpace) and self.factors == other.factors

    def __hash__(self):
        return hash(self.factors)

    def __len__(self):
        return len(self.factors)

    def __repr__(self):
        return "TensorSpace(" + "⊗".join(getattr(f, "name", "?") for f in self.factors) + ")"


@dataclass(frozen=True)
class TensorMap:
    source: TensorSpace
    target: TensorSpace
    matrix: ExactMatrix

    def __post_init__(self):
        if self.matrix.shape != (self.target.dim, self.source.dim):
            raise DimensionMismatch(
                f"matrix {self.matrix.shape} does not fit {self.source} -> {self.target}")

    def __matmul__(self, other: "TensorMap") -> "TensorMap":
        if other.target.dims != self.source.dims:
            raise DimensionMismatch(f"cannot compose {self.source} after {other.target}")
        return TensorMap(other.source, self.target, self.matrix @ other.matrix)

    def tensor(self, other: "TensorMap") -> "TensorMap":
        return TensorMap(self.source + other.source, self.target + other.target,
                         self.matrix.kron(other.matrix))

    def __add__(self, other):
        return TensorMap(self.source, self.target, self.matrix + other.matrix)

    def __sub__(self, other):
        return TensorMap(self.source, self.target, self.matrix - other.matrix)

    def scale(self, c):
        return TensorMap(self.source, self.target, self.matrix.scale(c))

    def apply_label(self, *labels) -> dict:
        """Image of a basis tensor as ``{target label: coeff}``."""
        col = self.matrix.cols[self.source.vector(*labels)]
        return {self.target.label(k): v for k, v in sorted(col.items())}

    def compare(self, other: "TensorMap", identity: str, **context) -> Check:
        return compare(self.matrix, other.matrix, identity,
                       source_label=self.source.label, target_label=self.target.label, **context)


def identity_map(space: TensorSpace) -> TensorMap:
    return TensorMap(space, space, ExactMatrix.identity(space.dim))


def permutation_matrix(dims, perm) -> ExactMatrix:
    """Matrix sending e_{i_0} (x) ... to the tensor whose k-th factor is
    source factor ``perm[k]``."""
    n = len(dims)
    tdims = [dims[p] for p in perm]
    tstrides = [1] * n
    for k in range(n - 2, -1, -1):
        tstrides[k] = tstrides[k + 1] * tdims[k + 1]
    # position of source factor p in the target
    where = [0] * n
    for k, p in enumerate(perm):
        where[p] = k
    stride_of_source = [tstrides[where[p]] for p in range(n)]
    total = 1
    for d in dims:
        total *= d
    cols = []
    for multi in product(*[range(d) for d in dims]):
        cols.append({sum(i * s for i, s in zip(multi, stride_of_source)): 1})
    return ExactMatrix(total, total, cols)


def flip_matrix(m: int, n: int) -> ExactMatrix:
    """x (x) y -> y (x) x for dim x = m, dim y = n."""
    return ExactMatrix(m * n, m * n, [{j * m + i: 1} for i in range(m) for j in range(n)])


def flip(m_factors, n_factors) -> TensorMap:
    """f^{m,n}: (c_1..c_m, c'_1..c'_n) -> (c'_1..c'_n, c_1..c_m)."""
    m_factors, n_factors = list(m_factors), list(n_factors)
    src = TensorSpace(m_factors + n_factors)
    tgt = TensorSpace(n_factors + m_factors)
    dm = TensorSpace(m_factors).dim
    dn = TensorSpace(n_factors).dim
    return TensorMap(src, tgt, flip_matrix(dm, dn))


def permute(factors, perm) -> TensorMap:
    factors = list(factors)
    src = TensorSpace(factors)
    tgt = TensorSpace([factors[p] for p in perm])
    return TensorMap(src, tgt, permutation_matrix([f.dim for f in factors], perm))


def embed_operator(op: TensorMap, left_pad, right_pad) -> TensorMap:
    """id^{left} (x) op (x) id^{right}."""
    left = TensorSpace(left_pad)
    right = TensorSpace(right_pad)
    return TensorMap(left + op.source + right, left + op.target + right,
                     op.matrix.pad(left.dim, right.dim))


def local(op: TensorMap, space: TensorSpace, pos: int) -> TensorMap:
    """Apply ``op`` to the factors of ``space`` starting at ``pos``."""
    k = len(op.source)
    if space.dims[pos:pos + k] != op.source.dims:
        raise DimensionMismatch(f"operator {op.source} does not fit {space} at {pos}")
    return embed_operator(op, space.factors[:pos], space.factors[pos + k:])


def load_algebra_json(path) -> FinDimAlgebra:
    with open(path, encoding="utf-8") as fh:
        return FinDimAlgebra.from_json(json.load(fh))
