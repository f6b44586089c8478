"""Dense exact matrices over Scalar or NCPoly.

Composite indices of a d-fold tensor square are row-major lexicographic:
(i, j) -> d*(i-1) + j.  Other labelings are expressed as an IndexOrder and
applied with :func:`reorder`.
"""

from __future__ import annotations

import json
from fractions import Fraction
from itertools import product
from pathlib import Path

from .errors import DimensionMismatch, IndexOutOfRange
from .scalar import MPoly, ONE, ZERO, Scalar, as_scalar


def _zero(x) -> bool:
    return x is None or x.is_zero()


class Matrix:
    """Rectangular matrix; entries are Scalars (ParamMatrix) or NCPolys (OpMatrix)."""

    __slots__ = ("rows", "cols", "entries")

    def __init__(self, entries):
        entries = [list(row) for row in entries]
        self.rows = len(entries)
        self.cols = len(entries[0]) if entries else 0
        if any(len(row) != self.cols for row in entries):
            raise DimensionMismatch("ragged matrix")
        self.entries = [[as_scalar(e) if isinstance(e, (int, str, Fraction)) else e for e in row]
                        for row in entries]

    @classmethod
    def zeros(cls, rows: int, cols: int | None = None) -> "Matrix":
        cols = rows if cols is None else cols
        return cls([[ZERO] * cols for _ in range(rows)])

    @classmethod
    def identity(cls, n: int) -> "Matrix":
        m = cls.zeros(n)
        for i in range(n):
            m.entries[i][i] = ONE
        return m

    @classmethod
    def diag(cls, values) -> "Matrix":
        values = [as_scalar(v) for v in values]
        m = cls.zeros(len(values))
        for i, v in enumerate(values):
            m.entries[i][i] = v
        return m

    @property
    def shape(self) -> tuple[int, int]:
        return self.rows, self.cols

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]

    def copy(self) -> "Matrix":
        return Matrix([list(row) for row in self.entries])

    def with_entry(self, i: int, j: int, value) -> "Matrix":
        out = self.copy()
        out.entries[i][j] = as_scalar(value) if isinstance(value, (int, str, Fraction)) else value
        return out

    def map(self, fn) -> "Matrix":
        return Matrix([[fn(e) for e in row] for row in self.entries])

    def substitute(self, bindings) -> "Matrix":
        return self.map(lambda e: e.substitute(bindings))

    def transpose(self) -> "Matrix":
        return Matrix([list(col) for col in zip(*self.entries)])

    def trace(self):
        if self.rows != self.cols:
            raise DimensionMismatch("trace of a non-square matrix")
        total = ZERO
        for i in range(self.rows):
            total = total + self.entries[i][i]
        return total

    def nonzero(self):
        return [(i, j) for i in range(self.rows) for j in range(self.cols) if not _zero(self.entries[i][j])]

    def submatrix(self, rows, cols=None) -> "Matrix":
        cols = rows if cols is None else cols
        for idx, bound in ((rows, self.rows), (cols, self.cols)):
            for i in idx:
                if not 0 <= i < bound:
                    raise IndexOutOfRange(f"index {i} outside 0..{bound - 1}")
        return Matrix([[self.entries[i][j] for j in cols] for i in rows])

    # arithmetic -----------------------------------------------------------

    def __add__(self, other: "Matrix") -> "Matrix":
        if self.shape != other.shape:
            raise DimensionMismatch(f"cannot add {self.shape} and {other.shape}")
        return Matrix([[a + b for a, b in zip(r1, r2)] for r1, r2 in zip(self.entries, other.entries)])

    def __neg__(self) -> "Matrix":
        return self.map(lambda e: -e)

    def __sub__(self, other: "Matrix") -> "Matrix":
        return self + (-other)

    def scale(self, c) -> "Matrix":
        return self.map(lambda e: e * c)

    def __matmul__(self, other: "Matrix") -> "Matrix":
        if self.cols != other.rows:
            raise DimensionMismatch(f"cannot multiply {self.shape} by {other.shape}")
        right = [[(j, e) for j, e in enumerate(row) if not _zero(e)] for row in other.entries]
        out = []
        for row in self.entries:
            acc: dict = {}
            for k, a in enumerate(row):
                if _zero(a):
                    continue
                for j, b in right[k]:
                    term = a * b
                    acc[j] = term if j not in acc else acc[j] + term
            zero = ZERO
            out.append([acc.get(j, zero) for j in range(other.cols)])
        result = Matrix.__new__(Matrix)
        result.rows, result.cols, result.entries = self.rows, other.cols, out
        return result

    __mul__ = __matmul__

    def __pow__(self, n: int) -> "Matrix":
        result = Matrix.identity(self.rows)
        for _ in range(n):
            result = result @ self
        return result

    def __eq__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        return self.first_difference(other) is None

    __hash__ = None

    def first_difference(self, other: "Matrix"):
        """(i, j, self[i,j] - other[i,j]) for the first unequal entry, row-major."""
        if self.shape != other.shape:
            raise DimensionMismatch(f"shapes {self.shape} and {other.shape} differ")
        for i in range(self.rows):
            for j in range(self.cols):
                diff = self.entries[i][j] - other.entries[i][j]
                if not diff.is_zero():
                    return i, j, diff
        return None

    def is_zero(self) -> bool:
        return all(_zero(e) for row in self.entries for e in row)

    def to_strings(self) -> list:
        return [[str(e) for e in row] for row in self.entries]

    def __str__(self):
        cells = self.to_strings()
        width = max((len(c) for row in cells for c in row), default=1)
        return "\n".join("[ " + "  ".join(c.rjust(width) for c in row) + " ]" for row in cells)

    def __repr__(self):
        return f"Matrix({self.rows}x{self.cols})"


ParamMatrix = Matrix
OpMatrix = Matrix


# index conventions ----------------------------------------------------------


class IndexOrder:
    """Permutation of the composite indices of a d x d tensor square.

    ``perm[p]`` is the new position of lexicographic position ``p``.
    """

    def __init__(self, perm, d: int, name: str = ""):
        perm = tuple(perm)
        if sorted(perm) != list(range(d * d)):
            raise ValueError("IndexOrder must be a bijection on the d^2 composite indices")
        self.perm = perm
        self.d = d
        self.name = name

    @classmethod
    def identity(cls, d: int) -> "IndexOrder":
        return cls(range(d * d), d, "lex")

    @classmethod
    def from_labels(cls, labels, d: int, name: str = "") -> "IndexOrder":
        """``labels`` lists 1-based pairs (i, j) in their new order."""
        labels = [tuple(l) for l in labels]
        lex = [(i, j) for i in range(1, d + 1) for j in range(1, d + 1)]
        return cls([labels.index(ij) for ij in lex], d, name)

    def labels(self) -> list:
        lex = [(i, j) for i in range(1, self.d + 1) for j in range(1, self.d + 1)]
        out = [None] * len(lex)
        for p, q in enumerate(self.perm):
            out[q] = lex[p]
        return out

    def inverse(self) -> "IndexOrder":
        inv = [0] * len(self.perm)
        for p, q in enumerate(self.perm):
            inv[q] = p
        return IndexOrder(inv, self.d, f"{self.name}^-1" if self.name else "")

    def __eq__(self, other):
        return isinstance(other, IndexOrder) and self.perm == other.perm

    def __hash__(self):
        return hash(self.perm)

    def __repr__(self):
        return f"IndexOrder({self.name or list(self.perm)})"


# the block ordering (11),(12),(21),(22),(13),(23),(31),(32),(33)
BLOCK9 = IndexOrder.from_labels([(1, 1), (1, 2), (2, 1), (2, 2), (1, 3), (2, 3), (3, 1), (3, 2), (3, 3)], 3, "block9")
ORDERS = {"lex": None, "block9": BLOCK9}


def reorder(x: Matrix, order: IndexOrder) -> Matrix:
    n = order.d * order.d
    if x.shape != (n, n):
        raise DimensionMismatch(f"reorder by a {order.d}^2 order needs a {n}x{n} matrix, got {x.shape}")
    out = [[None] * n for _ in range(n)]
    for p in range(n):
        for q in range(n):
            out[order.perm[p]][order.perm[q]] = x.entries[p][q]
    return Matrix(out)


def to_lex(x: Matrix, order_name: str) -> Matrix:
    order = ORDERS[order_name]
    return x if order is None else reorder(x, order.inverse())


def from_lex(x: Matrix, order_name: str) -> Matrix:
    order = ORDERS[order_name]
    return x if order is None else reorder(x, order)


# tensor constructions --------------------------------------------------------


def kron(x: Matrix, y: Matrix) -> Matrix:
    out = Matrix.zeros(x.rows * y.rows, x.cols * y.cols)
    ynz = y.nonzero()
    for i, j in x.nonzero():
        a = x.entries[i][j]
        for k, l in ynz:
            out.entries[i * y.rows + k][j * y.cols + l] = a * y.entries[k][l]
    return out


def flip(d: int) -> Matrix:
    """Tensor flip P on C^d (x) C^d: P(e_i (x) e_j) = e_j (x) e_i."""
    out = Matrix.zeros(d * d)
    for i in range(d):
        for j in range(d):
            out.entries[i * d + j][j * d + i] = ONE
    return out


def leg_embed(x: Matrix, legs, d: int) -> Matrix:
    """Act with the d^2 x d^2 matrix ``x`` on tensor legs ``legs`` of a triple product."""
    legs = tuple(int(c) for c in str(legs)) if not isinstance(legs, tuple) else legs
    if x.shape != (d * d, d * d):
        raise DimensionMismatch(f"leg embedding needs a {d * d}x{d * d} matrix, got {x.shape}")
    if sorted(legs) not in ([1, 2], [1, 3], [2, 3]) or legs[0] > legs[1]:
        raise ValueError(f"legs must be one of 12, 13, 23, got {legs}")
    a, b = legs[0] - 1, legs[1] - 1
    c = 3 - a - b
    out = Matrix.zeros(d**3)
    for p, q in x.nonzero():
        val = x.entries[p][q]
        ia, ib = divmod(p, d)
        ja, jb = divmod(q, d)
        for k in range(d):
            row = [0, 0, 0]
            col = [0, 0, 0]
            row[a], row[b], row[c] = ia, ib, k
            col[a], col[b], col[c] = ja, jb, k
            out.entries[(row[0] * d + row[1]) * d + row[2]][(col[0] * d + col[1]) * d + col[2]] = val
    return out


# elimination ------------------------------------------------------------------


def _row_to_polys(row) -> list:
    denom = MPoly.const(1)
    for e in row:
        if e.is_zero() or e.den.is_const():
            continue
        _, rem = denom.divmod(e.den)
        if rem.is_zero():
            continue
        denom = denom * e.den
    return [e.num * denom.exact_div(e.den) if not e.is_zero() else MPoly() for e in row]


def rank(x: Matrix) -> int:
    """Rank over Q(params) by fraction-free (Bareiss) elimination."""
    a = [_row_to_polys(row) for row in x.entries]
    rows, cols = x.rows, x.cols
    prev = MPoly.const(1)
    r = 0
    for c in range(cols):
        if r == rows:
            break
        pivot = next((i for i in range(r, rows) if not a[i][c].is_zero()), None)
        if pivot is None:
            continue
        a[r], a[pivot] = a[pivot], a[r]
        p = a[r][c]
        for i in range(r + 1, rows):
            f = a[i][c]
            for j in range(c + 1, cols):
                val = p * a[i][j] - f * a[r][j]
                a[i][j] = val.exact_div(prev) if not val.is_zero() else val
            a[i][c] = MPoly()
        prev = p
        r += 1
    return r


def rref(x: Matrix) -> tuple[Matrix, list]:
    """Reduced row echelon form over Q(params) and the pivot columns."""
    a = [list(row) for row in x.entries]
    rows, cols = x.rows, x.cols
    pivots = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        pivot = next((i for i in range(r, rows) if not a[i][c].is_zero()), None)
        if pivot is None:
            continue
        a[r], a[pivot] = a[pivot], a[r]
        inv = a[r][c].inverse()
        a[r] = [e * inv for e in a[r]]
        for i in range(rows):
            if i != r and not a[i][c].is_zero():
                f = a[i][c]
                a[i] = [e - f * g for e, g in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
    return Matrix(a), pivots


def nullspace(x: Matrix) -> list:
    """Basis of the right nullspace, as lists of Scalars."""
    red, pivots = rref(x)
    free = [c for c in range(x.cols) if c not in pivots]
    basis = []
    for f in free:
        vec = [ZERO] * x.cols
        vec[f] = ONE
        for i, c in enumerate(pivots):
            vec[c] = -red.entries[i][f]
        basis.append(vec)
    return basis


def inverse(x: Matrix) -> Matrix:
    if x.rows != x.cols:
        raise DimensionMismatch("inverse of a non-square matrix")
    n = x.rows
    aug = Matrix([list(row) + list(eye) for row, eye in zip(x.entries, Matrix.identity(n).entries)])
    red, pivots = rref(aug)
    if pivots[:n] != list(range(n)):
        raise ZeroDivisionError("matrix is singular")
    return red.submatrix(range(n), range(n, 2 * n))


# JSON I/O ---------------------------------------------------------------------


def matrix_from_json(data) -> tuple[Matrix, dict]:
    """Read ``{"dim": d, "entries": [[expr, ...], ...]}``; returns (matrix, metadata)."""
    from .expr import parse_scalar

    if isinstance(data, (str, Path)) and Path(data).exists():
        data = json.loads(Path(data).read_text(encoding="utf-8"))
    elif isinstance(data, str):
        data = json.loads(data)
    entries = [[parse_scalar(str(e)) for e in row] for row in data["entries"]]
    m = Matrix(entries)
    d = data.get("dim")
    if d is not None and m.shape != (d * d, d * d):
        raise DimensionMismatch(f"dim {d} needs a {d * d}x{d * d} matrix, got {m.shape}")
    meta = {k: v for k, v in data.items() if k != "entries"}
    return m, meta


def matrix_to_json(x: Matrix, **meta) -> dict:
    out = dict(meta)
    d = int(round(x.rows ** 0.5))
    if "dim" not in out and d * d == x.rows == x.cols:
        out["dim"] = d
    out["entries"] = x.to_strings()
    return out


def dump_matrix_json(x: Matrix, **meta) -> str:
    data = matrix_to_json(x, **meta)
    head = "".join(f"  {json.dumps(k)}: {json.dumps(v)},\n" for k, v in data.items() if k != "entries")
    rows = ",\n".join("    " + json.dumps(row) for row in data["entries"])
    return "{\n" + head + '  "entries": [\n' + rows + "\n  ]\n}\n"


def composite_labels(d: int) -> list:
    return [f"({i}{j})" for i, j in product(range(1, d + 1), repeat=2)]
