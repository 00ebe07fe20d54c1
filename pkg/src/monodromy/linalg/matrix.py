"""Dense exact matrices and echelon forms with transformation matrices."""

from __future__ import annotations

from typing import Iterable, List, Optional, Sequence, Tuple

from .fields import QQ, Field, Scalar


class Matrix:
    """Immutable dense matrix over an exact field.

    Empty shapes (``0 x n`` and ``m x 0``) are ordinary values.
    """

    __slots__ = ("field", "rows", "cols", "_data")

    def __init__(self, field: Field, rows: int, cols: int, data: List[List[Scalar]]):
        self.field = field
        self.rows = rows
        self.cols = cols
        self._data = data

    # -- construction -----------------------------------------------------

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence], field: Field = QQ, cols: Optional[int] = None) -> "Matrix":
        data = [[field(x) for x in row] for row in rows]
        ncols = len(data[0]) if data else (cols or 0)
        if cols is not None and data and ncols != cols:
            raise ValueError("column count mismatch")
        if any(len(r) != ncols for r in data):
            raise ValueError("ragged rows")
        return cls(field, len(data), ncols, data)

    @classmethod
    def zeros(cls, rows: int, cols: int, field: Field = QQ) -> "Matrix":
        z = field.zero
        return cls(field, rows, cols, [[z] * cols for _ in range(rows)])

    @classmethod
    def identity(cls, n: int, field: Field = QQ) -> "Matrix":
        m = cls.zeros(n, n, field)
        one = field.one
        for i in range(n):
            m._data[i][i] = one
        return m

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence[Scalar]], rows: int, field: Field = QQ) -> "Matrix":
        data = [[field(col[i]) for col in columns] for i in range(rows)]
        return cls(field, rows, len(columns), data)

    @classmethod
    def diagonal_blocks(cls, blocks: Sequence["Matrix"], field: Field = QQ) -> "Matrix":
        rows = sum(b.rows for b in blocks)
        cols = sum(b.cols for b in blocks)
        out = cls.zeros(rows, cols, field)
        r0 = c0 = 0
        for b in blocks:
            for i in range(b.rows):
                out._data[r0 + i][c0:c0 + b.cols] = list(b._data[i])
            r0 += b.rows
            c0 += b.cols
        return out

    # -- access -------------------------------------------------------------

    @property
    def shape(self) -> Tuple[int, int]:
        return (self.rows, self.cols)

    def __getitem__(self, idx):
        i, j = idx
        return self._data[i][j]

    def row(self, i: int) -> List[Scalar]:
        return list(self._data[i])

    def column(self, j: int) -> List[Scalar]:
        return [r[j] for r in self._data]

    def to_lists(self) -> List[List[Scalar]]:
        return [list(r) for r in self._data]

    def copy_data(self) -> List[List[Scalar]]:
        return [list(r) for r in self._data]

    def submatrix(self, rows: Iterable[int], cols: Iterable[int]) -> "Matrix":
        rows = list(rows)
        cols = list(cols)
        return Matrix(self.field, len(rows), len(cols), [[self._data[i][j] for j in cols] for i in rows])

    def block(self, r0: int, r1: int, c0: int, c1: int) -> "Matrix":
        return self.submatrix(range(r0, r1), range(c0, c1))

    @property
    def T(self) -> "Matrix":
        return Matrix(self.field, self.cols, self.rows,
                      [[self._data[i][j] for i in range(self.rows)] for j in range(self.cols)])

    def hstack(self, other: "Matrix") -> "Matrix":
        if self.rows != other.rows:
            raise ValueError("hstack needs equal row counts")
        return Matrix(self.field, self.rows, self.cols + other.cols,
                      [self._data[i] + other._data[i] for i in range(self.rows)])

    def vstack(self, other: "Matrix") -> "Matrix":
        if self.cols != other.cols:
            raise ValueError("vstack needs equal column counts")
        return Matrix(self.field, self.rows + other.rows, self.cols,
                      [list(r) for r in self._data] + [list(r) for r in other._data])

    def is_zero(self) -> bool:
        return all(x == 0 for r in self._data for x in r)

    def is_square(self) -> bool:
        return self.rows == self.cols

    # -- arithmetic -------------------------------------------------------------

    def __matmul__(self, other: "Matrix") -> "Matrix":
        if self.cols != other.rows:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        zero = self.field.zero
        ocols = list(zip(*other._data)) if other.rows else [()] * other.cols
        data = []
        for r in self._data:
            nz = [(k, a) for k, a in enumerate(r) if a != 0]
            row = []
            for col in ocols:
                s = zero
                for k, a in nz:
                    b = col[k]
                    if b != 0:
                        s = s + a * b
                row.append(s)
            data.append(row)
        return Matrix(self.field, self.rows, other.cols, data)

    def apply(self, v: Sequence[Scalar]) -> List[Scalar]:
        if len(v) != self.cols:
            raise ValueError("vector length mismatch")
        zero = self.field.zero
        out = []
        for r in self._data:
            s = zero
            for a, b in zip(r, v):
                if a != 0 and b != 0:
                    s = s + a * b
            out.append(s)
        return out

    def __add__(self, other: "Matrix") -> "Matrix":
        if self.shape != other.shape:
            raise ValueError("shape mismatch")
        return Matrix(self.field, self.rows, self.cols,
                      [[a + b for a, b in zip(r, s)] for r, s in zip(self._data, other._data)])

    def __sub__(self, other: "Matrix") -> "Matrix":
        if self.shape != other.shape:
            raise ValueError("shape mismatch")
        return Matrix(self.field, self.rows, self.cols,
                      [[a - b for a, b in zip(r, s)] for r, s in zip(self._data, other._data)])

    def __neg__(self) -> "Matrix":
        return Matrix(self.field, self.rows, self.cols, [[-a for a in r] for r in self._data])

    def scale(self, c) -> "Matrix":
        c = self.field(c)
        return Matrix(self.field, self.rows, self.cols, [[c * a for a in r] for r in self._data])

    def __eq__(self, other) -> bool:
        if not isinstance(other, Matrix):
            return NotImplemented
        return self.shape == other.shape and self.field == other.field and all(
            a == b for r, s in zip(self._data, other._data) for a, b in zip(r, s))

    def __hash__(self) -> int:
        return hash((self.shape, tuple(tuple(r) for r in self._data)))

    def __repr__(self) -> str:
        body = "; ".join(" ".join(self.field.to_str(x) for x in r) for r in self._data)
        return f"Matrix<{self.field.tag()} {self.rows}x{self.cols}>[{body}]"

    # -- derived quantities ------------------------------------------------------

    def rank(self) -> int:
        return rank(self)

    def inverse(self) -> "Matrix":
        return inverse(self)


def _ref_in_place(data: List[List[Scalar]], rows: int, cols: int,
                  track: Optional[List[List[Scalar]]] = None,
                  reduced: bool = False) -> List[Tuple[int, int]]:
    """Forward elimination; returns the pivot positions.

    The pivot in each column is the first nonzero entry at or below the
    current row; no scaling unless ``reduced``.
    """
    pivots = []
    r = 0
    for c in range(cols):
        if r >= rows:
            break
        p = next((i for i in range(r, rows) if data[i][c] != 0), None)
        if p is None:
            continue
        if p != r:
            data[p], data[r] = data[r], data[p]
            if track is not None:
                track[p], track[r] = track[r], track[p]
        if reduced:
            inv = 1 / data[r][c]
            data[r] = [inv * x for x in data[r]]
            if track is not None:
                track[r] = [inv * x for x in track[r]]
        piv = data[r][c]
        prow = data[r]
        support = [j for j in range(c, cols) if prow[j] != 0]
        if track is not None:
            trow = track[r]
            tsupport = [j for j in range(len(trow)) if trow[j] != 0]
        targets = range(rows) if reduced else range(r + 1, rows)
        for i in targets:
            if i == r or data[i][c] == 0:
                continue
            f = data[i][c] / piv
            row = data[i]
            for j in support:
                row[j] = row[j] - f * prow[j]
            if track is not None:
                trk = track[i]
                for j in tsupport:
                    trk[j] = trk[j] - f * trow[j]
        pivots.append((r, c))
        r += 1
    return pivots


def ref_with_transform(M: Matrix) -> Tuple[Matrix, Matrix]:
    """Return ``(C, R)`` with ``C`` invertible ``m x m`` and ``R = C @ M`` in row echelon form."""
    data = M.copy_data()
    track = Matrix.identity(M.rows, M.field).copy_data()
    _ref_in_place(data, M.rows, M.cols, track)
    return Matrix(M.field, M.rows, M.rows, track), Matrix(M.field, M.rows, M.cols, data)


def rref_with_transform(M: Matrix) -> Tuple[Matrix, Matrix, List[int]]:
    """Reduced row echelon form ``R = C @ M`` and its pivot columns."""
    data = M.copy_data()
    track = Matrix.identity(M.rows, M.field).copy_data()
    piv = _ref_in_place(data, M.rows, M.cols, track, reduced=True)
    return (Matrix(M.field, M.rows, M.rows, track), Matrix(M.field, M.rows, M.cols, data),
            [c for _, c in piv])


def rref(M: Matrix) -> Tuple[Matrix, List[int]]:
    data = M.copy_data()
    piv = _ref_in_place(data, M.rows, M.cols, reduced=True)
    return Matrix(M.field, M.rows, M.cols, data), [c for _, c in piv]


def cef_with_transform(M: Matrix) -> Tuple[Matrix, Matrix]:
    """Return ``(D, R)`` with ``D`` invertible ``n x n`` and ``R = M @ D`` in column echelon form."""
    C, R = ref_with_transform(M.T)
    return C.T, R.T


def row_compress_with_transform(M: Matrix) -> Tuple[Matrix, Matrix, int]:
    """Return ``(C, R, k)`` with ``R = C @ M = [M1; 0]`` and ``M1`` of full row rank ``k``.

    Rows are scanned top to bottom; each row independent of the rows kept
    so far is kept, in its original order, and every dependent row is
    replaced by its difference with the combination of kept rows that
    reproduces it. This is the least invasive transform with the block
    shape the pair reduction needs (an identity when ``M`` already has it).
    """
    field = M.field
    m = M.rows
    zero, one = field.zero, field.one
    kept: List[int] = []
    # echelon basis of the kept rows: (pivot column, vector, coefficients over kept rows)
    basis: List[Tuple[int, List[Scalar], List[Scalar]]] = []
    dependent: List[Tuple[int, List[Scalar]]] = []
    for i in range(m):
        v = M.row(i)
        expr = [zero] * len(kept)  # v == row_i - sum(expr[j] * row_{kept[j]})
        for pc, bv, bexpr in basis:
            if v[pc] != 0:
                f = v[pc] / bv[pc]
                v = [a - f * b for a, b in zip(v, bv)]
                for j, c in enumerate(bexpr):
                    if c != 0:
                        expr[j] = expr[j] + f * c
        pc = next((j for j, x in enumerate(v) if x != 0), None)
        if pc is None:
            dependent.append((i, expr))
            continue
        kept.append(i)
        for t in basis:
            t[2].append(zero)
        basis.append((pc, v, [-c for c in expr] + [one]))
        basis.sort(key=lambda t: t[0])
    k = len(kept)
    C = [[zero] * m for _ in range(m)]
    for pos, i in enumerate(kept):
        C[pos][i] = one
    for pos, (i, expr) in enumerate(dependent, start=k):
        C[pos][i] = one
        for c, j in zip(expr, kept):
            if c != 0:
                C[pos][j] = C[pos][j] - c
    Cm = Matrix(field, m, m, C)
    return Cm, Cm @ M, k


def col_compress_with_transform(M: Matrix) -> Tuple[Matrix, Matrix, int]:
    """Column analogue of :func:`row_compress_with_transform`: ``M @ D = [M1, 0]``."""
    C, R, k = row_compress_with_transform(M.T)
    return C.T, R.T, k


def is_ref(M: Matrix) -> bool:
    """Check the two row echelon clauses literally."""
    last_lead = -1
    seen_zero = False
    for i in range(M.rows):
        lead = next((j for j in range(M.cols) if M[i, j] != 0), None)
        if lead is None:
            seen_zero = True
            continue
        if seen_zero or lead <= last_lead:
            return False
        last_lead = lead
    return True


def is_cef(M: Matrix) -> bool:
    return is_ref(M.T)


def rank(M: Matrix) -> int:
    data = M.copy_data()
    return len(_ref_in_place(data, M.rows, M.cols))


def kernel_vectors(M: Matrix) -> List[List[Scalar]]:
    """Basis of the right null space as a list of vectors (canonical RREF-derived)."""
    R, piv = rref(M)
    field = M.field
    free = [j for j in range(M.cols) if j not in set(piv)]
    out = []
    for f in free:
        v = [field.zero] * M.cols
        v[f] = field.one
        for i, pc in enumerate(piv):
            v[pc] = -R[i, f]
        out.append(v)
    return out


def solve(M: Matrix, b: Sequence[Scalar]) -> Optional[List[Scalar]]:
    """One solution ``x`` of ``M x = b``, or ``None`` when ``b`` is not in the image."""
    if len(b) != M.rows:
        raise ValueError("right-hand side length mismatch")
    field = M.field
    aug = Matrix(field, M.rows, M.cols + 1, [r + [field(x)] for r, x in zip(M.copy_data(), b)])
    R, piv = rref(aug)
    if M.cols in piv:
        return None
    x = [field.zero] * M.cols
    for i, pc in enumerate(piv):
        x[pc] = R[i, M.cols]
    return x


def inverse(M: Matrix) -> Matrix:
    if not M.is_square():
        raise ValueError("inverse of a non-square matrix")
    C, R, piv = rref_with_transform(M)
    if len(piv) != M.rows:
        raise ZeroDivisionError("matrix is singular")
    return C


def determinant(M: Matrix) -> Scalar:
    if not M.is_square():
        raise ValueError("determinant of a non-square matrix")
    data = M.copy_data()
    n = M.rows
    det = M.field.one
    for c in range(n):
        p = next((i for i in range(c, n) if data[i][c] != 0), None)
        if p is None:
            return M.field.zero
        if p != c:
            data[p], data[c] = data[c], data[p]
            det = -det
        det = det * data[c][c]
        for i in range(c + 1, n):
            if data[i][c] != 0:
                f = data[i][c] / data[c][c]
                data[i] = [a - f * b for a, b in zip(data[i], data[c])]
    return det
