"""Similarity invariants of a square matrix: characteristic polynomial,
invariant factors / characteristic divisors, and Jordan cells.

Over a field that is not algebraically closed a Jordan cell is reported as
``(p, k)`` with ``p`` a monic irreducible polynomial; linear factors
``z - λ`` are rendered in the familiar form ``(λ, k)``.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from typing import List, Sequence, Tuple

from .linalg import Field, Matrix, Polynomial, factor, poly_product


def char_poly(T: Matrix) -> Polynomial:
    """``det(zI - T)`` by the division-free Berkowitz algorithm."""
    if not T.is_square():
        raise ValueError("characteristic polynomial of a non-square matrix")
    F = T.field
    n = T.rows
    # vect holds coefficients highest degree first
    vect = [F.one]
    for k in range(n):
        a = T[k, k]
        R = [T[k, j] for j in range(k)]
        Ccol = [T[i, k] for i in range(k)]
        col = [F.one, -a]
        w = Ccol
        for _ in range(k):
            col.append(-sum((r * x for r, x in zip(R, w)), F.zero))
            w = [sum((T[i, j] * w[j] for j in range(k)), F.zero) for i in range(k)]
        # (k+2) x (k+1) lower-triangular Toeplitz product
        new = []
        for i in range(k + 2):
            s = F.zero
            for j in range(k + 1):
                if 0 <= i - j < len(col):
                    s = s + col[i - j] * vect[j]
            new.append(s)
        vect = new
    return Polynomial(list(reversed(vect)), F)


def _smith_diagonal(M: List[List[Polynomial]], F: Field) -> List[Polynomial]:
    """Diagonal of the Smith form of a square polynomial matrix (monic, dividing chain)."""
    n = len(M)
    M = [list(r) for r in M]
    diag: List[Polynomial] = []
    for t in range(n):
        while True:
            best = None
            for i in range(t, n):
                for j in range(t, n):
                    if not M[i][j].is_zero() and (best is None or M[i][j].degree < best[0]):
                        best = (M[i][j].degree, i, j)
            if best is None:
                diag.extend(Polynomial([], F) for _ in range(t, n))
                return diag
            _, i, j = best
            M[t], M[i] = M[i], M[t]
            for r in M:
                r[t], r[j] = r[j], r[t]
            piv = M[t][t]
            dirty = False
            for i in range(t + 1, n):
                if not M[i][t].is_zero():
                    q, rem = divmod(M[i][t], piv)
                    M[i] = [a - q * b for a, b in zip(M[i], M[t])]
                    dirty = dirty or not rem.is_zero()
            for j in range(t + 1, n):
                if not M[t][j].is_zero():
                    q, rem = divmod(M[t][j], piv)
                    for r in M:
                        r[j] = r[j] - q * r[t]
                    dirty = dirty or not rem.is_zero()
            if dirty:
                continue
            bad = next(((i, j) for i in range(t + 1, n) for j in range(t + 1, n)
                        if not (M[i][j] % piv).is_zero()), None)
            if bad is None:
                diag.append(piv.monic())
                break
            M[t] = [a + b for a, b in zip(M[t], M[bad[0]])]
    return diag


def invariant_factors(T: Matrix) -> List[Polynomial]:
    """Invariant factors ``d_1 | d_2 | ... | d_n`` of ``zI - T`` (units included as ``1``)."""
    if not T.is_square():
        raise ValueError("invariant factors of a non-square matrix")
    F = T.field
    n = T.rows
    zI_T = [[Polynomial([-T[i, j], 1] if i == j else [-T[i, j]], F) for j in range(n)] for i in range(n)]
    return _smith_diagonal(zI_T, F)


def characteristic_divisors(T: Matrix) -> List[Polynomial]:
    """The chain ``P_0, P_1, ..., P_{n-1}``: ``P_i`` is the monic gcd of the
    ``(n-i)``-minors of ``zI - T``, so ``P_0`` is the characteristic
    polynomial and each ``P_i`` divides ``P_{i-1}``.
    """
    d = invariant_factors(T)
    n = len(d)
    F = T.field
    return [poly_product(d[:n - i], F) for i in range(n)]


@dataclass(frozen=True, order=False)
class JordanCell:
    factor: Polynomial
    k: int

    @property
    def is_linear(self) -> bool:
        return self.factor.degree == 1

    @property
    def eigenvalue(self):
        """``λ`` for a linear factor ``z - λ``; ``None`` otherwise."""
        return -self.factor.coeffs[0] if self.is_linear else None

    def sort_key(self):
        if self.is_linear:
            return (1, (self.factor.field.sort_key(self.eigenvalue),), self.k)
        return (self.factor.degree, self.factor.sort_key()[1], self.k)

    def render(self) -> str:
        if self.is_linear:
            return f"({self.factor.field.to_str(self.eigenvalue)},{self.k})"
        return f"({self.factor.render()},{self.k})"

    def __str__(self) -> str:
        return self.render()

    def elementary_divisor(self) -> Polynomial:
        return self.factor ** self.k

    def has_root(self, x) -> bool:
        return self.factor(x) == 0


@dataclass(frozen=True)
class MonodromyClass:
    """Similarity class of an invertible matrix."""

    dim: int
    char_poly: Polynomial
    invariant_factors: Tuple[Polynomial, ...]
    divisor_chain: Tuple[Polynomial, ...]
    jordan_cells: Tuple[JordanCell, ...]
    field: Field = dc_field(compare=False)

    def nontrivial_invariant_factors(self) -> List[Polynomial]:
        return [d for d in self.invariant_factors if d.degree > 0]

    def cells_with_root(self, x) -> List[JordanCell]:
        return [c for c in self.jordan_cells if c.has_root(x)]

    def render_cells(self) -> str:
        return " ".join(c.render() for c in self.jordan_cells) if self.jordan_cells else "(none)"

    @classmethod
    def empty(cls, field: Field) -> "MonodromyClass":
        one = Polynomial.constant(1, field)
        return cls(0, one, (), (), (), field)

    @classmethod
    def from_cells(cls, cells: Sequence[JordanCell], field: Field) -> "MonodromyClass":
        """Class of the direct sum of the given cells (companion blocks)."""
        if not cells:
            return cls.empty(field)
        return jordan_cells(Matrix.diagonal_blocks([cell_block(c) for c in cells], field))


def cell_block(cell: JordanCell) -> Matrix:
    """A matrix whose only elementary divisor is ``factor^k`` (companion of it)."""
    return companion(cell.elementary_divisor())


def companion(p: Polynomial) -> Matrix:
    p = p.monic()
    n = p.degree
    F = p.field
    M = Matrix.zeros(n, n, F).copy_data()
    for i in range(1, n):
        M[i][i - 1] = F.one
    for i in range(n):
        M[i][n - 1] = -p.coeffs[i]
    return Matrix(F, n, n, M)


def jordan_block(lam, k: int, field) -> Matrix:
    M = Matrix.zeros(k, k, field).copy_data()
    for i in range(k):
        M[i][i] = field(lam)
        if i + 1 < k:
            M[i][i + 1] = field.one
    return Matrix(field, k, k, M)


def jordan_cells(T: Matrix, require_invertible: bool = True) -> MonodromyClass:
    """Jordan cells of ``T``: every invariant factor splits into prime powers ``p^k``,
    each contributing the cell ``(p, k)``."""
    if not T.is_square():
        raise ValueError("Jordan cells of a non-square matrix")
    F = T.field
    if T.rows == 0:
        return MonodromyClass.empty(F)
    inv = invariant_factors(T)
    cells = []
    for d in inv:
        if d.degree <= 0:
            continue
        for p, k in factor(d):
            cells.append(JordanCell(p, k))
    if require_invertible and any(c.factor.coeffs[0] == 0 for c in cells):
        raise ValueError("matrix is not invertible (zero eigenvalue)")
    cells.sort(key=JordanCell.sort_key)
    cp = char_poly(T)
    chain = characteristic_divisors_from(inv, F)
    return MonodromyClass(T.rows, cp, tuple(inv), tuple(chain), tuple(cells), F)


def characteristic_divisors_from(inv: Sequence[Polynomial], F: Field) -> List[Polynomial]:
    n = len(inv)
    return [poly_product(inv[:n - i], F) for i in range(n)]


def similarity_equal(T1: Matrix, T2: Matrix) -> bool:
    if not (T1.is_square() and T2.is_square()):
        raise ValueError("similarity needs square matrices")
    if T1.rows != T2.rows:
        return False
    return invariant_factors(T1) == invariant_factors(T2)


def same_class(a: MonodromyClass, b: MonodromyClass) -> bool:
    """Equality of similarity classes, comparing the nontrivial invariant factors."""
    return a.dim == b.dim and a.nontrivial_invariant_factors() == b.nontrivial_invariant_factors()


def inverse_cells(cls: MonodromyClass) -> List[JordanCell]:
    """Cells of the inverse matrix: factors replaced by their monic reciprocals."""
    out = [JordanCell(c.factor.reversed_monic(), c.k) for c in cls.jordan_cells]
    out.sort(key=JordanCell.sort_key)
    return out


def elementary_divisor_product(cls: MonodromyClass) -> Polynomial:
    return poly_product([c.elementary_divisor() for c in cls.jordan_cells], cls.field)
