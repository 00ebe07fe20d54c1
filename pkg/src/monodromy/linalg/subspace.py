"""Subspaces of ``field^n`` in a canonical basis, so equality is matrix equality."""

from __future__ import annotations

from typing import List, Sequence

from .fields import QQ, Field, Scalar
from .matrix import Matrix, kernel_vectors, rref


class Subspace:
    """A subspace of ``field^ambient_dim``.

    ``basis`` holds the spanning columns in reduced column echelon form
    (the transpose of a reduced row echelon matrix), which makes the
    representation unique.
    """

    __slots__ = ("field", "ambient_dim", "basis", "_pivots")

    def __init__(self, ambient_dim: int, vectors: Sequence[Sequence[Scalar]] = (), field: Field = QQ):
        self.field = field
        self.ambient_dim = ambient_dim
        rows = [[field(x) for x in v] for v in vectors]
        if any(len(r) != ambient_dim for r in rows):
            raise ValueError("vector length differs from the ambient dimension")
        R, piv = rref(Matrix(field, len(rows), ambient_dim, rows)) if rows else (None, [])
        kept = [R.row(i) for i in range(len(piv))] if rows else []
        self._pivots = tuple(piv)
        self.basis = Matrix(field, ambient_dim, len(kept),
                            [[kept[j][i] for j in range(len(kept))] for i in range(ambient_dim)])

    @classmethod
    def from_matrix_columns(cls, M: Matrix) -> "Subspace":
        return cls(M.rows, [M.column(j) for j in range(M.cols)], M.field)

    @classmethod
    def full(cls, n: int, field: Field = QQ) -> "Subspace":
        return cls.from_matrix_columns(Matrix.identity(n, field))

    @classmethod
    def zero(cls, n: int, field: Field = QQ) -> "Subspace":
        return cls(n, [], field)

    @property
    def dim(self) -> int:
        return self.basis.cols

    def vectors(self) -> List[List[Scalar]]:
        return [self.basis.column(j) for j in range(self.dim)]

    def contains(self, v: Sequence[Scalar]) -> bool:
        v = [self.field(x) for x in v]
        # RREF rows: v is in the span iff v equals the combination read off at the pivots
        for j, pc in enumerate(self._pivots):
            c = v[pc]
            if c != 0:
                col = self.basis.column(j)
                v = [a - c * b for a, b in zip(v, col)]
        return all(x == 0 for x in v)

    def contains_subspace(self, other: "Subspace") -> bool:
        return all(self.contains(v) for v in other.vectors())

    def __eq__(self, other) -> bool:
        if not isinstance(other, Subspace):
            return NotImplemented
        return self.ambient_dim == other.ambient_dim and self.basis == other.basis

    def __hash__(self) -> int:
        return hash((self.ambient_dim, self.basis))

    def __repr__(self) -> str:
        return f"Subspace(dim={self.dim} in {self.field.tag()}^{self.ambient_dim})"

    def __add__(self, other: "Subspace") -> "Subspace":
        return subspace_sum(self, other)

    def __and__(self, other: "Subspace") -> "Subspace":
        return subspace_intersect(self, other)

    @property
    def pivots(self):
        return self._pivots


def _check_ambient(U: Subspace, W: Subspace) -> None:
    if U.ambient_dim != W.ambient_dim:
        raise ValueError(f"ambient dimensions differ: {U.ambient_dim} vs {W.ambient_dim}")


def subspace_sum(U: Subspace, W: Subspace) -> Subspace:
    _check_ambient(U, W)
    return Subspace(U.ambient_dim, U.vectors() + W.vectors(), U.field)


def subspace_intersect(U: Subspace, W: Subspace) -> Subspace:
    """Intersection via the kernel of ``[U | -W]``."""
    _check_ambient(U, W)
    if U.dim == 0 or W.dim == 0:
        return Subspace.zero(U.ambient_dim, U.field)
    stacked = U.basis.hstack(-W.basis)
    vecs = []
    for k in kernel_vectors(stacked):
        vecs.append(U.basis.apply(k[:U.dim]))
    return Subspace(U.ambient_dim, vecs, U.field)


def image_basis(M: Matrix) -> Subspace:
    return Subspace.from_matrix_columns(M)


def kernel_basis(M: Matrix) -> Subspace:
    return Subspace(M.cols, kernel_vectors(M), M.field)


def quotient_map(n: int, U: Subspace) -> Matrix:
    """Surjection ``field^n -> field^(n - dim U)`` whose kernel is exactly ``U``.

    Coordinates of the quotient are the non-pivot coordinates of ``U``'s
    reduced echelon basis after clearing the pivot coordinates.
    """
    if U.ambient_dim != n:
        raise ValueError("ambient dimension mismatch")
    field = U.field
    piv = list(U.pivots)
    free = [j for j in range(n) if j not in set(piv)]
    # v -> v - sum_j v[piv_j] * u_j, then keep the free coordinates
    P = Matrix.identity(n, field).copy_data()
    for j, pc in enumerate(piv):
        col = U.basis.column(j)
        for i in range(n):
            if col[i] != 0:
                P[i][pc] = P[i][pc] - col[i]
    return Matrix(field, len(free), n, [P[i] for i in free])


def complement_basis(U: Subspace, W: Subspace) -> List[List[Scalar]]:
    """Vectors extending a basis of ``U`` (contained in ``W``) to a basis of ``W``."""
    if not W.contains_subspace(U):
        raise ValueError("U must be contained in W")
    current = Subspace(U.ambient_dim, U.vectors(), U.field)
    extra = []
    for v in W.vectors():
        if not current.contains(v):
            extra.append(v)
            current = Subspace(U.ambient_dim, current.vectors() + [v], U.field)
    return extra
