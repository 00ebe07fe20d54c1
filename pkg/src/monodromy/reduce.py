"""Shrink a cospan pair ``(A, B)`` to an invertible pair with the same regular part.

``R(A, B) = {(x, y) | A x = B y}`` for two ``m x n`` matrices. Three
modifications remove the parts of the pair that cannot contribute to the
regular part:

* ``T1`` (``A`` not surjective) restricts to the rows hit by ``A`` and to the
  part of the target killed by the remaining rows of ``B``;
* ``T2`` is the same with the roles of ``A`` and ``B`` exchanged;
* ``T3`` (``A`` not injective) divides out ``ker A`` from the source and its
  ``B``-image from the target.

Every step makes ``m + n`` strictly smaller. Once ``A`` and ``B`` are both
square and invertible the monodromy is ``B^-1 A``.

Two families of transforms are supported. ``"compress"`` (the default) only
moves the rows/columns that have to move, so already well-shaped inputs pass
through with identity transforms; ``"echelon"`` uses row/column echelon
forms. The block split is identical in both cases::

    T1:  C A D = [[A11, A12], [0, 0]],   C B D = [[B11, B12], [B21, 0]]   -> (A12, B12)
    T2:  C A D = [[A11, A12], [A21, 0]], C B D = [[B11, B12], [0, 0]]     -> (A12, B12)
    T3:  C A D = [[A11, 0], [A21, 0]],   C B D = [[B11, B12], [B21, 0]]   -> (A21, B21)

where for T1/T2 the top block has ``rank A`` (resp. ``rank B``) rows and the
left block has the rank of the lower rows of the other matrix as columns;
for T3 the left block has ``rank A`` columns and the top block has the rank of
the right columns of ``B D`` as rows.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from typing import Callable, Tuple

from .linalg import (
    Matrix,
    cef_with_transform,
    col_compress_with_transform,
    ref_with_transform,
    row_compress_with_transform,
)

METHODS = ("compress", "echelon")


class ModificationNotApplicable(ValueError):
    """A modification was requested whose precondition does not hold."""


@dataclass(frozen=True)
class Modification:
    """One applied step: the transforms and the kept block of ``(C A D, C B D)``."""

    name: str
    C: Matrix
    D: Matrix
    rows: Tuple[int, int]
    cols: Tuple[int, int]

    def apply(self, A: Matrix, B: Matrix) -> Tuple[Matrix, Matrix]:
        r0, r1 = self.rows
        c0, c1 = self.cols
        return (self.C @ A @ self.D).block(r0, r1, c0, c1), (self.C @ B @ self.D).block(r0, r1, c0, c1)


@dataclass(frozen=True)
class CospanPair:
    A: Matrix
    B: Matrix
    trace: Tuple[Modification, ...] = dc_field(default=())

    def __post_init__(self):
        if self.A.shape != self.B.shape:
            raise ValueError(f"A and B must share a shape, got {self.A.shape} and {self.B.shape}")
        if self.A.field != self.B.field:
            raise ValueError("A and B live over different fields")

    @property
    def shape(self) -> Tuple[int, int]:
        return self.A.shape

    @property
    def field(self):
        return self.A.field

    def _step(self, mod: Modification) -> "CospanPair":
        A, B = mod.apply(self.A, self.B)
        return CospanPair(A, B, self.trace + (mod,))

    def is_invertible(self) -> bool:
        m, n = self.shape
        return m == n and self.A.rank() == m and self.B.rank() == m


def is_surjective(M: Matrix) -> bool:
    return M.rank() == M.rows


def is_injective(M: Matrix) -> bool:
    return M.rank() == M.cols


def _row_transform(method: str) -> Callable[[Matrix], Tuple[Matrix, int]]:
    if method == "compress":
        def go(M):
            C, _, k = row_compress_with_transform(M)
            return C, k
    elif method == "echelon":
        def go(M):
            C, R = ref_with_transform(M)
            return C, sum(1 for i in range(R.rows) if any(x != 0 for x in R.row(i)))
    else:
        raise ValueError(f"unknown method {method!r}; expected one of {METHODS}")
    return go


def _col_transform(method: str) -> Callable[[Matrix], Tuple[Matrix, int]]:
    if method == "compress":
        def go(M):
            D, _, k = col_compress_with_transform(M)
            return D, k
    elif method == "echelon":
        def go(M):
            D, R = cef_with_transform(M)
            return D, sum(1 for j in range(R.cols) if any(x != 0 for x in R.column(j)))
    else:
        raise ValueError(f"unknown method {method!r}; expected one of {METHODS}")
    return go


def _restrict(p: CospanPair, name: str, first: Matrix, second: Matrix, method: str) -> CospanPair:
    # shared body of T1 (first = A) and T2 (first = B)
    m, n = p.shape
    C, r = _row_transform(method)(first)
    lower = (C @ second).block(r, m, 0, n)
    D, s = _col_transform(method)(lower)
    return p._step(Modification(name, C, D, (0, r), (s, n)))


def t1(p: CospanPair, method: str = "compress") -> CospanPair:
    if is_surjective(p.A):
        raise ModificationNotApplicable("T1 needs A to be non-surjective")
    return _restrict(p, "T1", p.A, p.B, method)


def t2(p: CospanPair, method: str = "compress") -> CospanPair:
    if is_surjective(p.B):
        raise ModificationNotApplicable("T2 needs B to be non-surjective")
    return _restrict(p, "T2", p.B, p.A, method)


def t3(p: CospanPair, method: str = "compress") -> CospanPair:
    """Quotient by ``ker A``.

    Vectors of ``ker A`` are related to ``0`` so they never reach the regular
    part; the step is sound for any pair. Surjectivity of ``A`` and ``B`` is
    only needed for the output to stay surjective, which the loop relies on.
    """
    if is_injective(p.A):
        raise ModificationNotApplicable("T3 needs A to be non-injective")
    m, n = p.shape
    D, c = _col_transform(method)(p.A)
    right = (p.B @ D).block(0, m, c, n)
    C, t = _row_transform(method)(right)
    return p._step(Modification("T3", C, D, (t, m), (0, c)))


def applicable(p: CospanPair):
    """Names of the modifications whose preconditions hold."""
    out = []
    if not is_surjective(p.A):
        out.append("T1")
    if not is_surjective(p.B):
        out.append("T2")
    if not is_injective(p.A):
        out.append("T3")
    return out


MODIFICATIONS = {"T1": t1, "T2": t2, "T3": t3}


def reduce(p: CospanPair, method: str = "compress") -> CospanPair:
    """Run (I) T1 until A is surjective, (II) T2 until B is surjective,
    (III) T3 until A is injective. The result is a square invertible pair
    (possibly 0 x 0)."""
    while not is_surjective(p.A):
        p = t1(p, method)
    while not is_surjective(p.B):
        p = t2(p, method)
    while not is_injective(p.A):
        p = t3(p, method)
    if not p.is_invertible():
        raise AssertionError(f"reduction stopped at a non-invertible pair of shape {p.shape}")
    return p


def monodromy_matrix(p: CospanPair) -> Matrix:
    """``B^-1 A`` for a square invertible pair."""
    m, n = p.shape
    if m != n:
        raise ValueError(f"monodromy needs a square pair, got {m}x{n}")
    return p.B.inverse() @ p.A


def reduce_pair(A: Matrix, B: Matrix, method: str = "compress") -> Matrix:
    """Shortcut: monodromy matrix of the cospan pair ``(A, B)``."""
    return monodromy_matrix(reduce(CospanPair(A, B), method))
