"""Cellular homology over a field by left-to-right column reduction.

The boundary matrix of a complex listed in a good order is strictly upper
triangular. Reducing its columns from left to right (adding earlier columns
to clear repeated lowest nonzero entries) gives ``R = ∂ V``:

* a column with ``R_j = 0`` is a cycle ``V_j`` (the cell ``j`` is *positive*);
* a positive cell that is the lowest entry of some reduced column is killed
  by that boundary; the remaining positive cells index a homology basis.

Because ``Y1`` and then ``Y2`` come first in the cut complex and are closed
under faces, the same reduction restricted to their index ranges is their
own reduction, and the two copies produce matching bases.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from typing import Dict, List, Optional, Sequence, Tuple

from .complexes import CutComplex, SimplicialComplex
from .linalg import QQ, Field, Matrix

Chain = Dict[int, object]


def _low(col: Chain) -> int:
    return max(col) if col else -1


def _axpy(target: Chain, c, source: Chain) -> None:
    """``target += c * source`` in place, dropping zeros."""
    for i, v in source.items():
        w = target.get(i)
        w = c * v if w is None else w + c * v
        if w == 0:
            target.pop(i, None)
        else:
            target[i] = w


@dataclass
class Reduction:
    """Reduced columns ``R``, the transform ``V`` and the pairing."""

    field: Field
    dims: List[int]
    R: List[Chain]
    V: List[Chain]
    low_to_col: Dict[int, int]

    def is_positive(self, j: int) -> bool:
        return not self.R[j]

    def essential(self, lo: int = 0, hi: Optional[int] = None) -> List[int]:
        """Positive cells in ``[lo, hi)`` not killed by a column in ``[lo, hi)``."""
        hi = len(self.R) if hi is None else hi
        return [j for j in range(lo, hi)
                if not self.R[j] and not (j in self.low_to_col and lo <= self.low_to_col[j] < hi)]

    def coordinates(self, cycle: Chain, basis: Sequence[int]) -> List:
        """Coordinates of a cycle in the homology basis ``{V_j : j in basis}``.

        The lowest entry of the running remainder is either the low of a
        boundary (subtract it) or a basis cell (record and subtract ``V_j``).
        """
        F = self.field
        where = {j: k for k, j in enumerate(basis)}
        coeffs = [F.zero] * len(basis)
        c = dict(cycle)
        while c:
            l = _low(c)
            if l in self.low_to_col:
                col = self.R[self.low_to_col[l]]
                _axpy(c, -(c[l] / col[l]), col)
            elif l in where and not self.R[l]:
                a = c[l] / self.V[l][l]
                coeffs[where[l]] = coeffs[where[l]] + a
                _axpy(c, -a, self.V[l])
            else:
                raise ValueError("chain is not a cycle in the reduced complex")
        return coeffs


def reduce_columns(columns: Sequence[Dict[int, int]], dims: Sequence[int], field: Field = QQ) -> Reduction:
    """Standard persistence reduction of a strictly upper triangular boundary matrix."""
    R: List[Chain] = []
    V: List[Chain] = []
    low_to_col: Dict[int, int] = {}
    for j, col in enumerate(columns):
        if any(i >= j for i in col):
            raise ValueError(f"column {j} is not strictly upper triangular: the order is not good")
        r = {i: field(v) for i, v in col.items() if v}
        r = {i: v for i, v in r.items() if v != 0}
        v = {j: field.one}
        while r:
            l = _low(r)
            k = low_to_col.get(l)
            if k is None:
                low_to_col[l] = j
                break
            c = -(r[l] / R[k][l])
            _axpy(r, c, R[k])
            _axpy(v, c, V[k])
        R.append(r)
        V.append(v)
    return Reduction(field, list(dims), R, V, low_to_col)


@dataclass
class HomologyData:
    """Betti numbers of ``Y1``, ``Y2`` and ``Ȳ`` with the maps ``A_r``, ``B_r``.

    ``A[r]`` has one column per basis class of ``H_r(Y1)`` holding its
    coordinates in ``H_r(Ȳ)``; ``B[r]`` is the same for ``Y2``. The bases of
    ``H_r(Y1)`` and ``H_r(Y2)`` correspond under the identification of the two
    copies of the fiber.
    """

    field: Field
    betti_y1: List[int]
    betti_y2: List[int]
    betti_y: List[int]
    A: Dict[int, Matrix]
    B: Dict[int, Matrix]
    basis_y1: Dict[int, List[int]] = dc_field(default_factory=dict)
    basis_y2: Dict[int, List[int]] = dc_field(default_factory=dict)
    basis_y: Dict[int, List[int]] = dc_field(default_factory=dict)
    reduction: Optional[Reduction] = dc_field(default=None, repr=False)

    def pair(self, r: int) -> Tuple[Matrix, Matrix]:
        if r in self.A:
            return self.A[r], self.B[r]
        return Matrix.zeros(0, 0, self.field), Matrix.zeros(0, 0, self.field)


def _by_dim(cells: Sequence[int], dims: Sequence[int]) -> Dict[int, List[int]]:
    out: Dict[int, List[int]] = {}
    for j in cells:
        out.setdefault(dims[j], []).append(j)
    return out


def _counts(by_dim: Dict[int, List[int]], top: int) -> List[int]:
    return [len(by_dim.get(r, [])) for r in range(top + 1)]


def reduce_boundary(cut: CutComplex, field: Field = QQ) -> Reduction:
    if not cut.is_good_order():
        raise ValueError("cut complex is not in a good order")
    return reduce_columns(cut.boundary, cut.dims(), field)


def inclusion_matrices(cut: CutComplex, red: Reduction, r: int) -> Tuple[Matrix, Matrix]:
    data = _homology_from_reduction(cut, red)
    return data.pair(r)


def cut_homology(cut: CutComplex, field: Field = QQ) -> HomologyData:
    return _homology_from_reduction(cut, reduce_boundary(cut, field))


def _homology_from_reduction(cut: CutComplex, red: Reduction) -> HomologyData:
    F = red.field
    dims = red.dims
    top = max(dims, default=-1)
    b1 = _by_dim(red.essential(*cut.y1_range), dims)
    b2 = _by_dim(red.essential(*cut.y2_range), dims)
    by = _by_dim(red.essential(), dims)
    A: Dict[int, Matrix] = {}
    B: Dict[int, Matrix] = {}
    off = cut.y2_range[0] - cut.y1_range[0]
    for r in range(top + 1):
        rows = by.get(r, [])
        c1, c2 = b1.get(r, []), b2.get(r, [])
        if [j + off for j in c1] != c2:
            raise AssertionError("the two copies of the fiber reduced differently")
        A[r] = _coordinate_matrix(red, [red.V[j] for j in c1], rows, F)
        B[r] = _coordinate_matrix(red, [red.V[j] for j in c2], rows, F)
    return HomologyData(F, _counts(b1, top), _counts(b2, top), _counts(by, top), A, B, b1, b2, by, red)


def _coordinate_matrix(red: Reduction, cycles: List[Chain], basis: List[int], F: Field) -> Matrix:
    cols = [red.coordinates(z, basis) for z in cycles]
    if not cols:
        return Matrix.zeros(len(basis), 0, F)
    return Matrix.from_columns(cols, len(basis), F)


def simplicial_boundary_columns(X: SimplicialComplex) -> Tuple[List[Dict[int, int]], List[int]]:
    simplices = X.simplices  # sorted by (dimension, vertices): a good order
    index = {s: i for i, s in enumerate(simplices)}
    cols = []
    for s in simplices:
        cols.append({index[t]: e for e, t in X.faces(s)})
    return cols, [len(s) - 1 for s in simplices]


def betti(X: SimplicialComplex, field: Field = QQ) -> List[int]:
    """Simplicial Betti numbers ``β_0 .. β_dim`` over ``field``."""
    cols, dims = simplicial_boundary_columns(X)
    red = reduce_columns(cols, dims, field)
    return _counts(_by_dim(red.essential(), dims), X.dimension)
