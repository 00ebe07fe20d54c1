"""Linear relations ``R ⊆ V1 × V2`` and the definition-based regularization.

A relation is stored as a :class:`Subspace` of ``field^(dim_src + dim_tgt)``
whose vectors are pairs ``(v1; v2)``. :func:`regularize` computes the
invertible part of an endorelation straight from its definition (bi-infinite
chains, eventually-null chains) and serves as the oracle for the cospan pair
reduction in :mod:`monodromy.reduce`.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import List, Sequence

from .linalg import QQ, Field, Matrix, Subspace, complement_basis, kernel_vectors, quotient_map, solve
from .linalg.subspace import subspace_intersect, subspace_sum


class RegularizationError(RuntimeError):
    """The regular part failed to be the graph of an isomorphism (a bug, not bad input)."""


class LinearRelation:
    __slots__ = ("dim_src", "dim_tgt", "span")

    def __init__(self, dim_src: int, dim_tgt: int, span: Subspace):
        if span.ambient_dim != dim_src + dim_tgt:
            raise ValueError("span ambient dimension must be dim_src + dim_tgt")
        self.dim_src = dim_src
        self.dim_tgt = dim_tgt
        self.span = span

    @classmethod
    def from_pairs(cls, dim_src: int, dim_tgt: int, pairs: Sequence[Sequence], field: Field = QQ):
        return cls(dim_src, dim_tgt, Subspace(dim_src + dim_tgt, [list(p) for p in pairs], field))

    @property
    def field(self) -> Field:
        return self.span.field

    @property
    def dim(self) -> int:
        return self.span.dim

    def pairs(self):
        """Basis pairs ``(v1, v2)`` of the relation."""
        return [(v[:self.dim_src], v[self.dim_src:]) for v in self.span.vectors()]

    def relates(self, v1: Sequence, v2: Sequence) -> bool:
        return self.span.contains(list(v1) + list(v2))

    def __eq__(self, other) -> bool:
        if not isinstance(other, LinearRelation):
            return NotImplemented
        return (self.dim_src, self.dim_tgt) == (other.dim_src, other.dim_tgt) and self.span == other.span

    def __hash__(self) -> int:
        return hash((self.dim_src, self.dim_tgt, self.span))

    def __repr__(self) -> str:
        return f"LinearRelation({self.dim_src} ~> {self.dim_tgt}, dim={self.dim})"


# -- constructors --------------------------------------------------------------

def from_graph(f: Matrix) -> LinearRelation:
    """Graph of ``f: field^n -> field^m``."""
    n = f.cols
    top = Matrix.identity(n, f.field)
    return LinearRelation(n, f.rows, Subspace.from_matrix_columns(top.vstack(f)))


def from_cospan(alpha: Matrix, beta: Matrix) -> LinearRelation:
    """``{(v1, v2) | alpha v1 = beta v2}``."""
    if alpha.rows != beta.rows:
        raise ValueError(f"cospan legs land in different spaces: {alpha.rows} vs {beta.rows}")
    block = alpha.hstack(-beta)
    return LinearRelation(alpha.cols, beta.cols, Subspace(alpha.cols + beta.cols, kernel_vectors(block), alpha.field))


def from_span(a: Matrix, b: Matrix) -> LinearRelation:
    """``{(a u, b u)}``."""
    if a.cols != b.cols:
        raise ValueError(f"span legs start in different spaces: {a.cols} vs {b.cols}")
    return LinearRelation(a.rows, b.rows, Subspace.from_matrix_columns(a.vstack(b)))


def diagonal(n: int, field: Field = QQ) -> LinearRelation:
    return from_graph(Matrix.identity(n, field))


# -- operations --------------------------------------------------------------------

def dagger(R: LinearRelation) -> LinearRelation:
    return LinearRelation(R.dim_tgt, R.dim_src,
                          Subspace(R.dim_src + R.dim_tgt, [v2 + v1 for v1, v2 in R.pairs()], R.field))


def compose(R1: LinearRelation, R2: LinearRelation) -> LinearRelation:
    """``R2 · R1``: ``v1 ~ v3`` iff some ``v2`` has ``v1 R1 v2`` and ``v2 R2 v3``."""
    if R1.dim_tgt != R2.dim_src:
        raise ValueError(f"cannot compose {R1} then {R2}")
    field = R1.field
    p1 = R1.pairs()
    p2 = R2.pairs()
    k1, k2 = len(p1), len(p2)
    mid = R1.dim_tgt
    if k1 + k2 == 0:
        return LinearRelation(R1.dim_src, R2.dim_tgt, Subspace.zero(R1.dim_src + R2.dim_tgt, field))
    # coefficients (a, b) with sum a_i y_i == sum b_j x'_j
    cols = [p[1] for p in p1] + [[-x for x in p[0]] for p in p2]
    M = Matrix.from_columns(cols, mid, field)
    vecs = []
    for k in kernel_vectors(M):
        a, b = k[:k1], k[k1:]
        v1 = _combine([p[0] for p in p1], a, R1.dim_src, field)
        v3 = _combine([p[1] for p in p2], b, R2.dim_tgt, field)
        vecs.append(v1 + v3)
    return LinearRelation(R1.dim_src, R2.dim_tgt, Subspace(R1.dim_src + R2.dim_tgt, vecs, field))


def compose_all(relations: Sequence[LinearRelation]) -> LinearRelation:
    """Compose in application order: ``relations[-1] · ... · relations[0]``."""
    out = relations[0]
    for R in relations[1:]:
        out = compose(out, R)
    return out


def _combine(vectors, coeffs, n, field):
    out = [field.zero] * n
    for v, c in zip(vectors, coeffs):
        if c != 0:
            out = [o + c * x for o, x in zip(out, v)]
    return out


def direct_sum(R1: LinearRelation, R2: LinearRelation) -> LinearRelation:
    field = R1.field
    z = field.zero
    vecs = []
    for v1, v2 in R1.pairs():
        vecs.append(v1 + [z] * R2.dim_src + v2 + [z] * R2.dim_tgt)
    for v1, v2 in R2.pairs():
        vecs.append([z] * R1.dim_src + v1 + [z] * R1.dim_tgt + v2)
    src, tgt = R1.dim_src + R2.dim_src, R1.dim_tgt + R2.dim_tgt
    return LinearRelation(src, tgt, Subspace(src + tgt, vecs, field))


def dom(R: LinearRelation) -> Subspace:
    return Subspace(R.dim_src, [v1 for v1, _ in R.pairs()], R.field)


def img(R: LinearRelation) -> Subspace:
    return Subspace(R.dim_tgt, [v2 for _, v2 in R.pairs()], R.field)


def ker(R: LinearRelation) -> Subspace:
    """``{v | v R 0}``."""
    z = R.field.zero
    slot = Subspace(R.dim_src + R.dim_tgt,
                    [[R.field.one if i == j else z for i in range(R.dim_src + R.dim_tgt)]
                     for j in range(R.dim_src)], R.field)
    inter = subspace_intersect(R.span, slot)
    return Subspace(R.dim_src, [v[:R.dim_src] for v in inter.vectors()], R.field)


def mul(R: LinearRelation) -> Subspace:
    """``{w | 0 R w}``."""
    return ker(dagger(R))


def preimage(R: LinearRelation, S: Subspace) -> Subspace:
    """``{v | v R w for some w in S}``."""
    return _pull(R, S, source_side=False)


def image(R: LinearRelation, S: Subspace) -> Subspace:
    """``{w | v R w for some v in S}``."""
    return _pull(R, S, source_side=True)


def _pull(R: LinearRelation, S: Subspace, source_side: bool) -> Subspace:
    # With the basis pairs (p_i, q_i) of R as the columns of P and Q, the pairs
    # whose constrained leg lies in S are the combinations c with N (leg) c = 0,
    # N being any matrix whose kernel is S.
    field = R.field
    n_src = R.dim_src
    B = R.span.basis
    k = B.cols
    P, Q = B.block(0, n_src, 0, k), B.block(n_src, B.rows, 0, k)
    constrained, free = (P, Q) if source_side else (Q, P)
    N = quotient_map(S.ambient_dim, S)
    if N.rows == 0:
        return Subspace.from_matrix_columns(free)
    return Subspace(free.rows, [free.apply(c) for c in kernel_vectors(N @ constrained)], field)


def restrict_target(R: LinearRelation, S: Subspace) -> LinearRelation:
    full = Subspace.full(R.dim_src, R.field)
    return LinearRelation(R.dim_src, R.dim_tgt, subspace_intersect(R.span, _product(full, S)))


def restrict_source(R: LinearRelation, S: Subspace) -> LinearRelation:
    full = Subspace.full(R.dim_tgt, R.field)
    return LinearRelation(R.dim_src, R.dim_tgt, subspace_intersect(R.span, _product(S, full)))


def _product(S1: Subspace, S2: Subspace) -> Subspace:
    z = S1.field.zero
    vecs = [v + [z] * S2.ambient_dim for v in S1.vectors()]
    vecs += [[z] * S1.ambient_dim + v for v in S2.vectors()]
    return Subspace(S1.ambient_dim + S2.ambient_dim, vecs, S1.field)


def power(R: LinearRelation, n: int) -> LinearRelation:
    if R.dim_src != R.dim_tgt:
        raise ValueError("powers need an endorelation")
    out = diagonal(R.dim_src, R.field)
    for _ in range(n):
        out = compose(out, R)
    return out


def conjugate(R: LinearRelation, omega: Matrix) -> LinearRelation:
    """``R(omega) · R · R(omega)^{-1}`` for an invertible ``omega``."""
    from .linalg import inverse

    return compose_all([from_graph(inverse(omega)), R, from_graph(omega)])


# -- regularization ------------------------------------------------------------------

def _stabilize(step, start: Subspace) -> tuple:
    """Iterate ``step`` from ``start`` until a fixed point; returns (limit, chain)."""
    chain = [start]
    while True:
        nxt = step(chain[-1])
        if nxt == chain[-1]:
            return nxt, chain
        chain.append(nxt)


@dataclass(frozen=True)
class RegularPart:
    dim_reg: int
    T: Matrix
    witness_D: Subspace
    witness_Kplus: Subspace
    witness_Kminus: Subspace

    @property
    def field(self) -> Field:
        return self.T.field


def regular_subspaces(R: LinearRelation):
    """Return ``(D, K_plus, K_minus)`` for an endorelation.

    ``D`` holds the vectors sitting on bi-infinite chains: the intersection
    of the limits of ``dom(R^n)`` (descending) and ``img(R^n)`` (descending).
    ``K_plus`` is the union of ``ker(R^n)`` and ``K_minus`` the union of
    ``mul(R^n)``. Each chain is followed until it stops moving; in finite
    dimension that happens within ``dim V`` steps.
    """
    if R.dim_src != R.dim_tgt:
        raise ValueError("regularization needs an endorelation")
    n, field = R.dim_src, R.field
    full = Subspace.full(n, field)
    zero = Subspace.zero(n, field)
    fwd, _ = _stabilize(lambda S: preimage(R, S), full)
    bwd, _ = _stabilize(lambda S: image(R, S), full)
    kplus, _ = _stabilize(lambda S: preimage(R, S), zero)
    kminus, _ = _stabilize(lambda S: image(R, S), zero)
    return subspace_intersect(fwd, bwd), kplus, kminus


def regularize(R: LinearRelation) -> RegularPart:
    """Regular part of an endorelation and the isomorphism ``T`` with ``R_reg = graph(T)``."""
    field = R.field
    D, kplus, kminus = regular_subspaces(R)
    N = subspace_intersect(D, subspace_sum(kplus, kminus))
    extra = complement_basis(N, D)
    d = len(extra)
    if d == 0:
        return RegularPart(0, Matrix.zeros(0, 0, field), D, kplus, kminus)
    # coordinates on D adapted to D = N (+) span(extra); pi keeps the extra coordinates
    P = Matrix.from_columns(N.vectors() + extra, R.dim_src, field)
    nN = N.dim

    def pi(v):
        c = solve(P, v)
        if c is None:
            raise RegularizationError("vector outside D")
        return c[nN:]

    RD = LinearRelation(R.dim_src, R.dim_tgt, subspace_intersect(R.span, _product(D, D)))
    xs, ys = [], []
    for v1, v2 in RD.pairs():
        xs.append(pi(v1))
        ys.append(pi(v2))
    T = _graph_matrix(xs, ys, d, field)
    return RegularPart(d, T, D, kplus, kminus)


def _graph_matrix(xs: List[list], ys: List[list], d: int, field: Field) -> Matrix:
    """The unique ``T`` with ``T x = y`` on every spanning pair; checks it is an isomorphism."""
    X = Matrix.from_columns(xs, d, field) if xs else Matrix.zeros(d, 0, field)
    Y = Matrix.from_columns(ys, d, field) if ys else Matrix.zeros(d, 0, field)
    if X.rank() != d:
        raise RegularizationError("regular part is not defined on all of V_reg")
    # T^T solves X^T T^T = Y^T row by row
    rows = []
    XT = X.T
    for i in range(d):
        sol = solve(XT, Y.row(i))
        if sol is None:
            raise RegularizationError("regular part is not the graph of a map")
        rows.append(sol)
    T = Matrix(field, d, d, rows)
    if T @ X != Y:
        raise RegularizationError("regular part is multivalued")
    if T.rank() != d:
        raise RegularizationError("regular part has a kernel")
    return T
