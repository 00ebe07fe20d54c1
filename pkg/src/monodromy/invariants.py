"""End-to-end pipelines and the invariants derived from Jordan cells.

``jordan_cells_of_map`` chains cut complex -> homology -> pair reduction ->
Jordan cells for every dimension. ``rep_jordan`` does the same for a cyclic
zigzag representation ``V1 -α1-> V2 <-β1- V3 -α2-> ... <-βm- V1``. The remaining
functions turn cells and Betti numbers into Novikov Betti numbers, twisted
(local system) Betti numbers, Betti numbers of the infinite cyclic cover and
the Alexander polynomial.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from typing import Dict, List, Optional, Sequence

from .complexes import CircleMap, IrregularAngleError, build_cut, to_turns, validate_regular_angle
from .homology import cut_homology
from .jordan import JordanCell, MonodromyClass, jordan_cells
from .linalg import QQ, Field, Matrix, Polynomial, poly_product
from .reduce import CospanPair, monodromy_matrix, reduce
from .relations import compose_all, dagger, from_graph, regularize

METHODS = ("reduce", "echelon", "oracle")


@dataclass
class JordanCellSet:
    """Monodromy classes per dimension, with a short description of their origin."""

    field: Field
    classes: Dict[int, MonodromyClass]
    source: str = ""
    details: Dict[int, dict] = dc_field(default_factory=dict)

    def cells(self, r: int) -> List[JordanCell]:
        cls = self.classes.get(r)
        return list(cls.jordan_cells) if cls is not None else []

    def get(self, r: int) -> MonodromyClass:
        return self.classes.get(r) or MonodromyClass.empty(self.field)

    def count_root(self, r: int, x) -> int:
        """Number of cells ``(p, k)`` in degree ``r`` with ``p(x) = 0`` (cells, not ``k``)."""
        if r < 0:
            return 0
        return sum(1 for c in self.cells(r) if c.has_root(x))

    def render(self, r: int) -> str:
        return " ".join(c.render() for c in self.cells(r))

    @property
    def dims(self) -> List[int]:
        return sorted(self.classes)


def _class_of_pair(A: Matrix, B: Matrix, method: str) -> tuple:
    if method == "oracle":
        from .relations import from_cospan

        T = regularize(from_cospan(A, B)).T
        return T, {}
    p = reduce(CospanPair(A, B), "echelon" if method == "echelon" else "compress")
    return monodromy_matrix(p), {"steps": [m.name for m in p.trace]}


def jordan_cells_of_map(f: CircleMap, theta=None, r_max: Optional[int] = None, field: Field = QQ,
                        method: str = "reduce") -> JordanCellSet:
    """Jordan cells of the ``r``-monodromy of ``f`` for ``r = 0 .. r_max`` (default ``dim X``)."""
    from .complexes import auto_theta

    if method not in METHODS:
        raise ValueError(f"unknown method {method!r}; expected one of {METHODS}")
    theta = auto_theta(f) if theta is None else to_turns(theta)
    if not validate_regular_angle(f, theta):
        raise IrregularAngleError(f"θ = {theta} is a vertex value")
    r_max = f.complex.dimension if r_max is None else r_max
    cut = build_cut(f, theta)
    hom = cut_homology(cut, field)
    classes: Dict[int, MonodromyClass] = {}
    details: Dict[int, dict] = {}
    for r in range(r_max + 1):
        A, B = hom.pair(r)
        if A.cols == 0:
            T = Matrix.zeros(0, 0, field)
            info = {}
        else:
            T, info = _class_of_pair(A, B, method)
        classes[r] = jordan_cells(T)
        details[r] = dict(info, pair_shape=list(A.shape), monodromy_dim=T.rows)
    return JordanCellSet(field, classes, f"map at θ = {theta}", details)


# -- representations ---------------------------------------------------------------

@dataclass
class Representation:
    """``α_i: V_{2i-1} -> V_{2i}`` and ``β_i: V_{2i+1} -> V_{2i}`` with ``V_{2m+1} = V_1``."""

    dims: List[int]
    alpha: List[Matrix]
    beta: List[Matrix]

    def __post_init__(self):
        m = self.m
        if len(self.dims) != 2 * m or len(self.alpha) != m or len(self.beta) != m:
            raise ValueError("a G_2m representation needs 2m spaces, m alphas and m betas")
        for i in range(m):
            src, mid, nxt = self.dims[2 * i], self.dims[2 * i + 1], self.dims[(2 * i + 2) % (2 * m)]
            a, b = self.alpha[i], self.beta[i]
            if a.shape != (mid, src):
                raise ValueError(f"alpha_{i + 1} should be {mid}x{src}, got {a.rows}x{a.cols}")
            if b.shape != (mid, nxt):
                raise ValueError(f"beta_{i + 1} should be {mid}x{nxt}, got {b.rows}x{b.cols}")

    @property
    def m(self) -> int:
        return len(self.alpha)

    @property
    def field(self) -> Field:
        return self.alpha[0].field if self.alpha else QQ

    @classmethod
    def cospan(cls, alpha: Matrix, beta: Matrix) -> "Representation":
        return cls([alpha.cols, alpha.rows], [alpha], [beta])

    def relation(self):
        """``R†(β_m) · R(α_m) ··· R†(β_1) · R(α_1)``: an endorelation of ``V_1``."""
        parts = []
        for a, b in zip(self.alpha, self.beta):
            parts += [from_graph(a), dagger(from_graph(b))]
        return compose_all(parts)

    def direct_sum(self, other: "Representation") -> "Representation":
        if self.m != other.m:
            raise ValueError("direct sum needs representations of the same quiver")
        F = self.field
        return Representation([a + b for a, b in zip(self.dims, other.dims)],
                              [Matrix.diagonal_blocks([x, y], F) for x, y in zip(self.alpha, other.alpha)],
                              [Matrix.diagonal_blocks([x, y], F) for x, y in zip(self.beta, other.beta)])

    def rotate(self) -> "Representation":
        """Start the cycle at ``V_3`` instead of ``V_1``."""
        if self.m == 1:
            return self
        return Representation(self.dims[2:] + self.dims[:2], self.alpha[1:] + self.alpha[:1],
                              self.beta[1:] + self.beta[:1])


def cell_representation(lam, k: int, m: int = 1, field: Field = QQ) -> Representation:
    """All maps identity on ``field^k`` except ``α_1``, a Jordan block ``T(λ; k)``."""
    from .jordan import jordan_block

    I = Matrix.identity(k, field)
    alpha = [jordan_block(lam, k, field)] + [I] * (m - 1)
    return Representation([k] * (2 * m), alpha, [I] * m)


def rep_jordan(rho: Representation, method: str = "auto") -> MonodromyClass:
    """Jordan cells of the regular part of ``R(ρ)``.

    ``method``: ``"oracle"`` regularizes the composite relation directly;
    ``"reduce"``/``"echelon"`` run the pair reduction and need ``m = 1``;
    ``"auto"`` reduces when ``m = 1`` and uses the oracle otherwise.
    """
    if method == "auto":
        method = "reduce" if rho.m == 1 else "oracle"
    F = rho.field
    if method in ("reduce", "echelon"):
        if rho.m != 1:
            raise ValueError("pair reduction needs a single cospan (m = 1)")
        A, B = rho.alpha[0], rho.beta[0]
        if A.cols == 0:
            return MonodromyClass.empty(F)
        T, _ = _class_of_pair(A, B, method)
        return jordan_cells(T)
    if method != "oracle":
        raise ValueError(f"unknown method {method!r}")
    if rho.dims[0] == 0:
        return MonodromyClass.empty(F)
    return jordan_cells(regularize(rho.relation()).T)


# -- derived invariants ----------------------------------------------------------------

def novikov_betti(betti: Sequence[int], cells: JordanCellSet) -> List[int]:
    """``β^N_r = β_r - #J_r(1) - #J_{r-1}(1)``, counting cells."""
    one = cells.field.one
    out = []
    for r, b in enumerate(betti):
        v = b - cells.count_root(r, one) - cells.count_root(r - 1, one)
        if v < 0:
            raise ValueError(f"negative Novikov Betti number in degree {r}: inputs are inconsistent")
        out.append(v)
    return out


def local_betti(novikov: Sequence[int], cells: JordanCellSet, u) -> List[int]:
    """``β^N_r + #J_r(1/u) + #J_{r-1}(u)``: Betti numbers with coefficients twisted by ``u``."""
    F = cells.field
    u = F(u)
    if u == 0:
        raise ValueError("u must be nonzero")
    inv = F.one / u
    return [b + cells.count_root(r, inv) + cells.count_root(r - 1, u) for r, b in enumerate(novikov)]


@dataclass(frozen=True)
class FiberBetti:
    """Betti numbers of the infinite cyclic cover, or the first degree where
    the Novikov Betti number is nonzero (the cover's homology is then not of
    finite dimension and the formula does not apply)."""

    values: Optional[List[int]]
    undefined_at: Optional[int] = None

    @property
    def defined(self) -> bool:
        return self.values is not None

    def render(self) -> str:
        if self.defined:
            return " ".join(str(v) for v in self.values)
        return f"undefined (betaN_{self.undefined_at} != 0)"


def fiber_betti(cells: JordanCellSet, novikov: Sequence[int]) -> FiberBetti:
    """``Σ k · deg p`` over the cells of each degree, when all Novikov Betti numbers vanish."""
    for r, b in enumerate(novikov):
        if b != 0:
            return FiberBetti(None, r)
    return FiberBetti([sum(c.k * c.factor.degree for c in cells.cells(r)) for r in range(len(novikov))])


def alexander_poly(cls1: MonodromyClass) -> Polynomial:
    """Product of the elementary divisors ``p^k`` of the degree-one monodromy."""
    return poly_product([c.elementary_divisor() for c in cls1.jordan_cells], cls1.field)


def turns(x) -> Fraction:
    return to_turns(x)
