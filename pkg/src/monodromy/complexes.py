"""Simplicial complexes with a simplicial circle-valued map, and the cut complex.

Angles are exact rationals measured in turns (one turn = 2π), taken modulo 1.
The map is linear on each simplex after lifting its vertex angles to the
real line; the lift is unique because every simplex is required to sit in
an open arc shorter than half a turn.

Cutting at a regular angle ``θ`` produces a cell complex ``Ȳ`` whose cells
come in five kinds:

``uncut``
    a simplex that misses the level ``θ``;
``plus`` / ``minus``
    the parts of a crossing simplex above / below the level (in the lift of
    that simplex);
``copy1`` / ``copy2``
    the two copies of the slice ``σ ∩ f^-1(θ)``. ``copy1`` bounds the ``plus``
    parts (the start of the fundamental domain), ``copy2`` bounds the
    ``minus`` parts (its end). They form the subcomplexes ``Y1`` and ``Y2``.

With ``∂σ = Σ ε(σ,τ) τ`` the boundary of the cut cells is::

    ∂ σ₊     = (∂σ)₊ + σ'(1)
    ∂ σ₋     = (∂σ)₋ - σ'(2)
    ∂ σ'(i)  = -(∂σ)'(i)

where ``(∂σ)₊`` replaces every crossing face ``τ`` by ``τ₊``, keeps faces lying
entirely above the level and drops those lying below (symmetrically for
``(∂σ)₋``), and ``(∂σ)'`` keeps only crossing faces.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from functools import cached_property
from itertools import combinations
from typing import Dict, Iterable, List, Sequence, Tuple

from .linalg import QQ, Field, Matrix

Simplex = Tuple[int, ...]
HALF = Fraction(1, 2)


class IrregularAngleError(ValueError):
    """``θ`` equals the value of the map at some vertex."""


class InvalidMapError(ValueError):
    """The vertex angles do not define a simplicial circle-valued map we can handle."""


def _faces_with_signs(s: Simplex) -> List[Tuple[int, Simplex]]:
    if len(s) <= 1:
        return []
    return [((-1) ** i, s[:i] + s[i + 1:]) for i in range(len(s))]


class SimplicialComplex:
    """Finite abstract simplicial complex on vertices ``0 .. vertex_count - 1``.

    Simplices are sorted vertex tuples; the orientation of a simplex is the
    one given by the order of its vertices.
    """

    def __init__(self, vertex_count: int, simplices: Iterable[Sequence[int]] = (), close: bool = True):
        self.vertex_count = vertex_count
        found = set((v,) for v in range(vertex_count))
        for s in simplices:
            t = tuple(sorted(s))
            if len(set(t)) != len(t):
                raise ValueError(f"repeated vertex in simplex {list(s)}")
            if not t:
                continue
            if t[0] < 0 or t[-1] >= vertex_count:
                raise ValueError(f"simplex {list(s)} uses a vertex outside 0..{vertex_count - 1}")
            if close:
                for k in range(1, len(t) + 1):
                    found.update(combinations(t, k))
            else:
                found.add(t)
        if not close:
            for s in found:
                for _, f in _faces_with_signs(s):
                    if f not in found:
                        raise ValueError(f"face {list(f)} of {list(s)} is missing")
        self._simplices = sorted(found, key=lambda s: (len(s), s))
        self._index = {s: i for i, s in enumerate(self._simplices)}

    @property
    def simplices(self) -> List[Simplex]:
        return list(self._simplices)

    def __contains__(self, s) -> bool:
        return tuple(s) in self._index

    def __len__(self) -> int:
        return len(self._simplices)

    @property
    def dimension(self) -> int:
        return max((len(s) - 1 for s in self._simplices), default=-1)

    def of_dim(self, k: int) -> List[Simplex]:
        return [s for s in self._simplices if len(s) == k + 1]

    def counts(self) -> List[int]:
        return [len(self.of_dim(k)) for k in range(self.dimension + 1)]

    def euler_characteristic(self) -> int:
        return sum((-1) ** k * c for k, c in enumerate(self.counts()))

    @staticmethod
    def faces(s: Simplex) -> List[Tuple[int, Simplex]]:
        """Codimension-one faces with incidence signs ``(-1)^i``."""
        return _faces_with_signs(s)

    def __repr__(self) -> str:
        return f"SimplicialComplex(vertices={self.vertex_count}, counts={self.counts()})"

    def disjoint_union(self, other: "SimplicialComplex") -> "SimplicialComplex":
        n = self.vertex_count
        return SimplicialComplex(n + other.vertex_count,
                                 self._simplices + [tuple(v + n for v in s) for s in other._simplices])


def to_turns(x) -> Fraction:
    """Normalize an angle in turns to ``[0, 1)``."""
    return Fraction(x) % 1


class CircleMap:
    """Vertex angles (in turns) defining a simplicial map ``X -> S^1``."""

    def __init__(self, complex: SimplicialComplex, angles: Sequence):
        if len(angles) != complex.vertex_count:
            raise InvalidMapError(f"expected {complex.vertex_count} angles, got {len(angles)}")
        self.complex = complex
        self.angles: Tuple[Fraction, ...] = tuple(to_turns(a) for a in angles)
        self._lifts: Dict[Simplex, Dict[int, Fraction]] = {}
        for s in complex.simplices:
            self._lifts[s] = self._lift(s)

    def _lift(self, s: Simplex) -> Dict[int, Fraction]:
        vals = [self.angles[v] for v in s]
        if len(set(vals)) != len(vals):
            raise InvalidMapError(f"simplex {list(s)} has repeated vertex angles; perturb or subdivide")
        if len(s) == 1:
            return {s[0]: vals[0]}
        srt = sorted(vals)
        gaps = [(srt[(i + 1) % len(srt)] - srt[i]) % 1 for i in range(len(srt))]
        i = max(range(len(gaps)), key=lambda j: (gaps[j], -j))
        lo = srt[(i + 1) % len(srt)]
        lifted = {v: (a if a >= lo else a + 1) for v, a in zip(s, vals)}
        if max(lifted.values()) - lo >= HALF:
            raise InvalidMapError(f"simplex {list(s)} spans half a turn or more; subdivide it")
        return lifted

    def lift(self, s: Simplex) -> Dict[int, Fraction]:
        """Lifted vertex values of ``s``: a window ``[lo, lo + 1/2)`` with ``lo`` in ``[0, 1)``."""
        return dict(self._lifts[tuple(s)])

    def theta_in_window(self, s: Simplex, theta) -> Fraction:
        lo = min(self._lifts[tuple(s)].values())
        t = to_turns(theta)
        return t if t >= lo else t + 1

    def __repr__(self) -> str:
        return f"CircleMap({self.complex!r}, angles={[str(a) for a in self.angles]})"


def validate_regular_angle(f: CircleMap, theta) -> bool:
    t = to_turns(theta)
    return all(a != t for a in f.angles)


def auto_theta(f: CircleMap) -> Fraction:
    """Midpoint of the largest gap between vertex angles (first such gap on ties)."""
    vals = sorted(set(f.angles))
    if not vals:
        return Fraction(0)
    if len(vals) == 1:
        return to_turns(vals[0] + HALF)
    best = None
    for i, a in enumerate(vals):
        b = vals[(i + 1) % len(vals)]
        gap = (b - a) % 1
        if best is None or gap > best[0]:
            best = (gap, a)
    return to_turns(best[1] + best[0] / 2)


def _position(f: CircleMap, window: Simplex, face: Simplex, theta) -> str:
    """Where ``face`` sits relative to the level, read in the lift of ``window``."""
    lifted = f._lifts[window]
    t = f.theta_in_window(window, theta)
    vals = [lifted[v] for v in face]
    if min(vals) < t < max(vals):
        return "cross"
    return "above" if min(vals) > t else "below"


def classify(f: CircleMap, theta) -> Tuple[List[Simplex], List[Simplex]]:
    """Split the simplices into ``(crossing, non-crossing)``."""
    if not validate_regular_angle(f, theta):
        raise IrregularAngleError(f"θ = {to_turns(theta)} is a vertex value")
    crossing, rest = [], []
    for s in f.complex.simplices:
        (crossing if _position(f, s, s, theta) == "cross" else rest).append(s)
    return crossing, rest


KINDS = ("copy1", "copy2", "uncut", "plus", "minus")
_GROUP = {"copy1": 0, "copy2": 1, "uncut": 2, "plus": 2, "minus": 2}


@dataclass(frozen=True, order=True)
class CutCell:
    simplex: Simplex
    kind: str

    @property
    def dim(self) -> int:
        d = len(self.simplex) - 1
        return d - 1 if self.kind in ("copy1", "copy2") else d

    @property
    def group(self) -> int:
        return _GROUP[self.kind]

    def __str__(self) -> str:
        return f"{self.kind}{list(self.simplex)}"


def order_cells(cells: Sequence, faces: Dict, group=lambda c: 0) -> List:
    """A good order: every face before its cofaces and groups in increasing order.

    Among all orders satisfying the constraints this returns the one that is
    lexicographically smallest with respect to the input order, so an input
    that is already good comes back unchanged.

    ``faces[c]`` lists the cells in the boundary of ``c``; ``group(c)`` is
    ``0`` for ``Y1``, ``1`` for ``Y2`` and ``2`` for the rest.
    """
    pos = {c: i for i, c in enumerate(cells)}
    cofaces: Dict = {c: [] for c in cells}
    missing = {c: 0 for c in cells}
    for c in cells:
        for f in faces.get(c, ()):
            if f not in pos:
                raise ValueError(f"face {f} of {c} is not among the cells")
            if group(f) > group(c):
                raise ValueError(f"face {f} lies in a later group than its coface {c}")
            cofaces[f].append(c)
            missing[c] += 1
    out: List = []
    for g in sorted({group(c) for c in cells}):
        heap = [pos[c] for c in cells if group(c) == g and missing[c] == 0]
        heapq.heapify(heap)
        members = sum(1 for c in cells if group(c) == g)
        placed = 0
        while heap:
            c = cells[heapq.heappop(heap)]
            out.append(c)
            placed += 1
            for d in cofaces[c]:
                missing[d] -= 1
                if missing[d] == 0 and group(d) == g:
                    heapq.heappush(heap, pos[d])
        if placed != members:
            raise ValueError("cyclic face relation: no good order exists")
        # cofaces in later groups whose faces are now all placed wait for their group
    return out


@dataclass
class CutComplex:
    """The cut complex ``Ȳ`` in a good order.

    ``boundary[j]`` maps row indices to the incidence ``𝕀(cells[i], cells[j])``
    (entries ``±1``). ``Y1`` occupies ``y1_range`` and ``Y2`` ``y2_range``.
    """

    cells: List[CutCell]
    boundary: List[Dict[int, int]]
    y1_range: Tuple[int, int]
    y2_range: Tuple[int, int]
    theta: Fraction
    source: CircleMap = dc_field(repr=False)
    crossing: List[Simplex] = dc_field(default_factory=list, repr=False)
    uncut: List[Simplex] = dc_field(default_factory=list, repr=False)

    def __len__(self) -> int:
        return len(self.cells)

    @cached_property
    def index(self) -> Dict[CutCell, int]:
        return {c: i for i, c in enumerate(self.cells)}

    def incidence_matrix(self, field: Field = QQ) -> Matrix:
        n = len(self.cells)
        data = [[field.zero] * n for _ in range(n)]
        for j, col in enumerate(self.boundary):
            for i, v in col.items():
                data[i][j] = field(v)
        return Matrix(field, n, n, data)

    @property
    def incidence(self) -> Matrix:
        return self.incidence_matrix(QQ)

    def dims(self) -> List[int]:
        return [c.dim for c in self.cells]

    def euler_characteristic(self) -> int:
        return sum((-1) ** c.dim for c in self.cells)

    def fiber_euler_characteristic(self) -> int:
        return sum((-1) ** (len(s) - 2) for s in self.crossing)

    def is_upper_triangular(self) -> bool:
        return all(i < j for j, col in enumerate(self.boundary) for i in col)

    def boundary_squared_is_zero(self) -> bool:
        for j, col in enumerate(self.boundary):
            acc: Dict[int, int] = {}
            for i, v in col.items():
                for h, w in self.boundary[i].items():
                    acc[h] = acc.get(h, 0) + v * w
            if any(acc.values()):
                return False
        return True

    def is_good_order(self) -> bool:
        groups = [c.group for c in self.cells]
        return self.is_upper_triangular() and groups == sorted(groups)

    def has_block_form(self) -> bool:
        """``Y1`` and ``Y2`` only see themselves: no incidence crosses between them or
        from the rest into them."""
        a0, a1 = self.y1_range
        b0, b1 = self.y2_range
        for j, col in enumerate(self.boundary):
            for i in col:
                if a0 <= j < a1 and not (a0 <= i < a1):
                    return False
                if b0 <= j < b1 and not (b0 <= i < b1):
                    return False
        return True

    def census_ok(self) -> bool:
        return len(self.cells) == len(self.uncut) + 4 * len(self.crossing)

    def euler_ok(self) -> bool:
        return self.euler_characteristic() == (self.source.complex.euler_characteristic()
                                               + self.fiber_euler_characteristic())


def _cut_boundary(f: CircleMap, theta, cell: CutCell, crossing: set) -> List[Tuple[int, CutCell]]:
    s = cell.simplex
    out: List[Tuple[int, CutCell]] = []
    if cell.kind == "uncut":
        return [(e, CutCell(t, "uncut")) for e, t in _faces_with_signs(s)]
    if cell.kind in ("copy1", "copy2"):
        return [(-e, CutCell(t, cell.kind)) for e, t in _faces_with_signs(s) if t in crossing]
    keep = "above" if cell.kind == "plus" else "below"
    for e, t in _faces_with_signs(s):
        if t in crossing:
            out.append((e, CutCell(t, cell.kind)))
        elif _position(f, s, t, theta) == keep:
            out.append((e, CutCell(t, "uncut")))
    if cell.kind == "plus":
        out.append((1, CutCell(s, "copy1")))
    else:
        out.append((-1, CutCell(s, "copy2")))
    return out


def build_cut(f: CircleMap, theta) -> CutComplex:
    """Cut ``X`` along ``f^-1(θ)``; the cells come back in a good order."""
    theta = to_turns(theta)
    crossing, rest = classify(f, theta)
    cross_set = set(crossing)
    key = lambda s: (len(s), s)
    y1 = [CutCell(s, "copy1") for s in sorted(crossing, key=key)]
    y2 = [CutCell(s, "copy2") for s in sorted(crossing, key=key)]
    body = [CutCell(s, "uncut") for s in rest]
    for s in crossing:
        body += [CutCell(s, "plus"), CutCell(s, "minus")]
    body.sort(key=lambda c: (c.dim, c.simplex, KINDS.index(c.kind)))
    initial = y1 + y2 + body
    bnd = {c: _cut_boundary(f, theta, c, cross_set) for c in initial}
    ordered = order_cells(initial, {c: [t for _, t in b] for c, b in bnd.items()}, lambda c: c.group)
    index = {c: i for i, c in enumerate(ordered)}
    columns = []
    for c in ordered:
        col: Dict[int, int] = {}
        for e, t in bnd[c]:
            col[index[t]] = col.get(index[t], 0) + e
        columns.append({i: v for i, v in col.items() if v})
    n1 = len(y1)
    return CutComplex(ordered, columns, (0, n1), (n1, 2 * n1), theta, f, sorted(crossing, key=key),
                      sorted(rest, key=key))


def barycentric_subdivision(f: CircleMap) -> CircleMap:
    """Barycentric subdivision of ``(X, f)``.

    The new vertex of a simplex gets the average of its lifted vertex values,
    nudged by ``ε · dim`` with the smallest ``ε`` from a fixed list that keeps
    vertex values distinct on every new simplex.
    """
    X = f.complex
    simplices = X.simplices
    index = {s: i for i, s in enumerate(simplices)}
    avg = {}
    for s in simplices:
        lifted = f._lifts[s]
        avg[s] = sum(lifted.values(), Fraction(0)) / len(s)
    chains: List[Tuple[Simplex, ...]] = []
    top = [s for s in simplices if not any(set(s) < set(t) for t in simplices if len(t) == len(s) + 1)]

    def extend(chain):
        chains.append(chain)
        last = chain[-1]
        for _, t in _faces_with_signs(last):
            extend(chain + (t,))

    for s in top:
        extend((s,))
    new_simplices = sorted({tuple(sorted(index[c] for c in ch)) for ch in chains})
    slack = min((HALF - (max(f._lifts[s].values()) - min(f._lifts[s].values())) for s in simplices),
                default=HALF)
    for k in range(64):
        eps = Fraction(0) if k == 0 else slack / (4 * (X.dimension + 1) * (k + 1))
        vals = {s: avg[s] + eps * (len(s) - 1) for s in simplices}
        ok = all(len({vals[simplices[i]] for i in ns}) == len(ns) for ns in new_simplices)
        if ok:
            break
    else:  # pragma: no cover - the bad ε form a finite set
        raise InvalidMapError("could not choose distinct barycenter values")
    Y = SimplicialComplex(len(simplices), new_simplices)
    return CircleMap(Y, [vals[s] for s in simplices])


def fiber_complex_counts(cut: CutComplex) -> List[int]:
    """Cell counts of the fiber ``f^-1(θ)`` by dimension."""
    d = max((c.dim for c in cut.cells[slice(*cut.y1_range)]), default=-1)
    counts = [0] * (d + 1)
    for c in cut.cells[slice(*cut.y1_range)]:
        counts[c.dim] += 1
    return counts


def crossing_simplices(f: CircleMap, theta) -> List[Simplex]:
    return classify(f, theta)[0]


def regular_angles(f: CircleMap, count: int) -> List[Fraction]:
    """``count`` distinct regular angles: midpoints of the gaps between consecutive
    vertex values, largest gaps first (ties broken by position)."""
    vals = sorted(set(f.angles))
    if not vals:
        return [Fraction(k, count) for k in range(count)]
    gaps = []
    for i, a in enumerate(vals):
        b = vals[(i + 1) % len(vals)]
        gap = (b - a) % 1 or Fraction(1)
        gaps.append((-gap, i, to_turns(a + gap / 2)))
    gaps.sort()
    return [g[2] for g in gaps[:count]]
