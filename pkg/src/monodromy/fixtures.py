"""Bundled example complexes, maps and representations.

Geometric fixtures are built from three constructions:

* :func:`mapping_torus` glues ``K x [0, 1]`` (triangulated in ``layers``
  prism layers) along a simplicial automorphism ``φ``: the point ``(x, 1)``
  is identified with ``(φ(x), 0)``. With the time coordinate as circle map
  the monodromy is ``φ_*``.
* :func:`product_with_circle` is the same complex with ``φ = id`` but with
  the map pulled back from ``K``.
* :func:`double_cylinder` glues two simplicial mapping cylinders of
  ``g1, g2: F -> G`` along ``G`` and closes up with a product ``F x I``;
  cutting inside the product gives the cospan pair ``(g1_*, g2_*)``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Dict, List, Sequence, Tuple

from .complexes import CircleMap, SimplicialComplex, Simplex
from .invariants import Representation
from .jordan import JordanCell, MonodromyClass
from .linalg import QQ, Field, Matrix, Polynomial


# -- small complexes --------------------------------------------------------------

def cycle(n: int) -> SimplicialComplex:
    if n < 3:
        raise ValueError("a simplicial circle needs at least 3 vertices")
    return SimplicialComplex(n, [(i, (i + 1) % n) for i in range(n)])


def disjoint_cycles(sizes: Sequence[int]) -> Tuple[SimplicialComplex, List[List[int]]]:
    """Disjoint circles; returns the complex and the vertex lists of each circle in cyclic order."""
    edges, loops, off = [], [], 0
    for n in sizes:
        if n < 3:
            raise ValueError("a simplicial circle needs at least 3 vertices")
        vs = list(range(off, off + n))
        loops.append(vs)
        edges += [(vs[i], vs[(i + 1) % n]) for i in range(n)]
        off += n
    return SimplicialComplex(off, edges), loops


def rose(k: int, edges_per_loop: int = 3) -> Tuple[SimplicialComplex, List[List[int]]]:
    """Wedge of ``k`` circles at vertex 0; loop ``i`` is ``0 -> loops[i][1] -> ... -> 0``."""
    edges, loops, nxt = [], [], 1
    for _ in range(k):
        inner = list(range(nxt, nxt + edges_per_loop - 1))
        nxt += edges_per_loop - 1
        path = [0] + inner
        loops.append(path)
        edges += [(path[i], path[(i + 1) % len(path)]) for i in range(len(path))]
    return SimplicialComplex(nxt, edges), loops


def tetrahedron_boundary() -> SimplicialComplex:
    return SimplicialComplex(4, [(0, 1, 2), (0, 1, 3), (0, 2, 3), (1, 2, 3)])


# -- constructions ---------------------------------------------------------------

def _check_automorphism(K: SimplicialComplex, phi: Sequence[int]) -> None:
    if sorted(phi) != list(range(K.vertex_count)):
        raise ValueError("phi must permute the vertices")
    simplices = set(K.simplices)
    for s in simplices:
        if tuple(sorted(phi[v] for v in s)) not in simplices:
            raise ValueError(f"phi does not map simplex {list(s)} to a simplex")


def _prism(s: Simplex, bottom: Callable[[int], int], top: Callable[[int], int]) -> List[Tuple[int, ...]]:
    """Staircase triangulation of ``s x [0, 1]``."""
    return [tuple(bottom(v) for v in s[:j + 1]) + tuple(top(v) for v in s[j:]) for j in range(len(s))]


def mapping_torus_complex(K: SimplicialComplex, phi: Sequence[int], layers: int = 3) -> SimplicialComplex:
    """Vertex ``(v, i)`` (layer ``i``) has index ``i * n + v``."""
    if layers < 3:
        raise ValueError("use at least 3 layers so the gluing stays simplicial")
    _check_automorphism(K, phi)
    n = K.vertex_count
    out: List[Tuple[int, ...]] = []
    for i in range(layers):
        bottom = lambda v, i=i: i * n + v
        if i + 1 < layers:
            top = lambda v, i=i: (i + 1) * n + v
        else:
            top = lambda v: phi[v]
        for s in K.simplices:
            out += _prism(s, bottom, top)
    return SimplicialComplex(layers * n, out)


def mapping_torus(K: SimplicialComplex, phi: Sequence[int], layers: int = 3) -> CircleMap:
    """Mapping torus of ``φ`` with the time coordinate as circle map."""
    n = K.vertex_count
    X = mapping_torus_complex(K, phi, layers)
    eps = Fraction(1, 8 * layers * max(n, 1))
    return CircleMap(X, [Fraction(i, layers) + eps * v for i in range(layers) for v in range(n)])


def product_with_circle(f: CircleMap, layers: int = 3) -> CircleMap:
    """``X x S^1`` with the map pulled back from ``f`` (tilted slightly along ``S^1``)."""
    K = f.complex
    n = K.vertex_count
    X = mapping_torus_complex(K, list(range(n)), layers)
    gaps = [abs(a - b) for a in f.angles for b in f.angles if a != b] or [Fraction(1)]
    eps = min(gaps) / (4 * layers)
    return CircleMap(X, [f.angles[v] + eps * i for i in range(layers) for v in range(n)])


def double_cylinder(F: SimplicialComplex, G: SimplicialComplex,
                    g1: Sequence[int], g2: Sequence[int]) -> CircleMap:
    """``Cyl(g1) ∪_G Cyl(g2)`` closed up by ``F x I``.

    Levels (in turns): the start copy of ``F`` at 0.1, ``G`` at 0.4, the end
    copy of ``F`` at 0.7, and the closing product runs from 0.7 to 1.1.
    Cutting at 0.9 gives fiber ``F`` and the cospan pair ``(g1_*, g2_*)``.
    """
    nF, nG = F.vertex_count, G.vertex_count
    f0 = lambda v: v
    g_ = lambda w: nF + w
    f1 = lambda v: nF + nG + v
    out: List[Tuple[int, ...]] = [tuple(g_(w) for w in s) for s in G.simplices]
    for s in F.simplices:
        out += _cylinder(s, f0, lambda v: g_(g1[v]))
        out += _cylinder(s, f1, lambda v: g_(g2[v]))
        out += _prism(s, f1, f0)
    X = SimplicialComplex(2 * nF + nG, out)
    total = X.vertex_count
    delta = Fraction(1, 100 * total)
    base = [Fraction(1, 10)] * nF + [Fraction(2, 5)] * nG + [Fraction(7, 10)] * nF
    return CircleMap(X, [b + delta * k for k, b in enumerate(base)])


def _cylinder(s: Simplex, src: Callable[[int], int], img: Callable[[int], int]) -> List[Tuple[int, ...]]:
    """Simplicial mapping cylinder cells over the ordered simplex ``s``."""
    out = []
    for j in range(len(s)):
        out.append(tuple(sorted(set([src(v) for v in s[:j + 1]] + [img(v) for v in s[j:]]))))
    return out


def word_loop_map(word: Sequence[Tuple[int, int]], target_loops: List[List[int]]) -> List[int]:
    """Vertex images for a circle subdivided to traverse ``word`` in a rose.

    ``word`` is a list of ``(loop index, ±1)``; an empty word maps a 3-vertex
    circle to the base point. Returns the images of the circle's vertices in
    cyclic order.
    """
    if not word:
        return [0, 0, 0]
    images: List[int] = []
    for i, e in word:
        path = target_loops[i]
        images += path if e > 0 else [path[0]] + list(reversed(path[1:]))
    return images


def matrix_words(M: Matrix) -> List[List[Tuple[int, int]]]:
    """For each column, the word ``gen_i^{M[i][j]}`` for ``i`` in order."""
    words = []
    for j in range(M.cols):
        w = []
        for i in range(M.rows):
            c = int(M[i, j])
            w += [(i, 1 if c > 0 else -1)] * abs(c)
        words.append(w)
    return words


def cospan_space(A: Matrix, B: Matrix) -> CircleMap:
    """A 2-complex with one-dimensional fiber ``⊔ S^1`` whose cut at 0.9 has
    ``H_1`` inclusion matrices ``A`` (start) and ``B`` (end), up to the bases
    induced by the loops. Entries must be integers."""
    if A.shape != B.shape:
        raise ValueError("A and B must share a shape")
    m, n = A.shape
    G, loops = rose(m, 3)
    wa, wb = matrix_words(A), matrix_words(B)
    sizes = [max(3, 3 * max(len(x), len(y))) for x, y in zip(wa, wb)]
    F, circles = disjoint_cycles(sizes)
    g1 = [0] * F.vertex_count
    g2 = [0] * F.vertex_count
    for circ, x, y in zip(circles, wa, wb):
        for g, w in ((g1, x), (g2, y)):
            imgs = _pad(word_loop_map(w, loops), len(circ))
            for v, im in zip(circ, imgs):
                g[v] = im
    return double_cylinder(F, G, g1, g2)


def _pad(images: List[int], n: int) -> List[int]:
    # repeat the last vertex (a constant stretch) to match the circle's length
    return images + [images[0]] * (n - len(images))


# -- the fixtures --------------------------------------------------------------------

@dataclass
class MapFixture:
    name: str
    f: CircleMap
    expected: Dict[int, str]  # rendered cells per dimension over Q ("" for none)
    seam: bool = False
    notes: str = ""


def triangle_circle() -> CircleMap:
    return CircleMap(cycle(3), [Fraction(1, 10), Fraction(2, 5), Fraction(7, 10)])


def degree_d_circle(d: int, per_turn: int = 3) -> CircleMap:
    """A circle with ``d * per_turn`` edges wrapping ``d`` times around ``S^1``."""
    n = d * per_turn
    if n < 3:
        n, per_turn = 3 * d, 3
    wiggle = Fraction(1, 16 * n * per_turn)
    return CircleMap(cycle(n), [Fraction(i % per_turn, per_turn) + wiggle * i for i in range(n)])


def torus() -> CircleMap:
    return mapping_torus(cycle(3), [0, 1, 2])


def klein_bottle() -> CircleMap:
    return mapping_torus(cycle(4), [0, 3, 2, 1])


def rotated_circle_torus() -> CircleMap:
    """Mapping torus of a rotation of the 4-cycle (a torus with shifted gluing)."""
    return mapping_torus(cycle(4), [1, 2, 3, 0])


def swapped_circles() -> CircleMap:
    K, _ = disjoint_cycles([3, 3])
    return mapping_torus(K, [3, 4, 5, 0, 1, 2])


def sphere_nullhomotopic() -> CircleMap:
    return CircleMap(tetrahedron_boundary(), [Fraction(1, 10), Fraction(3, 20), Fraction(1, 5), Fraction(1, 4)])


def map_fixtures() -> List[MapFixture]:
    return [
        MapFixture("triangle-circle", triangle_circle(), {0: "(1,1)", 1: ""}, seam=True),
        MapFixture("degree-2-circle", degree_d_circle(2), {0: "(-1,1) (1,1)", 1: ""}, seam=True),
        MapFixture("degree-3-circle", degree_d_circle(3), {0: "(1,1) (z^2 + z + 1,1)", 1: ""}, seam=True),
        MapFixture("torus", torus(), {0: "(1,1)", 1: "(1,1)", 2: ""}, seam=True),
        MapFixture("klein-bottle", klein_bottle(), {0: "(1,1)", 1: "(-1,1)", 2: ""}, seam=True),
        MapFixture("rotated-torus", rotated_circle_torus(), {0: "(1,1)", 1: "(1,1)", 2: ""}, seam=True),
        MapFixture("swapped-circles", swapped_circles(), {0: "(-1,1) (1,1)", 1: "(-1,1) (1,1)", 2: ""},
                   seam=True),
        MapFixture("sphere-nullhomotopic", sphere_nullhomotopic(), {0: "", 1: "", 2: ""}),
        MapFixture("product-degree-2", product_with_circle(degree_d_circle(2)),
                   {0: "(-1,1) (1,1)", 1: "(-1,1) (1,1)", 2: ""}, seam=True),
    ]


# -- representation and class fixtures ---------------------------------------------------

EXAMPLE_A = [[3, 3, 0], [2, 3, -1], [1, 2, 3], [0, 0, 0]]
EXAMPLE_B = [[0, 0, 0], [0, 1, 0], [0, 0, 1], [0, 0, 0]]


def example_pair(field: Field = QQ) -> Tuple[Matrix, Matrix]:
    return Matrix.from_rows(EXAMPLE_A, field), Matrix.from_rows(EXAMPLE_B, field)


def example_representations(field: Field = QQ) -> Dict[int, Representation]:
    """Per-dimension ``m = 1`` representations of the three-circle example space:
    in degree 0 the fiber has three components and ``Ȳ`` is connected; degree 1 is
    the pair ``(A, B)``; degree 2 is empty."""
    ones = Matrix.from_rows([[1, 1, 1]], field)
    A, B = example_pair(field)
    return {
        0: Representation.cospan(ones, ones),
        1: Representation.cospan(A, B),
        2: Representation.cospan(Matrix.zeros(0, 0, field), Matrix.zeros(0, 0, field)),
    }


def example_space() -> CircleMap:
    """Triangulated version of the three-circle example: cut at 0.9."""
    A, B = example_pair()
    return cospan_space(A, B)


EXAMPLE_SPACE_THETA = Fraction(9, 10)

FIGURE_EIGHT = Polynomial([1, -3, 1], QQ)


def figure_eight_class(field: Field = QQ) -> MonodromyClass:
    """Degree-one monodromy class of the figure-eight knot fibration."""
    return MonodromyClass.from_cells([JordanCell(Polynomial([1, -3, 1], field), 1)], field)


def figure_eight_space() -> CircleMap:
    """Fiber a wedge of two circles; the closing map acts on ``H_1`` by ``[[2,1],[1,1]]^-1``."""
    A = Matrix.from_rows([[1, 0], [0, 1]])
    B = Matrix.from_rows([[2, 1], [1, 1]])
    G, loops = rose(2, 3)
    F, floops = rose(2, 3 * 3)
    g1 = [0] * F.vertex_count
    g2 = [0] * F.vertex_count
    for (src, wa, wb) in zip(floops, matrix_words(A), matrix_words(B)):
        for g, w in ((g1, wa), (g2, wb)):
            imgs = _pad(word_loop_map(w, loops), len(src))
            for v, im in zip(src, imgs):
                g[v] = im
    return double_cylinder(F, G, g1, g2)
