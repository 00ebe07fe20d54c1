"""Homological monodromy of simplicial circle-valued maps via linear relations."""

__version__ = "0.1.0"

from .complexes import CircleMap, CutComplex, SimplicialComplex, build_cut  # noqa: E402
from .invariants import (  # noqa: E402
    JordanCellSet,
    Representation,
    alexander_poly,
    fiber_betti,
    jordan_cells_of_map,
    local_betti,
    novikov_betti,
    rep_jordan,
)
from .jordan import MonodromyClass, jordan_cells  # noqa: E402
from .linalg import GF, QQ, Matrix  # noqa: E402
from .reduce import CospanPair, reduce  # noqa: E402
from .relations import LinearRelation, regularize  # noqa: E402

__all__ = [
    "CircleMap", "CutComplex", "SimplicialComplex", "build_cut",
    "JordanCellSet", "Representation", "alexander_poly", "fiber_betti", "jordan_cells_of_map",
    "local_betti", "novikov_betti", "rep_jordan",
    "MonodromyClass", "jordan_cells", "GF", "QQ", "Matrix", "CospanPair", "reduce",
    "LinearRelation", "regularize",
]
