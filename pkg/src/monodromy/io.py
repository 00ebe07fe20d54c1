"""JSON input documents and report rendering.

An input document looks like::

    {
      "field": "Q",                                   # or "Fp:5"
      "complex": {"vertices": 3, "simplices": [[0, 1], [1, 2], [0, 2]]},
      "map": {"angles": ["1/10", "2/5", "7/10"]},      # turns, exact
      "representations": {                            # optional, keyed by degree
        "1": {"dims": [3, 4], "alpha": [[[3, 3, 0], ...]], "beta": [[[0, 0, 0], ...]]}
      },
      "cells": {"1": [{"factor": "z^2 - 3z + 1", "k": 1}]},   # optional
      "monodromy": {"1": [[0, -1], [1, 3]]},                 # optional
      "query": {"theta": ["9/10"], "rmax": 1, "u": ["2"]}    # optional
    }

Numbers may be JSON integers or strings such as ``"-3/7"``. The simplex
list is closed under faces on reading, so listing maximal simplices is
enough.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from typing import Any, Dict, List, Optional

from .complexes import CircleMap, InvalidMapError, SimplicialComplex
from .invariants import JordanCellSet, Representation
from .jordan import JordanCell, MonodromyClass, jordan_cells
from .linalg import QQ, Field, Matrix, Polynomial, parse_field, parse_polynomial


class InputError(ValueError):
    """The input document is malformed; the message names the offending field."""


@dataclass
class InputDocument:
    field: Field = QQ
    complex: Optional[SimplicialComplex] = None
    map: Optional[CircleMap] = None
    representations: Dict[int, Representation] = dc_field(default_factory=dict)
    classes: Dict[int, MonodromyClass] = dc_field(default_factory=dict)
    theta: List[Fraction] = dc_field(default_factory=list)
    rmax: Optional[int] = None
    u: List[Any] = dc_field(default_factory=list)


def _rational(x, where: str) -> Fraction:
    if isinstance(x, bool):
        raise InputError(f"{where}: expected a number, got {x!r}")
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        try:
            return Fraction(x.strip())
        except (ValueError, ZeroDivisionError):
            raise InputError(f"{where}: cannot read {x!r} as an exact rational") from None
    raise InputError(f"{where}: expected an integer or a 'p/q' string, got {x!r}")


def _matrix(rows, field: Field, where: str, shape=None) -> Matrix:
    if not isinstance(rows, list) or not all(isinstance(r, list) for r in rows):
        raise InputError(f"{where}: expected a list of rows")
    cols = len(rows[0]) if rows else (shape[1] if shape else 0)
    if any(len(r) != cols for r in rows):
        raise InputError(f"{where}: rows have different lengths")
    data = [[field(_rational(x, f"{where}[{i}][{j}]")) for j, x in enumerate(r)] for i, r in enumerate(rows)]
    M = Matrix(field, len(rows), cols, data)
    if shape is not None and M.shape != tuple(shape):
        if M.rows == 0 and shape[0] == 0:
            return Matrix.zeros(0, shape[1], field)
        raise InputError(f"{where}: expected shape {shape[0]}x{shape[1]}, got {M.rows}x{M.cols}")
    return M


def _int(x, where: str) -> int:
    if isinstance(x, bool) or not isinstance(x, int):
        raise InputError(f"{where}: expected an integer, got {x!r}")
    return x


def parse_document(doc: Any) -> InputDocument:
    if not isinstance(doc, dict):
        raise InputError("top level: expected a JSON object")
    known = {"field", "complex", "map", "representations", "cells", "monodromy", "query", "name", "comment"}
    extra = set(doc) - known
    if extra:
        raise InputError(f"top level: unknown keys {sorted(extra)}")
    try:
        field = parse_field(doc.get("field", "Q"))
    except (ValueError, TypeError) as e:
        raise InputError(f"field: {e}") from None
    out = InputDocument(field=field)

    if "complex" in doc:
        c = doc["complex"]
        if not isinstance(c, dict):
            raise InputError("complex: expected an object")
        n = _int(c.get("vertices"), "complex.vertices")
        simplices = c.get("simplices", [])
        if not isinstance(simplices, list):
            raise InputError("complex.simplices: expected a list")
        clean = []
        for i, s in enumerate(simplices):
            if not isinstance(s, list) or not s:
                raise InputError(f"complex.simplices[{i}]: expected a non-empty list of vertex indices")
            clean.append([_int(v, f"complex.simplices[{i}]") for v in s])
        try:
            out.complex = SimplicialComplex(n, clean)
        except ValueError as e:
            raise InputError(f"complex: {e}") from None
    if "map" in doc:
        if out.complex is None:
            raise InputError("map: needs a complex")
        m = doc["map"]
        angles = m.get("angles") if isinstance(m, dict) else None
        if not isinstance(angles, list):
            raise InputError("map.angles: expected a list")
        vals = [_rational(a, f"map.angles[{i}]") for i, a in enumerate(angles)]
        try:
            out.map = CircleMap(out.complex, vals)
        except InvalidMapError as e:
            raise InputError(f"map: {e}") from None

    for key, rep in _labelled(doc.get("representations", {}), "representations"):
        where = f"representations.{key}"
        if not isinstance(rep, dict):
            raise InputError(f"{where}: expected an object")
        dims = rep.get("dims")
        if not isinstance(dims, list) or not dims or len(dims) % 2:
            raise InputError(f"{where}.dims: expected an even-length list of dimensions")
        dims = [_int(d, f"{where}.dims") for d in dims]
        m = len(dims) // 2
        alpha, beta = rep.get("alpha"), rep.get("beta")
        if not isinstance(alpha, list) or not isinstance(beta, list) or len(alpha) != m or len(beta) != m:
            raise InputError(f"{where}: expected {m} alpha and {m} beta matrices")
        a = [_matrix(alpha[i], field, f"{where}.alpha[{i}]", (dims[2 * i + 1], dims[2 * i])) for i in range(m)]
        b = [_matrix(beta[i], field, f"{where}.beta[{i}]", (dims[2 * i + 1], dims[(2 * i + 2) % (2 * m)]))
             for i in range(m)]
        try:
            out.representations[key] = Representation(dims, a, b)
        except ValueError as e:
            raise InputError(f"{where}: {e}") from None

    for key, cells in _labelled(doc.get("cells", {}), "cells"):
        where = f"cells.{key}"
        if not isinstance(cells, list):
            raise InputError(f"{where}: expected a list of cells")
        parsed = []
        for i, c in enumerate(cells):
            if not isinstance(c, dict) or "factor" not in c or "k" not in c:
                raise InputError(f"{where}[{i}]: expected {{'factor': ..., 'k': ...}}")
            parsed.append(JordanCell(_polynomial(c["factor"], field, f"{where}[{i}].factor"),
                                     _int(c["k"], f"{where}[{i}].k")))
        out.classes[key] = MonodromyClass.from_cells(parsed, field)
    for key, rows in _labelled(doc.get("monodromy", {}), "monodromy"):
        T = _matrix(rows, field, f"monodromy.{key}")
        if not T.is_square():
            raise InputError(f"monodromy.{key}: expected a square matrix")
        try:
            out.classes[key] = jordan_cells(T)
        except ValueError as e:
            raise InputError(f"monodromy.{key}: {e}") from None

    q = doc.get("query", {})
    if not isinstance(q, dict):
        raise InputError("query: expected an object")
    out.theta = [_rational(t, f"query.theta[{i}]") for i, t in enumerate(_as_list(q.get("theta", [])))]
    if "rmax" in q:
        out.rmax = _int(q["rmax"], "query.rmax")
    out.u = [_rational(t, f"query.u[{i}]") for i, t in enumerate(_as_list(q.get("u", [])))]
    return out


def _as_list(x):
    return x if isinstance(x, list) else [x]


def _labelled(block, where: str):
    if not isinstance(block, dict):
        raise InputError(f"{where}: expected an object keyed by degree")
    out = []
    for k, v in block.items():
        try:
            r = int(k)
        except ValueError:
            raise InputError(f"{where}: key {k!r} is not a degree") from None
        out.append((r, v))
    return sorted(out, key=lambda t: t[0])


def _polynomial(x, field: Field, where: str) -> Polynomial:
    try:
        if isinstance(x, str):
            p = parse_polynomial(x, field)
        elif isinstance(x, list):
            p = Polynomial([_rational(c, where) for c in x], field)
        else:
            raise InputError(f"{where}: expected a string or a coefficient list (lowest degree first)")
    except ValueError as e:
        raise InputError(f"{where}: {e}") from None
    if p.degree < 1:
        raise InputError(f"{where}: a cell factor must have positive degree")
    return p.monic()


def load_document(path: str) -> InputDocument:
    try:
        with open(path, encoding="utf-8") as fh:
            doc = json.load(fh)
    except OSError as e:
        raise InputError(f"{path}: {e.strerror}") from None
    except json.JSONDecodeError as e:
        raise InputError(f"{path}: line {e.lineno}: {e.msg}") from None
    return parse_document(doc)


# -- writing documents -----------------------------------------------------------------

def _scalar(field: Field, x) -> Any:
    s = field.to_str(x)
    try:
        return int(s)
    except ValueError:
        return s


def matrix_to_json(M: Matrix) -> List[List[Any]]:
    return [[_scalar(M.field, x) for x in M.row(i)] for i in range(M.rows)]


def map_document(f: CircleMap, field: Field = QQ, name: str = "") -> Dict[str, Any]:
    X = f.complex
    top = [s for s in X.simplices if not any(set(s) < set(t) for t in X.simplices if len(t) == len(s) + 1)]
    doc: Dict[str, Any] = {
        "field": field.tag(),
        "complex": {"vertices": X.vertex_count, "simplices": [list(s) for s in top]},
        "map": {"angles": [_angle(a) for a in f.angles]},
    }
    if name:
        doc["name"] = name
    return doc


def _angle(a: Fraction) -> str:
    return f"{a.numerator}/{a.denominator}" if a.denominator != 1 else str(a.numerator)


def representation_to_json(rho: Representation) -> Dict[str, Any]:
    return {"dims": list(rho.dims), "alpha": [matrix_to_json(a) for a in rho.alpha],
            "beta": [matrix_to_json(b) for b in rho.beta]}


def class_to_json(cls: MonodromyClass) -> Dict[str, Any]:
    return {
        "cells": [c.render() for c in cls.jordan_cells],
        "dim": cls.dim,
        "char_poly": cls.char_poly.render(),
        "invariant_factors": [p.render() for p in cls.nontrivial_invariant_factors()],
    }


def cellset_to_json(cs: JordanCellSet) -> Dict[str, Any]:
    out = {}
    for r in cs.dims:
        entry = class_to_json(cs.get(r))
        entry.update({k: v for k, v in cs.details.get(r, {}).items()})
        out[str(r)] = entry
    return out


def dumps(obj: Any) -> str:
    """Canonical JSON: sorted keys, two-space indent, trailing newline."""
    return json.dumps(obj, sort_keys=True, indent=2, ensure_ascii=False) + "\n"
