"""Command-line interface.

Subcommands read one JSON input document (see :mod:`monodromy.io`) and print a
report in text or canonical JSON. Exit codes: 0 success, 1 oracle mismatch,
2 unreadable input, 3 irregular angle.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from fractions import Fraction
from typing import Any, Dict, List, Optional

from . import __version__
from .complexes import IrregularAngleError, auto_theta, to_turns, validate_regular_angle
from .homology import betti
from .invariants import (
    alexander_poly,
    fiber_betti,
    jordan_cells_of_map,
    local_betti,
    novikov_betti,
    rep_jordan,
)
from .io import InputDocument, InputError, class_to_json, dumps, load_document, matrix_to_json, parse_document
from .linalg import GF, QQ, parse_field
from .reduce import CospanPair, reduce, reduce_pair
from .relations import from_cospan, regularize
from .jordan import invariant_factors
from .sampling import random_pair

EXIT_MISMATCH = 1
EXIT_INPUT = 2
EXIT_IRREGULAR = 3


def _load(args) -> InputDocument:
    if args.input is None:
        raise InputError("an input document is required")
    if args.field is None:
        return load_document(args.input)
    try:
        with open(args.input, encoding="utf-8") as fh:
            raw = json.load(fh)
    except OSError as e:
        raise InputError(f"{args.input}: {e.strerror}") from None
    except json.JSONDecodeError as e:
        raise InputError(f"{args.input}: line {e.lineno}: {e.msg}") from None
    if isinstance(raw, dict):
        raw["field"] = args.field
    return parse_document(raw)


def _thetas(args, doc: InputDocument) -> List[tuple]:
    """``(θ, chosen automatically?)`` pairs."""
    if args.theta:
        vals = []
        for t in args.theta:
            try:
                vals.append(Fraction(t))
            except (ValueError, ZeroDivisionError):
                raise InputError(f"--theta: cannot read {t!r} as an exact rational") from None
        return [(to_turns(t), False) for t in vals]
    if doc.theta:
        return [(to_turns(t), False) for t in doc.theta]
    return [(auto_theta(doc.map), True)]


def _need_map(doc: InputDocument) -> None:
    if doc.map is None:
        raise InputError("this command needs 'complex' and 'map' in the input")


def _check_regular(doc: InputDocument, theta) -> None:
    if not validate_regular_angle(doc.map, theta):
        raise IrregularAngleError(f"θ = {_frac(theta)} equals a vertex angle; choose another angle")


def _frac(x) -> str:
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def _rmax(args, doc: InputDocument) -> int:
    if args.rmax is not None:
        return args.rmax
    if doc.rmax is not None:
        return doc.rmax
    return doc.map.complex.dimension


def _cells_line(r: int, cls) -> str:
    body = cls.render_cells() if cls.jordan_cells else ""
    return f"r={r}: {body}".rstrip()


# -- commands ----------------------------------------------------------------------------

def cmd_jordan(args) -> Dict[str, Any]:
    doc = _load(args)
    _need_map(doc)
    runs = []
    for theta, auto in _thetas(args, doc):
        _check_regular(doc, theta)
        cs = jordan_cells_of_map(doc.map, theta, _rmax(args, doc), doc.field, args.method)
        runs.append({"theta": _frac(theta), "theta_auto": auto,
                     "degrees": {str(r): dict(class_to_json(cs.get(r)),
                                              monodromy_dim=cs.get(r).dim,
                                              pair_shape=cs.details[r]["pair_shape"])
                                 for r in cs.dims}})
    return {"command": "jordan", "field": doc.field.tag(), "runs": runs}


def text_jordan(rep: Dict[str, Any]) -> str:
    lines = [f"field = {rep['field']}"]
    for i, run in enumerate(rep["runs"]):
        if i:
            lines.append("")
        lines.append(f"theta = {run['theta']}" + (" (auto)" if run["theta_auto"] else ""))
        for r, d in sorted(run["degrees"].items(), key=lambda t: int(t[0])):
            lines.append(f"r={r}: {' '.join(d['cells'])}".rstrip())
            m, n = d["pair_shape"]
            lines.append(f"  invariant factors: {', '.join(d['invariant_factors']) or '(none)'}")
            lines.append(f"  pair {m}x{n}, monodromy {d['monodromy_dim']}x{d['monodromy_dim']}")
    return "\n".join(lines)


def cmd_rep(args) -> Dict[str, Any]:
    doc = _load(args)
    if not doc.representations:
        raise InputError("this command needs a 'representations' block")
    degrees = {}
    for r, rho in sorted(doc.representations.items()):
        cls = rep_jordan(rho, args.method)
        entry = class_to_json(cls)
        entry["m"] = rho.m
        if args.trace and rho.m == 1 and rho.alpha[0].cols > 0 and args.method != "oracle":
            p = reduce(CospanPair(rho.alpha[0], rho.beta[0]), "echelon" if args.method == "echelon" else "compress")
            entry["trace"] = _trace_json(rho.alpha[0], rho.beta[0], p)
        degrees[str(r)] = entry
    return {"command": "rep", "field": doc.field.tag(), "method": args.method, "degrees": degrees}


def _trace_json(A, B, p) -> List[Dict[str, Any]]:
    steps = []
    for mod in p.trace:
        A2, B2 = mod.apply(A, B)
        steps.append({"step": mod.name, "from": list(A.shape), "to": list(A2.shape),
                      "C": matrix_to_json(mod.C), "D": matrix_to_json(mod.D),
                      "A": matrix_to_json(A2), "B": matrix_to_json(B2)})
        A, B = A2, B2
    return steps


def text_rep(rep: Dict[str, Any]) -> str:
    lines = [f"field = {rep['field']}"]
    for r, d in sorted(rep["degrees"].items(), key=lambda t: int(t[0])):
        lines.append(f"r={r}: {' '.join(d['cells'])}".rstrip())
        for st in d.get("trace", []):
            lines.append(f"  {st['step']}: {st['from'][0]}x{st['from'][1]} -> {st['to'][0]}x{st['to'][1]}"
                         f"  C = {_rows(st['C'])}  D = {_rows(st['D'])}")
            lines.append(f"      A' = {_rows(st['A'])}  B' = {_rows(st['B'])}")
    return "\n".join(lines)


def _rows(M) -> str:
    return "[" + "; ".join(" ".join(str(x) for x in row) for row in M) + "]"


def _map_invariants(args, doc):
    _need_map(doc)
    (theta, auto), *_ = _thetas(args, doc)
    _check_regular(doc, theta)
    X = doc.map.complex
    b = betti(X, doc.field)
    cs = jordan_cells_of_map(doc.map, theta, X.dimension, doc.field, args.method)
    return theta, auto, b, cs


def cmd_novikov(args) -> Dict[str, Any]:
    doc = _load(args)
    theta, auto, b, cs = _map_invariants(args, doc)
    bn = novikov_betti(b, cs)
    fb = fiber_betti(cs, bn)
    return {"command": "novikov", "field": doc.field.tag(), "theta": _frac(theta), "theta_auto": auto,
            "beta": b, "betaN": bn, "fiber_betti": fb.values if fb.defined else None,
            "fiber_undefined_at": fb.undefined_at}


def text_novikov(rep: Dict[str, Any]) -> str:
    fb = rep["fiber_betti"]
    fiber = " ".join(map(str, fb)) if fb is not None else f"undefined (betaN_{rep['fiber_undefined_at']} != 0)"
    return "\n".join([
        f"field = {rep['field']}",
        f"theta = {rep['theta']}" + (" (auto)" if rep["theta_auto"] else ""),
        "beta = " + " ".join(map(str, rep["beta"])),
        "betaN = " + " ".join(map(str, rep["betaN"])),
        "fiber = " + fiber,
    ])


def cmd_local(args) -> Dict[str, Any]:
    doc = _load(args)
    theta, auto, b, cs = _map_invariants(args, doc)
    bn = novikov_betti(b, cs)
    us = args.u or [str(u) for u in doc.u] or ["1"]
    values = []
    for u in us:
        try:
            val = doc.field(Fraction(u))
        except (ValueError, ZeroDivisionError):
            raise InputError(f"--u: cannot read {u!r} in {doc.field.tag()}") from None
        if val == 0:
            raise InputError("--u: u must be nonzero")
        values.append({"u": doc.field.to_str(val), "betti": local_betti(bn, cs, val)})
    return {"command": "local", "field": doc.field.tag(), "theta": _frac(theta), "theta_auto": auto,
            "betaN": bn, "values": values}


def text_local(rep: Dict[str, Any]) -> str:
    lines = [f"field = {rep['field']}", f"theta = {rep['theta']}" + (" (auto)" if rep["theta_auto"] else ""),
             "betaN = " + " ".join(map(str, rep["betaN"]))]
    lines += [f"u={v['u']}: " + " ".join(map(str, v["betti"])) for v in rep["values"]]
    return "\n".join(lines)


def cmd_alexander(args) -> Dict[str, Any]:
    doc = _load(args)
    if 1 in doc.classes:
        cls, source = doc.classes[1], "cells"
    elif 1 in doc.representations:
        cls, source = rep_jordan(doc.representations[1], args.method), "representation"
    elif doc.map is not None:
        (theta, _), *_ = _thetas(args, doc)
        _check_regular(doc, theta)
        cls, source = jordan_cells_of_map(doc.map, theta, 1, doc.field, args.method).get(1), f"map at {_frac(theta)}"
    else:
        raise InputError("this command needs degree-1 'cells', 'monodromy', a representation or a map")
    return {"command": "alexander", "field": doc.field.tag(), "source": source,
            "cells": [c.render() for c in cls.jordan_cells], "polynomial": alexander_poly(cls).render()}


def text_alexander(rep: Dict[str, Any]) -> str:
    return rep["polynomial"]


def _same(A, B) -> bool:
    return invariant_factors(regularize(from_cospan(A, B)).T) == invariant_factors(reduce_pair(A, B))


def cmd_oracle_check(args) -> Dict[str, Any]:
    cases = []
    if args.random or args.input is None:
        rng = random.Random(args.seed)
        fields = [parse_field(args.field)] if args.field else [QQ, GF(5)]
        for i in range(args.count):
            F = fields[i % len(fields)]
            A, B = random_pair(rng, F)
            cases.append((f"random #{i} over {F.tag()} ({A.rows}x{A.cols})", A, B))
    else:
        doc = _load(args)
        for r, rho in sorted(doc.representations.items()):
            if rho.m == 1:
                cases.append((f"representation r={r}", rho.alpha[0], rho.beta[0]))
        if doc.map is not None:
            from .complexes import build_cut
            from .homology import cut_homology

            for theta, _ in _thetas(args, doc):
                _check_regular(doc, theta)
                hom = cut_homology(build_cut(doc.map, theta), doc.field)
                for r in range(doc.map.complex.dimension + 1):
                    A, B = hom.pair(r)
                    cases.append((f"map θ={_frac(theta)} r={r}", A, B))
    failures = [name for name, A, B in cases if not _same(A, B)]
    return {"command": "oracle-check", "agree": len(cases) - len(failures), "total": len(cases),
            "failures": failures, "seed": args.seed if (args.random or args.input is None) else None}


def text_oracle_check(rep: Dict[str, Any]) -> str:
    lines = [f"{rep['agree']}/{rep['total']} agree"]
    lines += [f"mismatch: {name}" for name in rep["failures"]]
    return "\n".join(lines)


COMMANDS = {
    "jordan": (cmd_jordan, text_jordan, "Jordan cells of the r-monodromy of a circle-valued map"),
    "rep": (cmd_rep, text_rep, "Jordan cells of cyclic zigzag representations"),
    "novikov": (cmd_novikov, text_novikov, "Betti, Novikov Betti and fiber Betti numbers"),
    "local": (cmd_local, text_local, "Betti numbers with coefficients twisted by u"),
    "alexander": (cmd_alexander, text_alexander, "Alexander polynomial from the degree-1 monodromy"),
    "oracle-check": (cmd_oracle_check, text_oracle_check, "compare pair reduction with the direct regularization"),
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="monodromy", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)
    for name, (_, _, help_text) in COMMANDS.items():
        p = sub.add_parser(name, help=help_text, description=help_text)
        p.add_argument("input", nargs="?", help="JSON input document")
        p.add_argument("--field", help="override the document's field: Q or Fp:<prime>")
        p.add_argument("--theta", action="append", help="cut angle in turns, e.g. 9/10 (repeatable)")
        p.add_argument("--rmax", type=int, help="largest degree to report (default: dim X)")
        p.add_argument("--u", action="append", help="twisting value for 'local' (repeatable)")
        p.add_argument("--format", choices=("text", "json"), default="text")
        p.add_argument("--method", choices=("reduce", "echelon", "oracle"), default="reduce",
                       help="how to extract the regular part (default: reduce)")
        p.add_argument("--trace", action="store_true", help="show the reduction steps ('rep')")
        p.add_argument("--random", action="store_true", help="random pairs instead of an input ('oracle-check')")
        p.add_argument("--seed", type=int, default=1)
        p.add_argument("--count", type=int, default=200)
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    run, text, _ = COMMANDS[args.command]
    if args.field is not None:
        try:
            parse_field(args.field)
        except ValueError as e:
            print(f"error: --field: {e}", file=sys.stderr)
            return EXIT_INPUT
    try:
        report = run(args)
    except InputError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INPUT
    except IrregularAngleError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_IRREGULAR
    sys.stdout.write(dumps(report) if args.format == "json" else text(report) + "\n")
    if report.get("command") == "oracle-check" and report["failures"]:
        return EXIT_MISMATCH
    return 0


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
