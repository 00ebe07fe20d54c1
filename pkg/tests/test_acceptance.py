"""Acceptance criteria. Each test prints one ``[PASS]``/``[FAIL]`` line, also
repeated in the pytest terminal summary. All comparisons are exact."""

import json
import random
import time
from contextlib import contextmanager

import sympy

from monodromy.cli import main
from monodromy.complexes import barycentric_subdivision, build_cut, regular_angles
from monodromy.fixtures import (
    EXAMPLE_A,
    EXAMPLE_B,
    EXAMPLE_SPACE_THETA,
    degree_d_circle,
    example_representations,
    example_space,
    figure_eight_class,
    figure_eight_space,
    map_fixtures,
    triangle_circle,
)
from monodromy.homology import betti
from monodromy.invariants import alexander_poly, jordan_cells_of_map, local_betti, novikov_betti, rep_jordan
from monodromy.jordan import inverse_cells, invariant_factors, jordan_cells
from monodromy.linalg import GF, QQ, Polynomial, parse_polynomial
from monodromy.reduce import MODIFICATIONS, CospanPair, applicable, reduce, reduce_pair
from monodromy.relations import compose_all, conjugate, dagger, direct_sum, from_cospan, regularize
from monodromy.sampling import random_cycle, random_endorelation, random_invertible, random_pair


@contextmanager
def criterion(report, number, summary):
    """Time a criterion and record PASS only if the body finishes with ``state['ok']`` true."""
    state = {"ok": False, "summary": summary}
    start = time.perf_counter()
    try:
        yield state
    finally:
        report(number, state["ok"], state["summary"], time.perf_counter() - start)


def _oracle_chain(A, B):
    return invariant_factors(regularize(from_cospan(A, B)).T)


def _cells(T):
    return [c.render() for c in jordan_cells(T).jordan_cells]


def test_criterion_01_worked_example_matrix_route(report, tmp_path, capsys):
    doc = tmp_path / "pair.json"
    doc.write_text(json.dumps({"field": "Q", "representations": {
        "1": {"dims": [3, 4], "alpha": [EXAMPLE_A], "beta": [EXAMPLE_B]}}}), encoding="utf-8")
    with criterion(report, 1, "worked example: cells {(2,2)}, trace A' = [[1,-1],[1,3]], B' = I") as st:
        start = time.perf_counter()
        code = main(["rep", str(doc), "--trace", "--format", "json"])
        elapsed = time.perf_counter() - start
        out = json.loads(capsys.readouterr().out)
        entry = out["degrees"]["1"]
        last = entry["trace"][-1]
        assert code == 0
        assert entry["cells"] == ["(2,2)"]
        assert entry["invariant_factors"] == ["z^2 - 4z + 4"]
        assert [s["step"] for s in entry["trace"]] == ["T1", "T2"]
        assert last["A"] == [[1, -1], [1, 3]] and last["B"] == [[1, 0], [0, 1]]
        # the chain must be (z - 2)^2 whatever the intermediates
        assert parse_polynomial(entry["char_poly"]) == Polynomial.linear(2) ** 2
        assert elapsed < 1.0
        st["summary"] += f", cli {elapsed:.3f} s < 1 s"
        st["ok"] = True


def test_criterion_02_worked_example_full_answer(report):
    with criterion(report, 2, "J0 = {(1,1)}, J1 = {(2,2)}, J2 = {} from representations and triangulation") as st:
        start = time.perf_counter()
        reps = example_representations(QQ)
        got = {r: rep_jordan(rho).render_cells() for r, rho in reps.items()}
        t_fixture = time.perf_counter() - start
        assert got == {0: "(1,1)", 1: "(2,2)", 2: "(none)"}
        assert t_fixture < 1.0
        start = time.perf_counter()
        cs = jordan_cells_of_map(example_space(), EXAMPLE_SPACE_THETA)
        t_space = time.perf_counter() - start
        assert [cs.render(r) for r in (0, 1, 2)] == ["(1,1)", "(2,2)", ""]
        assert t_space < 60.0
        st["summary"] += f"; fixture {t_fixture:.3f} s < 1 s, triangulation {t_space:.2f} s < 60 s"
        st["ok"] = True


def test_criterion_03_oracle_equivalence(report, capsys):
    with criterion(report, 3, "reduction vs oracle on seeded random pairs (dims <= 8, entries in [-3,3])") as st:
        start = time.perf_counter()
        counts = {}
        for F in (QQ, GF(5)):
            rng = random.Random(1)
            agree = 0
            for _ in range(200):
                A, B = random_pair(rng, F, max_dim=8, lo=-3, hi=3)
                assert A.rows <= 8 and A.cols <= 8
                agree += invariant_factors(reduce_pair(A, B)) == _oracle_chain(A, B)
            counts[F.tag()] = agree
        code = main(["oracle-check", "--random", "--seed", "1", "--count", "200"])
        line = capsys.readouterr().out.splitlines()[0]
        elapsed = time.perf_counter() - start
        assert counts == {"Q": 200, "Fp:5": 200}
        assert code == 0 and line == "200/200 agree"
        assert elapsed < 30.0
        st["summary"] += f": Q 200/200, F5 200/200, cli '{line}'"
        st["ok"] = True


def test_criterion_04_single_modification_soundness(report):
    with criterion(report, 4, "every single applicable T1/T2/T3 keeps the oracle chain") as st:
        rng = random.Random(4)
        good, steps = 0, {"T1": 0, "T2": 0, "T3": 0}
        for i in range(100):
            F = QQ if i % 2 == 0 else GF(5)
            A, B = random_pair(rng, F, max_dim=8)
            want = _oracle_chain(A, B)
            ok = True
            # every state met along the reduction, every modification applicable there
            p = CospanPair(A, B)
            states = [p]
            final = reduce(p)
            for mod in final.trace:
                p = MODIFICATIONS[mod.name](p)
                states.append(p)
            for s in states:
                for name in applicable(s):
                    q = MODIFICATIONS[name](s)
                    steps[name] += 1
                    ok &= _oracle_chain(q.A, q.B) == want
            good += ok
        assert good == 100
        assert min(steps.values()) >= 20
        st["summary"] += f": {good}/100 pairs, steps checked T1={steps['T1']} T2={steps['T2']} T3={steps['T3']}"
        st["ok"] = True


def test_criterion_05_relation_properties(report):
    with criterion(report, 5, "dagger inverse, direct sum, cyclic rotation k=2,3, conjugation") as st:
        rng = random.Random(5)
        fields = (QQ, GF(5))
        fails = {"dagger": 0, "sum": 0, "cyclic2": 0, "cyclic3": 0, "conj": 0}
        n = 60
        for i in range(n):
            F = fields[i % 2]
            R = random_endorelation(rng, F)
            fwd = jordan_cells(regularize(R).T)
            back = jordan_cells(regularize(dagger(R)).T)
            fails["dagger"] += [c.render() for c in back.jordan_cells] != \
                [c.render() for c in inverse_cells(fwd)]

            R2 = random_endorelation(rng, F, 4)
            a, b = regularize(R).T, regularize(R2).T
            both = regularize(direct_sum(R, R2)).T
            fails["sum"] += sorted(_cells(both)) != sorted(_cells(a) + _cells(b)) or both.rows != a.rows + b.rows

            for k in (2, 3):
                links = random_cycle(rng, F, k)
                T0 = regularize(compose_all(links)).T
                T1 = regularize(compose_all(links[1:] + links[:1])).T
                fails[f"cyclic{k}"] += invariant_factors(T0) != invariant_factors(T1)

            omega = random_invertible(rng, F, R.dim_src)
            fails["conj"] += invariant_factors(regularize(conjugate(R, omega)).T) != invariant_factors(regularize(R).T)
        assert sum(fails.values()) == 0, fails
        st["summary"] += f": {n} cases each, failures {fails}"
        st["ok"] = True


def test_criterion_06_theta_and_subdivision_invariance(report):
    fixtures = map_fixtures()
    with criterion(report, 6, "cells agree across 3 regular angles and a barycentric subdivision") as st:
        seam = sum(fx.seam for fx in fixtures)
        assert len(fixtures) >= 5 and seam >= 2
        bad = []
        for fx in fixtures:
            top = fx.f.complex.dimension
            runs = []
            for theta in regular_angles(fx.f, 3):
                cs = jordan_cells_of_map(fx.f, theta)
                runs.append([cs.render(r) for r in range(top + 1)])
            sub = barycentric_subdivision(fx.f)
            cs = jordan_cells_of_map(sub, regular_angles(sub, 1)[0])
            runs.append([cs.render(r) for r in range(top + 1)])
            expected = [fx.expected[r] for r in range(top + 1)]
            if any(run != expected for run in runs):
                bad.append(fx.name)
        assert not bad, bad
        st["summary"] += f": {len(fixtures)} fixtures ({seam} crossing the seam), 0 disagreements"
        st["ok"] = True


def _cyclotomic_cells(d):
    z = sympy.Symbol("z")
    _, factors = sympy.factor_list(z ** d - 1, z)
    polys = []
    for f, k in factors:
        coeffs = [int(c) for c in sympy.Poly(f, z).all_coeffs()[::-1]]
        assert k == 1
        polys.append(Polynomial(coeffs, QQ).monic())
    return polys


def test_criterion_07_degree_d_circles(report):
    with criterion(report, 7, "degree-d circle maps give the cyclotomic cells; (1,5) over F5 for d = 5") as st:
        seen = {}
        for d in (1, 2, 3, 4, 6):
            cls = jordan_cells_of_map(degree_d_circle(d)).get(0)
            assert all(c.k == 1 for c in cls.jordan_cells)
            want = sorted(p.render() for p in _cyclotomic_cells(d))
            assert sorted(c.factor.render() for c in cls.jordan_cells) == want
            seen[d] = cls.render_cells()
        f5 = jordan_cells_of_map(degree_d_circle(5), field=GF(5)).get(0)
        assert f5.render_cells() == "(1,5)"
        q5 = jordan_cells_of_map(degree_d_circle(5)).get(0)
        assert q5.render_cells() == "(1,1) (z^4 + z^3 + z^2 + z + 1,1)"
        st["summary"] += "; " + ", ".join(f"d={d}: {v}" for d, v in seen.items()) + "; F5 d=5: (1,5)"
        st["ok"] = True


def test_criterion_08_novikov_and_local_consistency(report):
    with criterion(report, 8, "local Betti at u = 1 equals Betti on all fixtures; circle Novikov Betti (0,0)") as st:
        for fx in map_fixtures():
            b = betti(fx.f.complex)
            cs = jordan_cells_of_map(fx.f)
            assert local_betti(novikov_betti(b, cs), cs, 1) == b, fx.name
        f = triangle_circle()
        bn = novikov_betti(betti(f.complex), jordan_cells_of_map(f))
        assert bn == [0, 0]
        st["ok"] = True


def test_criterion_09_alexander_polynomial(report):
    with criterion(report, 9, "Alexander polynomial of the figure-eight class is z^2 - 3z + 1") as st:
        assert alexander_poly(figure_eight_class()) == Polynomial([1, -3, 1], QQ)
        assert alexander_poly(figure_eight_class()).render() == "z^2 - 3z + 1"
        from_space = alexander_poly(jordan_cells_of_map(figure_eight_space()).get(1))
        assert from_space.render() == "z^2 - 3z + 1"
        st["summary"] += " (class fixture and triangulated fibration)"
        st["ok"] = True


def test_criterion_10_structural_invariants(report):
    with criterion(report, 10, "d∘d = 0, triangular good order, block form, census, Euler on every cut") as st:
        maps = [(fx.name, fx.f) for fx in map_fixtures()]
        maps += [(fx.name + " (subdivided)", barycentric_subdivision(fx.f)) for fx in map_fixtures()]
        maps += [("example-space", example_space()), ("figure-eight", figure_eight_space())]
        count = 0
        for name, f in maps:
            for theta in regular_angles(f, 3):
                cut = build_cut(f, theta)
                assert cut.boundary_squared_is_zero(), name
                assert cut.is_good_order() and cut.is_upper_triangular(), name
                assert cut.has_block_form(), name
                assert cut.census_ok(), name
                assert cut.euler_ok(), name
                count += 1
        st["summary"] += f": {count} cut complexes"
        st["ok"] = True
