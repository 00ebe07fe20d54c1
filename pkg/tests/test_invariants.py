import random
from fractions import Fraction

import pytest

from monodromy.complexes import IrregularAngleError
from monodromy.fixtures import (
    EXAMPLE_SPACE_THETA,
    example_representations,
    example_space,
    figure_eight_class,
    figure_eight_space,
    map_fixtures,
    torus,
    triangle_circle,
)
from monodromy.homology import betti
from monodromy.invariants import (
    JordanCellSet,
    Representation,
    alexander_poly,
    cell_representation,
    fiber_betti,
    jordan_cells_of_map,
    local_betti,
    novikov_betti,
    rep_jordan,
)
from monodromy.jordan import JordanCell, MonodromyClass
from monodromy.linalg import GF, QQ, Matrix, parse_polynomial
from monodromy.sampling import random_pair


def test_example_representations():
    got = {r: rep_jordan(rho).render_cells() for r, rho in example_representations().items()}
    assert got == {0: "(1,1)", 1: "(2,2)", 2: "(none)"}


def test_example_space_matches_representations():
    cs = jordan_cells_of_map(example_space(), EXAMPLE_SPACE_THETA)
    assert [cs.render(r) for r in (0, 1, 2)] == ["(1,1)", "(2,2)", ""]
    assert cs.details[1]["pair_shape"] == [4, 3]


def test_figure_eight_space_class():
    cs = jordan_cells_of_map(figure_eight_space())
    assert cs.render(1) == "(z^2 - 3z + 1,1)"
    assert alexander_poly(cs.get(1)).render() == "z^2 - 3z + 1"


@pytest.mark.parametrize("method", ["reduce", "echelon", "oracle"])
def test_methods_agree_on_fixtures(method):
    for fx in map_fixtures():
        cs = jordan_cells_of_map(fx.f, method=method)
        assert {r: cs.render(r) for r in fx.expected} == fx.expected, fx.name


def test_irregular_theta_and_unknown_method():
    with pytest.raises(IrregularAngleError):
        jordan_cells_of_map(triangle_circle(), Fraction(1, 10))
    with pytest.raises(ValueError):
        jordan_cells_of_map(triangle_circle(), method="nope")


def test_rmax_beyond_dimension_gives_empty_classes():
    cs = jordan_cells_of_map(triangle_circle(), r_max=3)
    assert cs.dims == [0, 1, 2, 3]
    assert cs.render(3) == "" and cs.get(3).dim == 0


# -- representations -------------------------------------------------------------------

def test_representation_shape_checks():
    with pytest.raises(ValueError):
        Representation([2, 3], [Matrix.zeros(3, 2)], [Matrix.zeros(2, 2)])


@pytest.mark.parametrize("m", [1, 2, 3])
def test_cell_representation_recovers_its_cell(m):
    rho = cell_representation(3, 2, m, QQ)
    assert rep_jordan(rho).render_cells() == "(3,2)"
    assert rep_jordan(rho.rotate()).render_cells() == "(3,2)"


def test_direct_sum_of_representations():
    a = cell_representation(2, 2, 2, GF(5))
    b = cell_representation(4, 1, 2, GF(5))
    assert rep_jordan(a.direct_sum(b)).render_cells() == "(2,2) (4,1)"


def test_reduce_and_oracle_agree_on_random_cospans():
    rng = random.Random(31)
    for _ in range(30):
        A, B = random_pair(rng, QQ, 5)
        rho = Representation.cospan(A, B)
        if A.cols == 0:
            continue
        a = rep_jordan(rho, "reduce")
        b = rep_jordan(rho, "oracle")
        assert a.nontrivial_invariant_factors() == b.nontrivial_invariant_factors()


def test_reduce_needs_a_single_cospan():
    with pytest.raises(ValueError):
        rep_jordan(cell_representation(1, 1, 2), "reduce")


# -- derived invariants -------------------------------------------------------------------

def _cells(field=QQ, **by_degree):
    classes = {}
    for key, cells in by_degree.items():
        r = int(key[1:])
        classes[r] = MonodromyClass.from_cells([JordanCell(parse_polynomial(p, field), k) for p, k in cells], field)
    return JordanCellSet(field, classes)


def test_novikov_and_fiber_of_circle():
    f = triangle_circle()
    cs = jordan_cells_of_map(f)
    b = betti(f.complex)
    bn = novikov_betti(b, cs)
    assert bn == [0, 0]
    assert fiber_betti(cs, bn).values == [1, 0]


def test_novikov_and_fiber_of_torus():
    f = torus()
    cs = jordan_cells_of_map(f)
    bn = novikov_betti(betti(f.complex), cs)
    assert bn == [0, 0, 0]
    assert fiber_betti(cs, bn).values == [1, 1, 0]


def test_fiber_betti_weights_factor_degree_and_block_size():
    cs = _cells(r0=[("z - 1", 1)], r1=[("z^2 + 1", 2), ("z - 2", 1)])
    assert fiber_betti(cs, [0, 0]).values == [1, 5]
    undefined = fiber_betti(cs, [0, 1])
    assert not undefined.defined and undefined.undefined_at == 1
    assert undefined.render() == "undefined (betaN_1 != 0)"


def test_novikov_counts_cells_not_multiplicity():
    cs = _cells(r0=[("z - 1", 3)])
    assert novikov_betti([1, 1], cs) == [0, 0]


def test_novikov_rejects_inconsistent_input():
    cs = _cells(r0=[("z - 1", 1)])
    with pytest.raises(ValueError):
        novikov_betti([0, 0], cs)


def test_local_betti_twists():
    cs = _cells(r0=[("z - 1", 1)], r1=[("z - 2", 1), ("z - 1/2", 1)])
    assert local_betti([0, 0], cs, 1) == [1, 1]
    # degree 1 picks 1/u = 1/2 among J_1; degree 2 would pick u among J_1
    assert local_betti([0, 0, 0], cs, 2) == [0, 1, 1]
    with pytest.raises(ValueError):
        local_betti([0, 0], cs, 0)


def test_local_betti_at_one_is_betti_on_fixtures():
    for fx in map_fixtures():
        b = betti(fx.f.complex)
        cs = jordan_cells_of_map(fx.f)
        assert local_betti(novikov_betti(b, cs), cs, 1) == b, fx.name


def test_alexander_polynomial():
    assert alexander_poly(figure_eight_class()).render() == "z^2 - 3z + 1"
    trefoil = MonodromyClass.from_cells([JordanCell(parse_polynomial("z^2 - z + 1"), 1)], QQ)
    assert alexander_poly(trefoil).render() == "z^2 - z + 1"
    cls = MonodromyClass.from_cells([JordanCell(parse_polynomial("z - 2"), 2)], QQ)
    assert alexander_poly(cls).render() == "z^2 - 4z + 4"
    assert alexander_poly(MonodromyClass.empty(QQ)).render() == "1"
