import random

import pytest

from monodromy.jordan import inverse_cells, jordan_cells, similarity_equal
from monodromy.linalg import GF, QQ, Matrix, Subspace
from monodromy.relations import (
    LinearRelation,
    compose,
    compose_all,
    conjugate,
    dagger,
    diagonal,
    direct_sum,
    dom,
    from_cospan,
    from_graph,
    from_span,
    img,
    ker,
    mul,
    image,
    power,
    preimage,
    regular_subspaces,
    regularize,
    restrict_source,
    restrict_target,
)
from monodromy.sampling import random_cycle, random_endorelation, random_invertible, random_matrix, random_relation


def _cells(R):
    T = regularize(R).T
    return [(c.render()) for c in jordan_cells(T).jordan_cells]


# -- constructors and basic operations --------------------------------------------------

def test_graph_relates_exactly_the_pairs_v_fv():
    f = Matrix.from_rows([[1, 2], [0, 1], [3, 0]])
    R = from_graph(f)
    assert R.dim == 2 and (R.dim_src, R.dim_tgt) == (2, 3)
    assert R.relates([1, 1], [3, 1, 3])
    assert not R.relates([1, 1], [3, 1, 0])


def test_cospan_and_span_constructors():
    alpha = Matrix.from_rows([[1, 0]])
    beta = Matrix.from_rows([[1]])
    R = from_cospan(alpha, beta)  # x1 = y
    assert R.relates([5, 7], [5]) and not R.relates([5, 7], [7])
    S = from_span(Matrix.from_rows([[1], [1]]), Matrix.from_rows([[2]]))
    assert S.relates([1, 1], [2]) and S.dim == 1


def test_dagger_is_an_involution_and_swaps_roles():
    rng = random.Random(4)
    for _ in range(20):
        R = random_relation(rng, QQ, 3, 2)
        D = dagger(R)
        assert dagger(D) == R
        assert dom(D) == img(R) and ker(D) == mul(R)


def test_composition_of_graphs_is_graph_of_product():
    rng = random.Random(5)
    for F in (QQ, GF(3)):
        f = random_matrix(rng, F, 3, 2)
        g = random_matrix(rng, F, 4, 3)
        assert compose(from_graph(f), from_graph(g)) == from_graph(g @ f)


def test_composition_is_associative():
    rng = random.Random(6)
    for _ in range(20):
        R1, R2, R3 = (random_relation(rng, QQ, 2, 3), random_relation(rng, QQ, 3, 2),
                      random_relation(rng, QQ, 2, 2))
        assert compose(compose(R1, R2), R3) == compose(R1, compose(R2, R3))
        assert compose_all([R1, R2, R3]) == compose(R1, compose(R2, R3))


def test_diagonal_is_a_unit():
    rng = random.Random(7)
    R = random_relation(rng, QQ, 3, 3)
    assert compose(diagonal(3), R) == R == compose(R, diagonal(3))
    assert power(R, 0) == diagonal(3)


def test_preimage_and_image_match_restriction():
    rng = random.Random(9)
    for F in (QQ, GF(3)):
        for _ in range(30):
            R = random_relation(rng, F, 3, 4)
            S_tgt = Subspace.from_matrix_columns(random_matrix(rng, F, 4, rng.randint(0, 3)))
            S_src = Subspace.from_matrix_columns(random_matrix(rng, F, 3, rng.randint(0, 2)))
            assert preimage(R, S_tgt) == dom(restrict_target(R, S_tgt))
            assert image(R, S_src) == img(restrict_source(R, S_src))


def test_kernel_and_multivalued_part():
    R = LinearRelation.from_pairs(2, 2, [[1, 0, 0, 0], [0, 0, 0, 1], [0, 1, 1, 0]])
    assert ker(R) == Subspace(2, [[1, 0]])
    assert mul(R) == Subspace(2, [[0, 1]])


# -- regularization ------------------------------------------------------------------------

def test_regular_part_of_an_invertible_graph_is_the_map():
    T = Matrix.from_rows([[2, 1], [0, 2]])
    reg = regularize(from_graph(T))
    assert reg.dim_reg == 2 and similarity_equal(reg.T, T)


def test_nilpotent_and_zero_relations_have_no_regular_part():
    N = Matrix.from_rows([[0, 1, 0], [0, 0, 1], [0, 0, 0]])
    assert regularize(from_graph(N)).dim_reg == 0
    assert regularize(LinearRelation(2, 2, Subspace.zero(4))).dim_reg == 0
    # everything related to everything: D is the whole space but equals K+ + K-
    assert regularize(LinearRelation(2, 2, Subspace.full(4))).dim_reg == 0


def test_regularization_strips_nilpotent_and_junk_summands():
    T = Matrix.from_rows([[3, 1], [0, 3]])
    N = from_graph(Matrix.from_rows([[0, 1], [0, 0]]))
    R = direct_sum(direct_sum(from_graph(T), N), dagger(N))
    reg = regularize(R)
    assert reg.dim_reg == 2 and similarity_equal(reg.T, T)


def test_regular_subspaces_hand_example():
    # e1 -> e1 (regular), e2 -> 0 (kernel), 0 -> e3 (multivalued)
    R = LinearRelation.from_pairs(3, 3, [[1, 0, 0, 1, 0, 0], [0, 1, 0, 0, 0, 0], [0, 0, 0, 0, 0, 1]])
    D, kp, km = regular_subspaces(R)
    assert kp == Subspace(3, [[0, 1, 0]])
    assert km == Subspace(3, [[0, 0, 1]])
    assert D.contains([1, 0, 0])
    assert regularize(R).dim_reg == 1


def test_regular_part_witnesses_relation():
    rng = random.Random(11)
    for _ in range(30):
        R = random_endorelation(rng, QQ)
        reg = regularize(R)
        D, kp, km = reg.witness_D, reg.witness_Kplus, reg.witness_Kminus
        assert reg.dim_reg <= D.dim
        assert reg.dim_reg == D.dim - (D & (kp + km)).dim


def test_direct_sum_of_relations_adds_cells():
    rng = random.Random(12)
    for _ in range(20):
        R1, R2 = random_endorelation(rng, GF(5), 4), random_endorelation(rng, GF(5), 4)
        a, b = jordan_cells(regularize(R1).T), jordan_cells(regularize(R2).T)
        both = jordan_cells(regularize(direct_sum(R1, R2)).T)
        assert both.dim == a.dim + b.dim
        assert sorted(c.render() for c in both.jordan_cells) == \
            sorted(c.render() for c in a.jordan_cells + b.jordan_cells)


def test_dagger_inverts_the_regular_part():
    rng = random.Random(13)
    for _ in range(20):
        R = random_endorelation(rng, QQ)
        fwd = jordan_cells(regularize(R).T)
        back = jordan_cells(regularize(dagger(R)).T)
        assert [c.render() for c in back.jordan_cells] == [c.render() for c in inverse_cells(fwd)]


def test_conjugation_preserves_the_class():
    rng = random.Random(14)
    for _ in range(20):
        R = random_endorelation(rng, QQ, 5)
        omega = random_invertible(rng, QQ, R.dim_src)
        assert similarity_equal(regularize(R).T, regularize(conjugate(R, omega)).T)


@pytest.mark.parametrize("k", [2, 3])
def test_cyclic_rotation_preserves_the_class(k):
    rng = random.Random(15 + k)
    for _ in range(15):
        links = random_cycle(rng, GF(3), k)
        T0 = regularize(compose_all(links)).T
        T1 = regularize(compose_all(links[1:] + links[:1])).T
        assert similarity_equal(T0, T1)


def test_endorelation_required():
    with pytest.raises(ValueError):
        regularize(random_relation(random.Random(1), QQ, 2, 3))
