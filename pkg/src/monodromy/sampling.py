"""Seeded random matrices, pairs and relations for property checks."""

from __future__ import annotations

import random
from typing import List, Tuple

from .linalg import Field, Matrix, inverse
from .relations import LinearRelation, compose, conjugate, direct_sum, from_cospan, from_graph, from_span


def random_matrix(rng: random.Random, field: Field, rows: int, cols: int, lo: int = -3, hi: int = 3) -> Matrix:
    return Matrix(field, rows, cols, [[field(rng.randint(lo, hi)) for _ in range(cols)] for _ in range(rows)])


def random_low_rank(rng: random.Random, field: Field, rows: int, cols: int, rank: int,
                    lo: int = -3, hi: int = 3) -> Matrix:
    if rank == 0 or rows == 0 or cols == 0:
        return Matrix.zeros(rows, cols, field)
    return random_matrix(rng, field, rows, rank, lo, hi) @ random_matrix(rng, field, rank, cols, lo, hi)


def random_invertible(rng: random.Random, field: Field, n: int, lo: int = -3, hi: int = 3) -> Matrix:
    while True:
        M = random_matrix(rng, field, n, n, lo, hi)
        if M.rank() == n:
            return M


def random_pair(rng: random.Random, field: Field, max_dim: int = 8, lo: int = -3, hi: int = 3
                ) -> Tuple[Matrix, Matrix]:
    """Two ``m x n`` matrices with ``m, n <= max_dim``.

    Half of the time one matrix is given a random (usually deficient) rank so
    that all three modifications get exercised; entries of the factors stay in
    ``[lo, hi]``.
    """
    m, n = rng.randint(0, max_dim), rng.randint(0, max_dim)
    A = random_matrix(rng, field, m, n, lo, hi)
    B = random_matrix(rng, field, m, n, lo, hi)
    roll = rng.random()
    if roll < 0.25:
        A = random_low_rank(rng, field, m, n, rng.randint(0, min(m, n)), lo, hi)
    elif roll < 0.5:
        B = random_low_rank(rng, field, m, n, rng.randint(0, min(m, n)), lo, hi)
    return A, B


def random_relation(rng: random.Random, field: Field, src: int, tgt: int, lo: int = -3, hi: int = 3
                    ) -> LinearRelation:
    """Span of a random number of random pairs: covers graphs, partial maps and junk."""
    k = rng.randint(0, src + tgt)
    return from_span(random_matrix(rng, field, src, k, lo, hi), random_matrix(rng, field, tgt, k, lo, hi))


def random_endorelation(rng: random.Random, field: Field, max_dim: int = 6, lo: int = -3, hi: int = 3
                        ) -> LinearRelation:
    """An endorelation of ``field^n`` with a planted regular part.

    A random invertible block is summed with a random (often degenerate)
    relation and the result is conjugated by a random invertible matrix, so
    the regular part is usually nontrivial but not visible in coordinates.
    """
    k = rng.randint(0, max_dim // 2)
    j = rng.randint(0 if k else 1, max_dim - k)
    core = from_graph(random_invertible(rng, field, k, lo, hi)) if k else None
    noise = random_relation(rng, field, j, j, lo, hi) if rng.random() < 0.5 else \
        from_cospan(*_pair_with_dims(rng, field, rng.randint(0, max_dim), j, lo, hi))
    R = direct_sum(core, noise) if core is not None else noise
    return conjugate(R, random_invertible(rng, field, R.dim_src, lo, hi))


def _pair_with_dims(rng, field, m, n, lo, hi):
    return random_matrix(rng, field, m, n, lo, hi), random_matrix(rng, field, m, n, lo, hi)


def random_cycle(rng: random.Random, field: Field, k: int, max_dim: int = 5, lo: int = -3, hi: int = 3
                 ) -> List[LinearRelation]:
    """Relations ``R_i: V_i -> V_{i+1}`` (indices mod ``k``).

    Each link is an invertible core plus a random junk relation, written in
    random bases on both sides, so the composite around the cycle usually has
    a nontrivial regular part.
    """
    core = rng.randint(0, max_dim // 2)
    junk = [rng.randint(0 if core else 1, max_dim - core) for _ in range(k)]
    frames = [random_invertible(rng, field, core + j, lo, hi) for j in junk]
    out = []
    for i in range(k):
        nxt = (i + 1) % k
        parts = [random_relation(rng, field, junk[i], junk[nxt], lo, hi)]
        if core:
            parts.insert(0, from_graph(random_invertible(rng, field, core, lo, hi)))
        R = direct_sum(*parts) if len(parts) == 2 else parts[0]
        out.append(compose(compose(from_graph(inverse(frames[i])), R), from_graph(frames[nxt])))
    return out
