import random

import pytest
import sympy
from sympy.matrices.normalforms import smith_normal_form
from hypothesis import given, settings
from hypothesis import strategies as st

from smallmodel.normalform import (
    DEFAULT_BIT_BOUND,
    PivotExplosion,
    invariant_factors,
    rank_mod_p,
)


def cols_from_dense(rows):
    """Dense row-major matrix -> sparse column list."""
    if not rows:
        return []
    ncols = len(rows[0])
    return [
        {i: rows[i][j] for i in range(len(rows)) if rows[i][j]}
        for j in range(ncols)
    ]


def test_identity():
    assert invariant_factors(cols_from_dense([[1, 0], [0, 1]])) == [1, 1]


def test_diagonal_divisibility():
    # diag(2, 3) has Smith form diag(1, 6)
    assert invariant_factors(cols_from_dense([[2, 0], [0, 3]])) == [1, 6]


def test_zero_matrix():
    assert invariant_factors([{}, {}, {}]) == []


def test_known_torsion():
    # boundary matrix of the projective plane yields a factor 2
    m = [[2, 0], [0, 1]]
    assert invariant_factors(cols_from_dense(m)) == [1, 2]


def test_rank_mod_p_drops_on_divisor():
    cols = cols_from_dense([[2, 0], [0, 1]])
    assert rank_mod_p(cols, 2) == 1
    assert rank_mod_p(cols, 3) == 2


def test_pivot_explosion_is_loud():
    with pytest.raises(PivotExplosion):
        invariant_factors(cols_from_dense([[1 << 40, 3], [5, 7]]), bit_bound=16)


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10**6))
def test_against_sympy_smith_form(seed):
    rng = random.Random(seed)
    nr = rng.randint(1, 5)
    nc = rng.randint(1, 5)
    dense = [[rng.randint(-6, 6) for _ in range(nc)] for _ in range(nr)]
    mine = invariant_factors(cols_from_dense(dense), bit_bound=DEFAULT_BIT_BOUND)
    M = sympy.Matrix(dense)
    smith = smith_normal_form(M)
    theirs = sorted(abs(smith[i, i]) for i in range(min(nr, nc)) if smith[i, i] != 0)
    assert sorted(mine) == theirs
    assert len(mine) == M.rank()


def dense_rank_mod_p(rows, p):
    """Plain dense row echelon over F_p, as an independent oracle."""
    work = [[x % p for x in r] for r in rows]
    rank = 0
    col = 0
    ncols = len(work[0]) if work else 0
    while rank < len(work) and col < ncols:
        piv = next((i for i in range(rank, len(work)) if work[i][col]), None)
        if piv is None:
            col += 1
            continue
        work[rank], work[piv] = work[piv], work[rank]
        inv = pow(work[rank][col], p - 2, p)
        work[rank] = [x * inv % p for x in work[rank]]
        for i in range(len(work)):
            if i != rank and work[i][col]:
                f = work[i][col]
                work[i] = [(a - f * b) % p for a, b in zip(work[i], work[rank])]
        rank += 1
        col += 1
    return rank


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10**6), st.sampled_from([2, 3, 5]))
def test_rank_mod_p_against_dense_elimination(seed, p):
    rng = random.Random(seed)
    nr = rng.randint(1, 5)
    nc = rng.randint(1, 5)
    dense = [[rng.randint(-6, 6) for _ in range(nc)] for _ in range(nr)]
    assert rank_mod_p(cols_from_dense(dense), p) == dense_rank_mod_p(dense, p)
