from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from smallmodel.cupforms import (
    INCONCLUSIVE,
    OBSTRUCTED,
    SATISFIABLE,
    FormError,
    RankOneRing,
    TripleForm,
    compression_criterion_b2,
    find_betas,
    projective_space_ring,
    rank_one_obstruction,
    rational_is_square,
    rational_sqrt,
    verify_witness,
)

rationals = st.fractions(
    min_value=-50, max_value=50, max_denominator=40
)


def test_rank_one_projective_spaces():
    for n in (3, 5, 7):
        assert rank_one_obstruction(projective_space_ring(n))["status"] == OBSTRUCTED


def test_rank_one_zero_top_inconclusive():
    assert rank_one_obstruction(RankOneRing(2, 3, 0))["status"] == INCONCLUSIVE


def test_rank_one_rescaling_invariance():
    for scale in (Fraction(2), Fraction(-1, 3), Fraction(7, 5)):
        base = rank_one_obstruction(RankOneRing(2, 4, Fraction(3)))
        scaled = rank_one_obstruction(RankOneRing(2, 4, Fraction(3) * scale ** 4))
        assert base["status"] == scaled["status"]


def test_rank_one_m_guard():
    with pytest.raises(FormError):
        RankOneRing(2, 1, 1)


def test_triple_form_normalization_enforced():
    with pytest.raises(FormError):
        TripleForm(2, 0, 0, 0)


def test_rational_square_basics():
    assert rational_is_square(Fraction(4, 9))
    assert rational_is_square(0)
    assert not rational_is_square(2)
    assert not rational_is_square(Fraction(-1, 4))
    assert rational_sqrt(Fraction(49, 4)) == Fraction(7, 2)


@settings(max_examples=300, deadline=None)
@given(rationals)
def test_square_round_trip(s):
    r = s * s
    assert rational_is_square(r)
    assert rational_sqrt(r) == abs(s)
    if s != 0:
        assert not rational_is_square(2 * r)
        assert not rational_is_square(-r)


@settings(max_examples=200, deadline=None)
@given(rationals, rationals)
def test_quadratic_identity(x, s):
    # whenever s = x s^2 + y, the discriminant identity holds
    y = s - x * s * s
    assert (2 * x * s - 1) ** 2 == 1 - 4 * x * y


def test_find_betas_examples():
    assert find_betas(TripleForm(1, 0, 0, 1)) == [(Fraction(1), Fraction(-1))]
    assert find_betas(TripleForm(1, 2, 1, 0)) == [(Fraction(0), Fraction(1))]
    # irreducible cubic and no degree-drop: no candidates
    assert find_betas(TripleForm(1, 0, 1, 1)) == []
    # degenerate pairing: beta = e2 has beta^2 pairing to zero, filtered
    assert find_betas(TripleForm(1, 0, 0, 0)) == []


def test_satisfiable_with_exact_witness():
    v = compression_criterion_b2(TripleForm(1, 1, 1, 0))
    assert v.status == SATISFIABLE
    assert v.witness.s == 1 and v.witness.x == 1 and v.witness.y == 0
    assert verify_witness(TripleForm(1, 1, 1, 0), v.witness) == []


def test_obstructed_by_nonsquare():
    v = compression_criterion_b2(TripleForm(1, 2, 1, 0))
    assert v.status == OBSTRUCTED
    assert any("-2" in note for note in v.notes)


def test_degenerate_pairing_noted():
    v = compression_criterion_b2(TripleForm(1, 0, 0, 0))
    assert v.status == OBSTRUCTED
    assert any("no rational beta" in note for note in v.notes)


def test_json_round_trip():
    T = TripleForm.from_json({"c111": "1", "c112": "2", "c122": "1", "c222": "0"})
    assert T.c112 == 2
    assert T.to_json()["c122"] == "1"


def test_triple_evaluation_symmetry():
    T = TripleForm(1, Fraction(1, 2), 3, Fraction(-2, 7))
    u, v, w = (1, 2), (Fraction(1, 3), -1), (0, 5)
    assert T.triple(u, v, w) == T.triple(w, u, v) == T.triple(v, w, u)
