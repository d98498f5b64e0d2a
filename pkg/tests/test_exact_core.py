from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from genproj.exact_core import (
    FinSeq,
    TailSeq,
    as_rational,
    finseq_from_json,
    finseq_to_json,
    norm_l1,
    norm_l1_with_zero,
    norm_sup,
    pair,
    pair_c,
    rat_from_json,
    rat_to_json,
    tailseq_from_json,
    tailseq_to_json,
)

rats = st.fractions(min_value=-20, max_value=20, max_denominator=12)
finseqs = st.dictionaries(st.integers(1, 8), rats, max_size=6).map(FinSeq)
tailseqs = st.builds(TailSeq, st.lists(rats, max_size=6), rats)


def test_scalars_refuse_floats_and_bools():
    with pytest.raises(TypeError):
        as_rational(0.5)
    with pytest.raises(TypeError):
        as_rational(True)
    assert as_rational("3/6") == Fraction(1, 2)
    with pytest.raises(ValueError):
        rat_from_json(0.25)


def test_finseq_indexing_and_zero_slot():
    x = FinSeq({2: 3, 5: 0}, zero=1)
    assert x.support == (2,) and x.max_index == 2
    assert x[0] == 1 and x[1] == 0 and x[2] == 3
    assert norm_l1(x) == 3 and norm_l1_with_zero(x) == 4
    with pytest.raises(ValueError):
        FinSeq({0: 1})
    with pytest.raises(ValueError):
        pair(TailSeq.constant(1), x)


def test_tailseq_normalizes_trailing_tail_values():
    t = TailSeq([1, 2, 2, 2], 2)
    assert t.prefix == (Fraction(1),) and t == TailSeq([1], 2)
    assert t[10] == 2 and not t.in_c0 and TailSeq([3]).in_c0


def test_pairings_by_hand():
    phi = TailSeq([3, 1], 0)
    x = FinSeq({1: 1, 3: -2})
    assert pair(phi, x) == 3
    g = FinSeq({1: Fraction(1, 2)}, zero=Fraction(1, 2))
    # the 0 slot pairs with the limit of t
    assert pair_c(g, TailSeq([4], 2)) == Fraction(1, 2) * 4 + Fraction(1, 2) * 2
    assert norm_sup(TailSeq([-5, 1], 2)) == 5


@given(finseqs, finseqs)
def test_finseq_algebra(x, y):
    assert (x + y) - y == x
    assert x - x == FinSeq()
    assert norm_l1(x + y) <= norm_l1(x) + norm_l1(y)
    assert norm_l1(x.scale(-3)) == 3 * norm_l1(x)


@given(tailseqs, finseqs)
def test_holder_inequality(phi, x):
    assert abs(pair(phi, x)) <= norm_sup(phi) * norm_l1(x)


@given(finseqs)
def test_finseq_json_round_trip(x):
    assert finseq_from_json(finseq_to_json(x)) == x


@given(tailseqs)
def test_tailseq_json_round_trip(t):
    assert tailseq_from_json(tailseq_to_json(t)) == t


@given(rats)
def test_rational_json_round_trip(q):
    assert rat_from_json(rat_to_json(q)) == q
