from fractions import Fraction
from itertools import product

import pytest
from hypothesis import given
from hypothesis import strategies as st

from genproj.convex_sets import membership
from genproj.duality import (
    duality_c,
    duality_contains,
    duality_l1,
    identical_points,
    identical_points_l2,
    inverse_duality_contains,
    inverse_duality_solve_beta,
)
from genproj.exact_core import FinSeq, TailSeq, norm_l1, norm_l1_with_zero, norm_sup, pair, pair_c
from genproj.lyapunov import v_eval, v_eval_c, v_value, v_zero_iff_duality

small = st.fractions(min_value=-3, max_value=3, max_denominator=3)
vec3 = st.lists(small, min_size=3, max_size=3).map(FinSeq.from_list)
phi3 = st.builds(TailSeq, st.lists(small, min_size=3, max_size=3), small)


def in_duality_by_definition(phi, x):
    return norm_sup(phi) == norm_l1(x) and pair(phi, x) == norm_l1(x) ** 2


def test_box_of_a_signed_point():
    box = duality_l1(FinSeq({1: 2, 3: -1}))
    assert box.norm_value == 3 and box.fixed_map == {1: 3, 3: -3}
    assert box.free_coords(4) == [2, 4]
    assert duality_contains(box, TailSeq([3, -1, -3, 2], -3))
    assert not duality_contains(box, TailSeq([3, 4, -3], 0))


@given(phi3, vec3)
def test_box_matches_the_definition(phi, x):
    assert duality_contains(duality_l1(x), phi) == in_duality_by_definition(phi, x)


@given(vec3)
def test_box_corners_are_members(x):
    box = duality_l1(x)
    for j in box.vertices(3):
        assert in_duality_by_definition(j, x)


@given(vec3, vec3)
def test_pairing_extremes_match_corner_scan(x, d):
    box = duality_l1(x)
    vals = [pair(j, d) for j in box.vertices(3)]
    assert box.min_pairing(d) == min(vals) and box.max_pairing(d) == max(vals)


@given(vec3, vec3)
def test_identical_points_against_corner_search(x, y):
    # J(x) and J(y) are boxes, so they meet iff some corner of J(x) lies in J(y)
    # or vice versa; a small lattice of box points is an exhaustive witness here
    bx = duality_l1(x)
    lattice = []
    if bx.free_bound == 0:
        lattice = [TailSeq()]
    else:
        b = bx.free_bound
        for vals in product((-b, 0, b), repeat=3):
            free = {i: v for i, v in zip(range(1, 4), vals) if i not in bx.fixed_map}
            lattice.append(bx.element(free, 3))
    brute = any(duality_contains(duality_l1(y), j) for j in lattice)
    assert identical_points(x, y) == brute


def test_l2_duality_is_the_identity():
    x = FinSeq({1: 1, 2: -1})
    assert identical_points_l2(x, x) and not identical_points_l2(x, x.scale(2))


@given(st.fractions(min_value=Fraction(1, 3), max_value=4, max_denominator=3), vec3)
def test_inverse_duality_of_beta(r, y):
    beta = TailSeq.constant(r)
    in_simplex = all(v >= 0 for _, v in y.items()) and norm_l1(y) == r
    assert membership(inverse_duality_solve_beta(r), y) == in_simplex == inverse_duality_contains(beta, y)


@given(st.fractions(min_value=Fraction(1, 3), max_value=4, max_denominator=3), vec3, small)
def test_duality_of_beta_in_c(r, g, g0):
    g = FinSeq(dict(g.items()), zero=g0)
    beta = TailSeq.constant(r)
    direct = norm_l1_with_zero(g) == r and pair_c(g, beta) == r * r
    assert membership(duality_c(beta), g) == direct


def test_duality_c_rejects_non_constant():
    with pytest.raises(ValueError):
        duality_c(TailSeq([1], 2))


@given(phi3, vec3)
def test_lyapunov_bounds(phi, x):
    a, b = norm_sup(phi), norm_l1(x)
    v = v_value(phi, x)
    assert (a - b) ** 2 <= v <= (a + b) ** 2
    assert v_eval(phi, x).lower_bound == (a - b) ** 2


@given(phi3, vec3)
def test_zero_value_iff_duality(phi, x):
    assert v_zero_iff_duality(phi, x) == in_duality_by_definition(phi, x)


def test_lyapunov_on_c():
    g = FinSeq({1: 1}, zero=1)
    t = TailSeq([1], 0)
    # ||g|| = 2, <g, t> = 1, ||t|| = 1
    assert v_eval_c(g, t).value == 4 - 2 + 1
