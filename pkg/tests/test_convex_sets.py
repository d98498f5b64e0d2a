from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from genproj.convex_sets import (
    Ball,
    HullOfPoints,
    Hyperplane,
    NonnegCone,
    NonposCone,
    SBall,
    Simplex,
    Unbounded,
    ZSet,
    generators,
    lifted_program,
    membership,
    set_from_json,
    set_to_json,
    support,
    vertices,
)
from genproj.exact_core import FinSeq, TailSeq, norm_l1
from genproj.lp import OPTIMAL, lp_solve

small = st.fractions(min_value=-3, max_value=3, max_denominator=2)
vec3 = st.lists(small, min_size=3, max_size=3).map(FinSeq.from_list)
SETS = [Ball(2, dim=3), Simplex(1, dim=3), Hyperplane(1, dim=3), NonnegCone(3), NonposCone(3),
        HullOfPoints([FinSeq({1: 1}), FinSeq({2: -1, 3: 1}), FinSeq({1: -1, 2: 1})], dim=3)]


def by_definition(c, y):
    vals = [y[i] for i in range(1, 4)]
    return {
        "ball": norm_l1(y) <= 2,
        "simplex": all(v >= 0 for v in vals) and sum(vals) == 1,
        "hyperplane": sum(vals) == 1,
        "nonneg_cone": all(v >= 0 for v in vals),
        "nonpos_cone": all(v <= 0 for v in vals),
    }.get(c.variant)


@pytest.mark.parametrize("c", SETS[:5], ids=lambda c: c.variant)
@given(y=vec3)
def test_membership_matches_definition(c, y):
    assert membership(c, y) == by_definition(c, y)


@pytest.mark.parametrize("c", SETS, ids=lambda c: c.variant)
@given(y=vec3)
def test_lp_encoding_agrees_with_membership(c, y):
    prog = lifted_program(c, with_norm=False)
    for i in range(1, 4):
        prog.lp.add_row(prog.y_coeffs({i: Fraction(1)}), "=", y[i])
    assert (lp_solve(prog.lp).status == OPTIMAL) == membership(c, y)


def test_points_beyond_budget_are_rejected():
    assert not membership(Simplex(1, dim=2), FinSeq({3: 1}))
    assert membership(Simplex(1, dim=3), FinSeq({3: 1}))


def test_hull_vertices_drop_interior_points():
    c = HullOfPoints([FinSeq({1: 2}), FinSeq({2: 2}), FinSeq({1: 1, 2: 1}), FinSeq()])
    assert set(vertices(c)) == {FinSeq({1: 2}), FinSeq({2: 2}), FinSeq()}
    with pytest.raises(ValueError):
        vertices(NonnegCone(2))


def test_support_function():
    assert support(Ball(2, dim=3), TailSeq([1, -3])) == 6
    assert support(NonnegCone(2), TailSeq([1, -1])) is Unbounded
    assert support(NonnegCone(2), TailSeq([-1, 0])) == 0
    assert support(Hyperplane(1, 3), TailSeq.constant(1)) == 1


def test_hyperplane_generators_span_lineality():
    pts, rays = generators(Hyperplane(2, dim=3))
    assert pts == [FinSeq({1: 2})] and len(rays) == 4


def test_c0_sets():
    assert membership(SBall(1), TailSeq([2, 0, 1]))
    assert not membership(SBall(1), TailSeq([3]))
    assert membership(ZSet(1), TailSeq([0, 1]))
    assert not membership(ZSet(1), TailSeq())


@pytest.mark.parametrize("c", SETS + [Simplex(2, dim=3, with_zero_slot=True), SBall(2), ZSet(1)],
                         ids=lambda c: c.variant)
def test_json_round_trip(c):
    assert set_from_json(set_to_json(c)) == c


def test_bad_descriptors():
    with pytest.raises(ValueError):
        Ball(0)
    assert HullOfPoints([FinSeq({5: 1})], dim=2).dim == 5
    with pytest.raises(ValueError):
        set_from_json({"variant": "torus"})
    with pytest.raises(ValueError):
        set_from_json({"variant": "hyperplane", "param": "2"})
    with pytest.raises(ValueError):
        set_from_json({"variant": "ball"})
