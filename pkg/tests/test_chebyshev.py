import numpy as np
import pytest
from scipy.optimize import linprog

from genproj.chebyshev import (
    DiscreteMeasure,
    GridFunction,
    Polynomial,
    agreement_set,
    alternation_points,
    duality_measure,
    equioscillation_verify,
    gmp_families,
    gmp_membership,
    gmp_scaled,
    grid_function,
    maximizing_set,
    parse_function,
    remez,
)

TOL = 1e-8


def minimax_lp(f, n, m=4001):
    """Discrete best uniform approximation on m points, as an LP (HiGHS)."""
    t = np.linspace(0.0, 1.0, m)
    vand = np.column_stack([t ** k for k in range(n + 1)])
    ones = np.ones((m, 1))
    a_ub = np.vstack([np.hstack([vand, -ones]), np.hstack([-vand, -ones])])
    fv = f(t)
    b_ub = np.concatenate([fv, -fv])
    cost = np.zeros(n + 2)
    cost[-1] = 1.0
    res = linprog(cost, A_ub=a_ub, b_ub=b_ub, bounds=[(None, None)] * (n + 1) + [(0, None)],
                  method="highs")
    assert res.status == 0
    return res.fun


@pytest.mark.parametrize("expr, points", [
    ("t", [1.0]),
    ("t*(1-t)", [0.5]),
    ("cos(4*pi*t)", [0.0, 0.25, 0.5, 0.75, 1.0]),
])
def test_maximizing_sets(expr, points):
    assert maximizing_set(grid_function(expr), TOL) == pytest.approx(points, abs=1e-9)


def test_maximizing_set_refines_off_grid_peaks():
    f = grid_function("sin(pi*t*1000/333)")
    (s,) = [p for p in maximizing_set(f) if 0.1 < p < 0.2]
    assert abs(s - 0.1665) < 1e-7 and abs(f.norm - 1.0) < 1e-12


def test_zero_function_has_no_maximizing_set():
    with pytest.raises(ValueError):
        maximizing_set(grid_function("0*t"))


@pytest.mark.parametrize("expr, pts, weights, atoms", [
    ("t", [1.0], [1.0], [(1.0, 1.0)]),
    ("cos(4*pi*t)", [0.0, 0.25], [0.5, 0.5], [(0.0, 0.5), (0.25, -0.5)]),
    ("1-2*t", [0.0, 1.0], [0.5, 0.5], [(0.0, 0.5), (1.0, -0.5)]),
])
def test_duality_measure_examples(expr, pts, weights, atoms):
    mu = duality_measure(grid_function(expr), pts, weights)
    assert np.allclose(mu.atoms, atoms, atol=1e-12)


def test_duality_measure_rejects_bad_input():
    f = grid_function("t")
    with pytest.raises(ValueError):
        duality_measure(f, [0.5], [1.0])
    with pytest.raises(ValueError):
        duality_measure(f, [1.0], [0.5])


def test_random_weightings_are_duality_measures():
    f = grid_function("cos(4*pi*t)")
    pts = maximizing_set(f)
    rng = np.random.default_rng(3)
    for _ in range(50):
        w = rng.random(len(pts)) + 1e-3
        w /= w.sum()
        mu = duality_measure(f, pts, list(w))
        assert abs(mu.pair(f) - f.norm ** 2) <= TOL * f.norm ** 2
        assert abs(mu.total_variation - f.norm) <= TOL
        assert all(abs(abs(f(t)) - f.norm) <= TOL for t, _ in mu.atoms)


def test_unique_maximizer_admits_one_single_atom_measure():
    f = grid_function("t*(1-t)")
    mu = duality_measure(f, maximizing_set(f), [1.0])
    assert mu.atoms == ((0.5, 0.25),)
    with pytest.raises(ValueError):
        duality_measure(f, [0.4], [1.0])


@pytest.mark.parametrize("expr, n, level, coeffs", [
    ("t^2", 1, 0.125, [-0.125, 1.0]),
    ("t", 0, 0.5, [0.5]),
    ("t", 1, 0.0, [0.0, 1.0]),
])
def test_remez_examples(expr, n, level, coeffs):
    f = grid_function(expr)
    p, cert = remez(f, n)
    assert abs(cert.level - level) < 1e-9
    assert np.allclose(p.coeffs, coeffs, atol=1e-9)


def test_remez_certificate_alternates():
    f = grid_function("t^2")
    p, cert = remez(f, 1)
    assert np.allclose(cert.points, [0.0, 0.5, 1.0], atol=1e-9)
    r = f - p
    for i, t in enumerate(cert.points):
        assert abs(r(t) - cert.sign * cert.level * (-1) ** i) < 1e-9


@pytest.mark.parametrize("expr, n", [("exp(t)", 2), ("abs(t-0.3)", 1), ("sin(3*t)", 3), ("t^5", 2)])
def test_remez_matches_minimax_lp(expr, n):
    f = grid_function(expr)
    p, cert = remez(f, n)
    err = (f - p).norm
    assert abs(err - cert.level) < 1e-8
    assert equioscillation_verify(f, p, n)
    assert len(alternation_points(f, p)) >= n + 2
    assert abs(err - minimax_lp(parse_function(expr), n)) < 1e-6


def test_random_polynomials_never_beat_remez():
    f = grid_function("exp(t)*cos(2*t)")
    rng = np.random.default_rng(1)
    for n in (1, 2, 3):
        p, cert = remez(f, n)
        for _ in range(20):
            q = Polynomial(np.array(p.coeffs) + rng.normal(scale=0.05, size=n + 1))
            assert (f - q).norm >= cert.level - 1e-12


def test_equioscillation_examples():
    sq = grid_function("t^2")
    assert equioscillation_verify(sq, Polynomial([-0.125, 1.0]), 1)
    assert not equioscillation_verify(sq, Polynomial([0.0, 1.0]), 1)
    line = grid_function("t")
    assert equioscillation_verify(line, Polynomial([0.5]), 0)
    assert alternation_points(line, Polynomial([0.5])) == pytest.approx([0.0, 1.0])


def test_membership_examples():
    f = grid_function("t")
    assert gmp_membership(f, Polynomial([1.0]))
    assert not gmp_membership(f, Polynomial([0.0]))
    assert gmp_membership(f, Polynomial([0.3, 0.7]))
    assert not gmp_membership(f, Polynomial([0.0, -1.0]))


def test_line_family_for_endpoint_maximizer():
    f = grid_function("t")
    fam = gmp_families(f, 1, count=25)
    assert len({q.coeffs for q in fam}) == 25
    assert all(gmp_membership(f, q) and abs(q(1.0) - 1.0) < 1e-12 for q in fam)
    assert all(-1 < q(0.0) < 1 for q in fam)


def test_parabola_family_for_interior_maximizer():
    f = grid_function("4*t*(1-t)")
    fam = gmp_families(f, 2, count=4)
    assert len(fam) == 4
    for q in fam:
        assert gmp_membership(f, q)
        a, b, c = q.coeffs
        assert abs(-b / (2 * c) - 0.5) < 1e-12 and abs(q(0.5) - 1.0) < 1e-12


def test_degree_zero_family_is_the_constant():
    f = grid_function("cos(4*pi*t)")
    (q,) = gmp_families(f, 0)
    assert q.coeffs == pytest.approx((1.0,))


@pytest.mark.parametrize("p, expected", [
    (Polynomial([0.0, 2.0]), (0.0, 1.0)),
    (Polynomial([0.0, -3.0]), (0.0, 1.0)),
    (Polynomial([0.0, 1.0, -1.0]), None),
])
def test_scaled_members(p, expected):
    q = gmp_scaled(grid_function("t"), p)
    if expected is None:
        assert q is None
    else:
        assert q.coeffs == pytest.approx(expected, abs=1e-12)


@pytest.mark.parametrize("g, expected", [("t", [1.0]), ("1+0*t", [1.0]), ("-t", [])])
def test_agreement_sets(g, expected):
    assert agreement_set(grid_function("t"), grid_function(g)) == pytest.approx(expected)


@pytest.mark.parametrize("expr", ["t +", "import os", "__import__('os')", "t.real", "foo(t)", "x*2",
                                  "[t]", "lambda: 1"])
def test_parser_rejects(expr):
    with pytest.raises(ValueError):
        parse_function(expr)


def test_parser_accepts_unicode_operators():
    f = parse_function("2×t÷4 − t^2")
    assert f(np.array(0.5)) == pytest.approx(0.0)
    assert parse_function("pow(t, 3) + e")(np.array(1.0)) == pytest.approx(1 + np.e)


def test_small_grids_rejected():
    with pytest.raises(ValueError):
        GridFunction(lambda t: t, 10)


def test_measure_json():
    mu = DiscreteMeasure(((0.0, 0.5),))
    assert mu.to_json() == {"atoms": [[0.0, 0.5]]}
