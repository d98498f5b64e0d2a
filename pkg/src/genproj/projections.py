"""Metric projection P_C, generalized projection pi_C and generalized metric
projection Pi_C onto polyhedral subsets of l1, plus the c0 cases.

Generalized projection
    V(phi, .) = ||phi||^2 - 2<phi, .> + ||.||^2 is minimized through the
    planar set Q = {(s, w) : w = <phi, y>, y in C, ||y|| <= s}. Its upper
    boundary w_max(s) is concave and piecewise linear, so the optimum of
    s^2 - 2 w over Q sits on a polyline whose vertices are found exactly by
    slope queries to the LP kernel (a quickhull in two dimensions). The
    solution set is then the polyhedron {y in C : ||y|| <= s*, <phi, y> >= w*}.

Generalized metric projection
    Pi_C(x) is the union of pi_C(jx) over the duality box of x. Values are
    taken over the box corners (for fixed y the objective is linear in jx);
    membership in the union is decided by an LP over the box instead.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Callable, Dict, List, Optional, Sequence, Tuple, Union

from .convex_sets import (
    ConvexSetDesc,
    HullOfPoints,
    LiftedProgram,
    lifted_program,
    membership,
)
from .duality import DualityBox, duality_l1
from .exact_core import (
    FinSeq,
    RationalLike,
    TailSeq,
    as_rational,
    finseq_to_json,
    norm_l1,
    norm_sup,
    rat_to_json,
    tailseq_to_json,
)
from .lp import OPTIMAL, lp_solve
from .lyapunov import v_eval_c, v_value

MAX_BOX_CORNERS = 1 << 12


@dataclass(frozen=True)
class ProjectionResult:
    """Outcome of one projection solve.

    ``stable`` is False when re-solving at twice the budget changed the
    optimal value (the truncation matters); ``doubled_value`` holds that
    value. ``contains`` is the exact membership oracle of the solution set
    at ``dimension_budget_used``.
    """

    kind: str
    optimal_value: Union[Fraction, float]
    minimizer: Optional[FinSeq]
    attained: bool
    set_tag: Optional[str]
    dimension_budget_used: int
    stable: bool = True
    doubled_value: Optional[Fraction] = None
    witnesses: Tuple = ()
    oracle: Optional[Callable[[FinSeq], bool]] = field(default=None, compare=False, repr=False)

    def contains(self, y: FinSeq) -> bool:
        if self.oracle is None:
            raise ValueError("this result carries no membership oracle")
        return self.oracle(y)

    def to_json(self) -> dict:
        val = self.optimal_value
        out = {
            "kind": self.kind,
            "value": rat_to_json(val) if isinstance(val, Fraction) else val,
            "minimizer": finseq_to_json(self.minimizer) if self.minimizer is not None else None,
            "attained": self.attained,
            "set_tag": self.set_tag,
            "budget": self.dimension_budget_used,
            "stable": self.stable,
            "witnesses": [_witness_json(w) for w in self.witnesses],
        }
        if self.doubled_value is not None:
            out["doubled_value"] = rat_to_json(self.doubled_value)
        return out


def _witness_json(w):
    if isinstance(w, TailSeq):
        return tailseq_to_json(w)
    if isinstance(w, FinSeq):
        return finseq_to_json(w)
    if isinstance(w, tuple):
        return [_witness_json(v) for v in w]
    if isinstance(w, Fraction):
        return rat_to_json(w)
    return w


# budgets ------------------------------------------------------------------------

def _budget(c: ConvexSetDesc, budget: Optional[int], points=(), functionals=()) -> int:
    n = c.dim if budget is None else budget
    sizes = [n, c.min_dim]
    sizes += [p.max_index for p in points]
    sizes += [len(f.prefix) for f in functionals]
    return max(sizes)


def _doubles(c: ConvexSetDesc) -> bool:
    # a hull does not change with the budget once its points fit
    return c.variant != "hull"


def _ceil_sqrt(q: Fraction) -> int:
    k = math.isqrt(math.ceil(q))
    return k if k * k >= q else k + 1


def _dot(weights: Dict[int, Fraction], y: FinSeq) -> Fraction:
    return sum((w * y[i] for i, w in weights.items()), Fraction(0))


def _weights(phi: TailSeq, n: int) -> Dict[int, Fraction]:
    return {i: phi[i] for i in range(1, n + 1) if phi[i] != 0}


# generalized projection -----------------------------------------------------------

@dataclass
class _GenSolve:
    value: Fraction
    minimizer: FinSeq
    norm: Fraction
    pairing: Fraction


class _Frontier:
    """LP oracle for the upper boundary of Q = {(s, <phi, y>)}."""

    def __init__(self, c: ConvexSetDesc, phi: TailSeq):
        self.prog = lifted_program(c)
        self.weights = _weights(phi, c.dim)
        self.wcoef = self.prog.y_coeffs(self.weights)
        self.cap: Optional[Fraction] = None

    def min_norm(self):
        lp = self.prog.lp.copy()
        lp.set_objective({self.prog.norm: 1})
        sol = lp_solve(lp)
        if sol.status != OPTIMAL:
            raise ValueError("the feasible set is empty")
        return sol.value, self.prog.read_y(sol.x)

    def best(self, slope: Fraction, limit: Optional[Fraction] = None):
        """Maximize <phi, y> - slope * s; returns (s, w, y, value)."""
        s = self.prog.norm
        lp = self.prog.lp.copy()
        if self.cap is not None:
            lp.add_row({s: 1}, "<=", self.cap)
        if limit is not None:
            lp.add_row({s: 1}, "<=", limit)
        obj = dict(self.wcoef)
        if slope:
            obj[s] = obj.get(s, Fraction(0)) - slope
        lp.set_objective(obj, maximize=True)
        sol = lp_solve(lp)
        if sol.status != OPTIMAL:
            raise RuntimeError(f"frontier query failed: {sol.status}")
        y = self.prog.read_y(sol.x)
        return sol.x[s], _dot(self.weights, y), y, sol.value


def _solve_gen(c: ConvexSetDesc, phi: TailSeq) -> _GenSolve:
    a = norm_sup(phi)
    fr = _Frontier(c, phi)
    s0, y0 = fr.min_norm()
    if not fr.weights:
        return _GenSolve(a * a + s0 * s0, y0, s0, Fraction(0))
    v0 = a * a - 2 * _dot(fr.weights, y0) + norm_l1(y0) ** 2
    # any minimizer u has (a - ||u||)^2 <= V(phi, u) <= v0
    fr.cap = a + _ceil_sqrt(v0)

    _, w_left, _, _ = fr.best(Fraction(0), limit=s0)
    _, w_right, _, _ = fr.best(Fraction(0))
    points = {s0: w_left, fr.cap: w_right}
    stack = [((s0, w_left), (fr.cap, w_right))] if fr.cap > s0 else []
    while stack:
        (sa, wa), (sb, wb) = stack.pop()
        slope = (wb - wa) / (sb - sa)
        if slope <= 0:
            continue
        sp, wp, _, val = fr.best(slope)
        if val > wa - slope * sa and sa < sp < sb:
            points[sp] = wp
            stack.append(((sa, wa), (sp, wp)))
            stack.append(((sp, wp), (sb, wb)))

    hull = sorted(points.items())
    best_s, best_w = hull[0]
    best_q = best_s * best_s - 2 * best_w
    for (sa, wa), (sb, wb) in zip(hull, hull[1:]):
        slope = (wb - wa) / (sb - sa)
        for s in (sb, slope):
            if sa < s <= sb:
                w = wa + slope * (s - sa)
                q = s * s - 2 * w
                if q < best_q:
                    best_s, best_w, best_q = s, w, q
    _, w_rec, y, _ = fr.best(Fraction(0), limit=best_s)
    if w_rec != best_w:
        raise RuntimeError("frontier recovery mismatch")
    value = a * a + best_q
    if v_value(phi, y) != value:
        raise RuntimeError("recovered point does not attain the optimal value")
    return _GenSolve(value, y, best_s, best_w)


def _lp_extreme(prog: LiftedProgram, weights: Dict[int, Fraction], maximize: bool) -> Optional[Fraction]:
    lp = prog.lp.copy()
    lp.set_objective(prog.y_coeffs(weights), maximize=maximize)
    sol = lp_solve(lp)
    return sol.value if sol.status == OPTIMAL else None


def _recognize(prog: LiftedProgram, rep: FinSeq, contains: Callable[[FinSeq], bool]) -> Optional[str]:
    """Name the solution polyhedron when it is a point or (a part of) a simplex."""
    n = prog.n
    if n <= 8:
        single = True
        for i in range(1, n + 1):
            lo = _lp_extreme(prog, {i: Fraction(1)}, False)
            hi = _lp_extreme(prog, {i: Fraction(1)}, True)
            if lo is None or hi is None or lo != hi:
                single = False
                break
        if single:
            return "singleton"
    rho = norm_l1(rep)
    if rho == 0:
        return None
    ones = {i: Fraction(1) for i in range(1, n + 1)}
    if _lp_extreme(prog, ones, False) != rho or _lp_extreme(prog, ones, True) != rho:
        return None
    for i in range(1, n + 1):
        lo = _lp_extreme(prog, {i: Fraction(1)}, False)
        if lo is None or lo < 0:
            return None
    label = f"D({rat_to_json(rho)})"
    if all(contains(FinSeq.unit(i, rho)) for i in range(1, n + 1)):
        return label
    return "subset:" + label


def _gen_solution_program(c: ConvexSetDesc, phi: TailSeq, sol: _GenSolve) -> LiftedProgram:
    prog = lifted_program(c)
    prog.lp.add_row({prog.norm: 1}, "<=", sol.norm)
    prog.lp.add_row(prog.y_coeffs(_weights(phi, c.dim)), ">=", sol.pairing)
    return prog


def gen_project(c: ConvexSetDesc, phi: TailSeq, budget: Optional[int] = None,
                check_double: bool = True, recognize: bool = True) -> ProjectionResult:
    """Generalized projection pi_C(phi): minimize V(phi, y) over y in C."""
    n = _budget(c, budget, functionals=[phi])
    cn = c.with_dim(n)
    sol = _solve_gen(cn, phi)
    stable, doubled = True, None
    if check_double and _doubles(c):
        doubled = _solve_gen(c.with_dim(2 * n), phi).value
        stable = doubled == sol.value

    def oracle(y: FinSeq) -> bool:
        return y.max_index <= n and membership(cn, y) and v_value(phi, y) == sol.value

    tag = _recognize(_gen_solution_program(cn, phi, sol), sol.minimizer, oracle) if recognize else None
    return ProjectionResult("gen_project", sol.value, sol.minimizer, True, tag, n, stable,
                            doubled, (), oracle)


def solution_set_contains(c: ConvexSetDesc, phi: TailSeq, y: FinSeq,
                          budget: Optional[int] = None,
                          value: Optional[Fraction] = None) -> bool:
    """Is y a minimizer of V(phi, .) over C (at the budget covering y)?"""
    n = _budget(c, budget, points=[y], functionals=[phi])
    cn = c.with_dim(n)
    if not membership(cn, y):
        return False
    if value is None:
        value = _solve_gen(cn, phi).value
    return v_value(phi, y) == value


# metric projection ------------------------------------------------------------------

def _metric_program(c: ConvexSetDesc, x: FinSeq):
    prog = lifted_program(c, with_norm=False)
    lp = prog.lp
    devs = []
    for i in range(1, c.dim + 1):
        a, b = lp.add_var(f"a{i}"), lp.add_var(f"b{i}")
        row = prog.y_coeffs({i: Fraction(1)})
        row[a], row[b] = Fraction(1), Fraction(-1)
        lp.add_row(row, "=", x[i])
        devs += [a, b]
    return prog, devs


def _solve_metric(c: ConvexSetDesc, x: FinSeq):
    prog, devs = _metric_program(c, x)
    lp = prog.lp.copy()
    lp.set_objective({j: 1 for j in devs})
    sol = lp_solve(lp)
    if sol.status != OPTIMAL:
        raise ValueError("the feasible set is empty")
    y = prog.read_y(sol.x)
    if norm_l1(x - y) != sol.value:
        raise RuntimeError("metric projection recovery mismatch")
    return sol.value, y


def metric_project(c: ConvexSetDesc, x: FinSeq, budget: Optional[int] = None,
                   check_double: bool = True, recognize: bool = True) -> ProjectionResult:
    """Metric projection P_C(x) in the l1 norm."""
    if x.has_zero_slot:
        raise ValueError("x carries an index-0 entry")
    n = _budget(c, budget, points=[x])
    cn = c.with_dim(n)
    dist, y = _solve_metric(cn, x)
    stable, doubled = True, None
    if check_double and _doubles(c):
        doubled = _solve_metric(c.with_dim(2 * n), x)[0]
        stable = doubled == dist

    def oracle(z: FinSeq) -> bool:
        return z.max_index <= n and membership(cn, z) and norm_l1(x - z) == dist

    tag = None
    if recognize:
        prog, devs = _metric_program(cn, x)
        prog.lp.add_row({j: 1 for j in devs}, "<=", dist)
        tag = _recognize(prog, y, oracle)
    return ProjectionResult("metric_project", dist, y, True, tag, n, stable, doubled, (), oracle)


# generalized metric projection ------------------------------------------------------------

def box_corners(box: DualityBox, c: ConvexSetDesc) -> List[TailSeq]:
    """Corners of the duality box that matter for V over C at its budget.

    When C is invariant under permuting coordinates, corners with the same
    number of +bound free coordinates are equivalent, so one per count is
    kept.
    """
    n = c.dim
    if box.free_bound == 0:
        return [TailSeq()]
    free = box.free_coords(n)
    b = box.free_bound
    if c.symmetric:
        out = []
        for k in range(len(free) + 1):
            vals = {i: (b if pos < k else -b) for pos, i in enumerate(free)}
            out.append(box.element(vals, n))
        return out
    if len(free) > 12:
        raise ValueError(f"{2 ** len(free)} box corners exceed the enumeration limit")
    return list(box.vertices(n))


def _solve_gmp(c: ConvexSetDesc, x: FinSeq):
    box = duality_l1(x)
    best = None
    for jx in box_corners(box, c):
        sol = _solve_gen(c, jx)
        if best is None or sol.value < best[0].value:
            best = (sol, jx)
    return box, best[0], best[1]


def generalized_metric_contains(c: ConvexSetDesc, x: FinSeq, y: FinSeq,
                                budget: Optional[int] = None) -> bool:
    """Is y in Pi_C(x), i.e. y minimizes V(jx, .) over C for some jx in J(x)?

    Decided by one LP over J(x) x J(y): the optimality condition of y for
    V(jx, .) is jx - jy in the normal cone of C at y for some jy in J(y).
    """
    from .variational import find_normal_functional

    n = _budget(c, budget, points=[x, y])
    cn = c.with_dim(n)
    if not membership(cn, y):
        return False
    terms = [(1, duality_l1(x)), (-1, duality_l1(y))]
    return find_normal_functional(cn, y, None, terms) is not None


def gen_metric_project(c: ConvexSetDesc, x: FinSeq, budget: Optional[int] = None,
                       check_double: bool = True, recognize: bool = True) -> ProjectionResult:
    """Generalized metric projection Pi_C(x).

    The reported value is the least optimal V over jx in J(x), the minimizer
    belongs to that best jx (listed as the witness), and ``contains`` decides
    membership in the whole union.
    """
    if x.has_zero_slot:
        raise ValueError("x carries an index-0 entry")
    n = _budget(c, budget, points=[x])
    cn = c.with_dim(n)
    box, sol, jx = _solve_gmp(cn, x)
    stable, doubled = True, None
    if check_double and _doubles(c):
        doubled = _solve_gmp(c.with_dim(2 * n), x)[1].value
        stable = doubled == sol.value

    def oracle(y: FinSeq) -> bool:
        return y.max_index <= n and generalized_metric_contains(cn, x, y)

    tag = None
    if recognize and (box.free_bound == 0 or not box.free_coords(n)):
        # J(x) acts on 1..n as a single functional, so Pi_C(x) = pi_C(jx)
        prog = _gen_solution_program(cn, jx, sol)
        tag = _recognize(prog, sol.minimizer, lambda y: solution_set_contains(cn, jx, y, value=sol.value))
    return ProjectionResult("gen_metric_project", sol.value, sol.minimizer, True, tag, n,
                            stable, doubled, (jx,), oracle)


# attainment probes -----------------------------------------------------------------

def nonproximal_hull(count: int) -> ConvexSetDesc:
    """co{e_1, ..., e_count} with e_n carrying (n+1)/n in slot n."""
    return HullOfPoints([FinSeq.unit(k, Fraction(k + 1, k)) for k in range(1, count + 1)])


@dataclass(frozen=True)
class ProximalityReport:
    budgets: Tuple[int, ...]
    values: Tuple[Fraction, ...]
    minimizers: Tuple[FinSeq, ...]
    strictly_decreasing: bool
    attained: bool

    def to_json(self) -> dict:
        return {
            "budgets": list(self.budgets),
            "values": [rat_to_json(v) for v in self.values],
            "minimizers": [finseq_to_json(m) for m in self.minimizers],
            "strictly_decreasing": self.strictly_decreasing,
            "attained": self.attained,
        }


def proximality_probe(family: Union[ConvexSetDesc, Callable[[int], ConvexSetDesc]],
                      x: FinSeq, budgets: Sequence[int]) -> ProximalityReport:
    """Run Pi_C(x) at increasing budgets and report the value trend.

    ``family`` is either a fixed set (re-budgeted) or a callable producing
    the budget-N truncation, e.g. ``nonproximal_hull``. A strictly
    decreasing trend means no tested budget attains the infimum.
    """
    budgets = tuple(sorted(budgets))
    values, mins = [], []
    for n in budgets:
        c = family(n) if callable(family) else family.with_dim(n)
        res = gen_metric_project(c, x, budget=n, check_double=False, recognize=False)
        values.append(res.optimal_value)
        mins.append(res.minimizer)
    decreasing = all(a > b for a, b in zip(values, values[1:]))
    attained = len(values) > 1 and values[-1] == values[-2]
    return ProximalityReport(budgets, tuple(values), tuple(mins), decreasing, attained)


# c0 --------------------------------------------------------------------------------------

def c0_projections(r: RationalLike, s: TailSeq) -> Tuple[bool, bool]:
    """(s in P_{c0}(beta_r), s in Z(r)) using the closed-form rules.

    The first flag is 0 <= s_n <= 2r for every n; the second flag is the
    rule "some s_n equals r" proposed for Pi_{c0}(beta_r). That rule
    misses points such as theta; see ``c0_generalized_oracle``.
    """
    r = as_rational(r)
    if r <= 0:
        raise ValueError("r must be positive")
    if s.tail != 0:
        raise ValueError("s must lie in c0 (zero tail)")
    in_p = all(0 <= v <= 2 * r for v in s.prefix)
    in_z = any(v == r for v in s.prefix)
    return in_p, in_z


def c0_metric_oracle(r: RationalLike, s: TailSeq) -> bool:
    """s attains dist(beta_r, c0), computed against the known minimizer theta."""
    beta = TailSeq.constant(as_rational(r))
    return s.tail == 0 and norm_sup(beta - s) == norm_sup(beta - TailSeq())


def c0_best_functional(r: RationalLike, s: TailSeq) -> Optional[FinSeq]:
    """A g in J(beta_r) = D(r) (slots 0..m) making s a minimizer of V(g, .) over c0.

    For g with finite support and mass rho on slots >= 1, V(g, t) >= r^2 -
    2 rho ||t|| + ||t||^2 >= r^2 - rho^2, so s is optimal for g exactly when
    ||s|| = rho and <g, s> = rho ||s||. The LP searches g with rho = ||s||
    and maximal <g, s>.
    """
    from .lp import LPProblem

    r = as_rational(r)
    if s.tail != 0:
        raise ValueError("s must lie in c0 (zero tail)")
    m = len(s.prefix)
    sig = norm_sup(s)
    if sig > r:
        return None
    lp = LPProblem()
    g = lp.add_vars(m + 1, "g")
    lp.add_row({j: 1 for j in g}, "=", r)
    lp.add_row({g[k]: 1 for k in range(1, m + 1)}, "=", sig)
    lp.set_objective({g[k]: s[k] for k in range(1, m + 1)}, maximize=True)
    sol = lp_solve(lp)
    if sol.status != OPTIMAL:
        return None
    cand = FinSeq({k: sol.x[g[k]] for k in range(1, m + 1)}, zero=sol.x[g[0]])
    return cand if sol.value == sig * sig else None


def c0_min_v(g: FinSeq) -> Tuple[Fraction, TailSeq]:
    """inf over c0 of V(g, .) for g >= 0 with finite support, with a minimizer."""
    rho = norm_l1(g)
    t = TailSeq([rho if g[k] > 0 else 0 for k in range(1, g.max_index + 1)], 0)
    return v_eval_c(g, t).value, t


def c0_generalized_oracle(r: RationalLike, s: TailSeq) -> bool:
    """Exact membership of s in Pi_{c0}(beta_r) = union of pi_{c0}(g), g in D(r)."""
    g = c0_best_functional(r, s)
    if g is None:
        return False
    inf_v, _ = c0_min_v(g)
    return v_eval_c(g, s).value == inf_v


# numeric mode --------------------------------------------------------------------------

@dataclass(frozen=True)
class NumericL1:
    """An element of c* = l1 with infinite support, evaluated in binary64.

    ``entry(n)`` gives the n-th entry (n >= 1), ``zero`` the 0 slot and
    ``norm`` the exact l1 norm (slot 0 included) supplied in closed form.
    """

    entry: Callable[[int], float]
    norm: float
    zero: float = 0.0


NUMERIC_TOL = 1e-9


def geometric_functional() -> NumericL1:
    """x = (0; 1, 1/2, 1/4, ...), with ||x|| = 2."""
    return NumericL1(lambda n: 2.0 ** (1 - n), 2.0, 0.0)


def v_c_numeric(x: NumericL1, t: Sequence[float]) -> float:
    """V(x, t) for t in c0 given by its finitely many nonzero leading entries."""
    pairing = sum(x.entry(n) * v for n, v in enumerate(t, start=1))
    sup = max((abs(v) for v in t), default=0.0)
    return x.norm ** 2 - 2.0 * pairing + sup ** 2


def c0_gen_project_numeric(x: NumericL1, witness: Callable[[int], Sequence[float]],
                           witness_range: Sequence[int], samples: int = 2000,
                           sample_len: int = 30, seed: int = 0) -> ProjectionResult:
    """Probe pi_{c0}(x) numerically.

    Evaluates V along an explicit witness family and on random finitely
    supported candidates. The infimum estimate is the least value seen;
    attainment is reported only if some evaluated candidate reaches it
    within ``NUMERIC_TOL`` of zero gap to the witness trend's limit 0.
    """
    wit = tuple((m, v_c_numeric(x, witness(m))) for m in witness_range)
    rng = random.Random(seed)
    scale = 2.0 * x.norm
    sampled_min = math.inf
    for _ in range(samples):
        length = rng.randint(1, sample_len)
        cand = [rng.uniform(-scale, scale) for _ in range(length)]
        sampled_min = min(sampled_min, v_c_numeric(x, cand))
    inf_est = min([sampled_min] + [v for _, v in wit])
    attained = sampled_min <= NUMERIC_TOL or any(v <= 0.0 for _, v in wit)
    return ProjectionResult("c0_gen_project_numeric", inf_est, None, attained, None,
                            sample_len, True, None, wit + (("sampled_min", sampled_min),))


# l2 model ------------------------------------------------------------------------------

def _solve_linear(mat: List[List[Fraction]], rhs: List[Fraction]) -> Optional[List[Fraction]]:
    n = len(mat)
    a = [row[:] + [b] for row, b in zip(mat, rhs)]
    for col in range(n):
        piv = next((r for r in range(col, n) if a[r][col] != 0), None)
        if piv is None:
            return None
        a[col], a[piv] = a[piv], a[col]
        inv = 1 / a[col][col]
        a[col] = [v * inv for v in a[col]]
        for r in range(n):
            if r != col and a[r][col] != 0:
                f = a[r][col]
                a[r] = [v - f * w for v, w in zip(a[r], a[col])]
    return [a[r][n] for r in range(n)]


def _l2_min_over_hull(points: Sequence[FinSeq], linear: FinSeq, n: int):
    """min ||y||_2^2 - 2<linear, y> over conv(points) by face enumeration."""
    vecs = [p.to_list(n) for p in points]
    target = linear.to_list(n)
    best = None
    for size in range(1, min(len(vecs), n + 1) + 1):
        for face in combinations(range(len(vecs)), size):
            p0 = vecs[face[0]]
            dirs = [[a - b for a, b in zip(vecs[k], p0)] for k in face[1:]]
            gram = [[sum(u * v for u, v in zip(d1, d2)) for d2 in dirs] for d1 in dirs]
            rhs = [sum(u * (t - b) for u, t, b in zip(d, target, p0)) for d in dirs]
            coef = _solve_linear(gram, rhs) if dirs else []
            if coef is None:
                continue
            if any(cf < 0 for cf in coef) or sum(coef, Fraction(0)) > 1:
                continue
            y = [b + sum((cf * d[i] for cf, d in zip(coef, dirs)), Fraction(0)) for i, b in enumerate(p0)]
            val = sum(v * v for v in y) - 2 * sum(v * t for v, t in zip(y, target))
            if best is None or val < best[0]:
                best = (val, y)
    val, y = best
    return val, FinSeq.from_list(y)


def l2_metric_project(points: Sequence[FinSeq], x: FinSeq, n: int):
    """(squared distance, nearest point) in the Euclidean norm."""
    val, y = _l2_min_over_hull(points, x, n)
    return val + sum(v * v for v in x.to_list(n)), y


def l2_gen_project(points: Sequence[FinSeq], phi: FinSeq, n: int):
    """pi_C(phi) in l2: minimize ||phi||^2 - 2<phi, y> + ||y||^2."""
    val, y = _l2_min_over_hull(points, phi, n)
    return sum(v * v for v in phi.to_list(n)) + val, y


def l2_gen_metric_project(points: Sequence[FinSeq], x: FinSeq, n: int):
    """Pi_C(x) in l2, the union of pi_C(jx) over J(x) = {x}."""
    from .duality import duality_l2

    return l2_gen_project(points, duality_l2(x), n)
