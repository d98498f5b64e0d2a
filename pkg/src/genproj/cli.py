"""Command-line front end: golden case registry, ad-hoc solves, reports.

Exit codes: 0 success, 1 a verified check failed, 2 usage or parse error,
3 an oracle disagreed with the solver.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import random
import sys
import time
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from typing import Callable, Dict, List, Optional

from . import chebyshev as cb
from .convex_sets import (
    Ball,
    Hyperplane,
    NonnegCone,
    Simplex,
    membership,
    set_from_json,
    vertices,
)
from .duality import (
    duality_c,
    duality_l1,
    identical_points,
    inverse_duality_contains,
    inverse_duality_solve_beta,
)
from .exact_core import (
    FinSeq,
    TailSeq,
    finseq_from_json,
    finseq_to_json,
    norm_l1,
    norm_l1_with_zero,
    norm_sup,
    pair_c,
    rat_to_json,
    tailseq_from_json,
)
from .lyapunov import v_value
from .projections import (
    c0_gen_project_numeric,
    c0_generalized_oracle,
    c0_metric_oracle,
    c0_projections,
    gen_metric_project,
    gen_project,
    geometric_functional,
    l2_gen_metric_project,
    l2_gen_project,
    l2_metric_project,
    metric_project,
    nonproximal_hull,
    proximality_probe,
    v_c_numeric,
)
from .variational import max_over_duality_box, metric_vi_check, vi_counterexample, vi_sufficiency

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_ORACLE = 0, 1, 2, 3
DEFAULT_SEED = 20240601

PAPER, DERIVED, TRIVIAL = "PAPER", "DERIVED", "TRIVIAL"


@dataclass(frozen=True)
class Check:
    name: str
    passed: bool
    provenance: str
    detail: str = ""


@dataclass(frozen=True)
class CaseSpec:
    """A registered golden case; ``run(seed)`` returns its checks."""

    id: str
    summary: str
    budget: Optional[int]
    run: Callable[[int], List[Check]] = field(repr=False)


def _q(*vals) -> List[Fraction]:
    return [Fraction(v) for v in vals]


def _rand_simplex_point(rng: random.Random, n: int, r: Fraction = Fraction(1)) -> FinSeq:
    w = [rng.randint(0, 6) for _ in range(n)]
    if not any(w):
        w[rng.randrange(n)] = 1
    tot = sum(w)
    return FinSeq.from_list([r * Fraction(v, tot) for v in w])


# cases ------------------------------------------------------------------------

def _case_ex24(seed: int) -> List[Check]:
    rng = random.Random(seed)
    T, beta = Hyperplane(1), TailSeq.constant(1)
    out = []
    for n in range(2, 7):
        r = gen_project(T, beta, budget=n)
        out.append(Check(f"budget {n}: value 0, tag D(1)", r.optimal_value == 0 and r.set_tag == "D(1)",
                         PAPER, f"value={r.optimal_value} tag={r.set_tag}"))
    r = gen_project(T, beta)
    inside = all(r.contains(_rand_simplex_point(rng, 4)) for _ in range(20))
    out.append(Check("accepts random simplex points", inside, PAPER))
    outside = []
    for _ in range(20):
        k = Fraction(rng.randint(1, 8), rng.randint(1, 4))
        m = rng.randint(2, 4)
        outside.append(FinSeq({1: 1 + k, m: -k}))
    out.append(Check("rejects points of T with norm > 1",
                     not any(r.contains(y) for y in outside), PAPER))
    return out


def _case_ex25(seed: int) -> List[Check]:
    rng = random.Random(seed)
    ok = True
    for _ in range(25):
        phi = TailSeq([-rng.randint(0, 5) for _ in range(4)], -rng.randint(0, 5))
        r = gen_project(NonnegCone(), phi, check_double=False)
        ok &= r.minimizer.is_zero() and r.optimal_value == norm_sup(phi) ** 2
    return [Check("nonpositive phi: minimizer theta, value ||phi||^2", ok, PAPER)]


def _geometric_witness(m: int) -> List[float]:
    return [2.0] * m


def _geometric_exact(m: int) -> Fraction:
    # ||x|| = 2, <x, w_m> = 2 * (2 - 2^(1-m))
    return 4 - 4 * (2 - Fraction(2, 2 ** m)) + 4


def _case_ex28(seed: int) -> List[Check]:
    x = geometric_functional()
    res = c0_gen_project_numeric(x, _geometric_witness, range(1, 41), seed=seed)
    v20 = v_c_numeric(x, _geometric_witness(20))
    agree = all(abs(v_c_numeric(x, _geometric_witness(m)) - float(_geometric_exact(m))) <= 1e-9
                for m in range(1, 41))
    sampled = dict(w for w in res.witnesses if w[0] == "sampled_min")["sampled_min"]
    return [
        Check("V(x, w_20) < 1e-5", v20 < 1e-5, PAPER, f"{v20:.3e}"),
        Check("float V matches exact 8*2^-m within 1e-9", agree, DERIVED),
        Check("sampled infimum over c0 candidates stays > 0", sampled > 0, PAPER, f"{sampled:.3e}"),
        Check("attained = false", not res.attained, PAPER),
    ]


def _case_ex29(seed: int) -> List[Check]:
    T, phi, z = Hyperplane(1), TailSeq([3, 1]), FinSeq({1: 1})
    r2 = gen_project(T, phi, budget=2)
    r4 = gen_project(T, phi, budget=4)
    cex = vi_counterexample(T, phi, z)
    return [
        Check("budget 2: value 4 at (1,0,...)", r2.optimal_value == 4 and r2.minimizer == z, PAPER),
        Check("budget 2 flagged unstable under doubling", not r2.stable, DERIVED,
              f"doubled={r2.doubled_value}"),
        Check("budget >= 3: value 15/4 at (5/4,0,-1/4)",
              r4.optimal_value == Fraction(15, 4) and r4.contains(FinSeq({1: Fraction(5, 4), 3: Fraction(-1, 4)})),
              DERIVED, f"value={r4.optimal_value}"),
        Check("VI counterexample (2,0,-1) with box max <= -1",
              cex == FinSeq({1: 2, 3: -1}) and max_over_duality_box(phi, z, cex) <= -1, PAPER,
              f"y={cex}"),
        Check("VI fails at (1,0,...), which is not optimal at budget 4",
              not vi_sufficiency(T, phi, z).holds_for_some_j and not r4.contains(z), DERIVED),
    ]


def _case_ex34(seed: int) -> List[Check]:
    t0 = time.perf_counter()
    rep = proximality_probe(nonproximal_hull, FinSeq(), [2, 5, 10, 50])
    elapsed = time.perf_counter() - t0
    expect = [Fraction(n + 1, n) ** 2 for n in rep.budgets]
    return [
        Check("values ((N+1)/N)^2 for N = 2, 5, 10, 50", list(rep.values) == expect, DERIVED,
              ", ".join(rat_to_json(v) for v in rep.values)),
        Check("strictly decreasing, not attained", rep.strictly_decreasing and not rep.attained, PAPER),
        Check("runtime < 2 s", elapsed < 2, TRIVIAL, f"{elapsed:.2f}s"),
    ]


def _case_ex39(seed: int) -> List[Check]:
    T, u = Hyperplane(1), FinSeq({1: 3})
    gamma = TailSeq([3, 1])
    in_box = all(abs(gamma[i]) <= 3 for i in range(1, 5)) and gamma[1] == 3
    r = gen_project(T, gamma)
    pi_u = gen_metric_project(T, u)
    cex = vi_counterexample(T, gamma, FinSeq({1: 1}))
    return [
        Check("(3,1,0,...) is in J(3,0,...)", in_box, PAPER),
        Check("pi_T(gamma) value 15/4 excludes (1,0,...)",
              r.optimal_value == Fraction(15, 4) and not r.contains(FinSeq({1: 1})), DERIVED),
        Check("(1,0,...) lies in Pi_T(u) through another jx", pi_u.contains(FinSeq({1: 1})), DERIVED),
        Check("VI counterexample via gamma is (2,0,-1)", cex == FinSeq({1: 2, 3: -1}), PAPER),
    ]


def _case_ex48(seed: int) -> List[Check]:
    x = FinSeq.from_list(_q(*["1/2"] * 4))
    gm = gen_metric_project(Ball(1), x)
    mp = metric_project(Ball(1), x)
    scaled = x.scale(Fraction(1, 2))
    excl = True
    for y in (FinSeq.from_list(_q("1/2", "1/4", "1/4")), FinSeq.from_list(_q("1/3", "2/3"))):
        for m, k in product(range(1, 4), repeat=2):
            if y[m] > y[k]:
                excl &= norm_l1(y - FinSeq.unit(m)) < norm_l1(y - FinSeq.unit(k))
    return [
        Check("Pi value (h-r)^2 = 1 with tag D(1)", gm.optimal_value == 1 and gm.set_tag == "D(1)", PAPER),
        Check("P value h-r = 1, (r/h)y is a nearest point", mp.optimal_value == 1 and mp.contains(scaled), PAPER),
        Check("||y-e_m|| < ||y-e_k|| whenever y_m > y_k", excl, PAPER),
    ]


def _case_lemma410(seed: int) -> List[Check]:
    rng = random.Random(seed)
    ok = True
    for _ in range(300):
        r = Fraction(rng.randint(1, 4), rng.randint(1, 3))
        y = FinSeq.from_list([Fraction(rng.randint(-2, 4), rng.randint(1, 3)) for _ in range(3)])
        ok &= membership(inverse_duality_solve_beta(r), y) == inverse_duality_contains(TailSeq.constant(r), y)
    return [Check("J^-1(beta_r) equals the simplex of radius r on 300 samples", ok, PAPER)]


def _case_lemma413(seed: int) -> List[Check]:
    rng = random.Random(seed)
    ok = True
    for _ in range(300):
        r = Fraction(rng.randint(1, 4), rng.randint(1, 3))
        g = FinSeq({i: Fraction(rng.randint(-1, 4), rng.randint(1, 3)) for i in range(1, 4)},
                   zero=Fraction(rng.randint(-1, 3), rng.randint(1, 3)))
        if rng.random() < 0.3:
            # push onto the sphere of radius r
            tot = norm_l1_with_zero(g)
            if tot and all(v >= 0 for _, v in g.items()) and g.zero >= 0:
                g = g.scale(r / tot)
        beta = TailSeq.constant(r)
        direct = norm_l1_with_zero(g) == r and pair_c(g, beta) == r * r
        ok &= membership(duality_c(beta), g) == direct
    return [Check("J(beta_r) in c* equals D(r) with the 0 slot on 300 samples", ok, PAPER)]


def _case_ex412(seed: int) -> List[Check]:
    T, u = Hyperplane(1), FinSeq({1: 3})
    n = 5
    mp = metric_project(T, u, budget=n)
    gm = gen_metric_project(T, u, budget=n)
    vms = [FinSeq({1: 2, m: -1}) for m in range(2, n + 1)]
    gammas = True
    for m in range(2, n + 1):
        g = TailSeq([3] + [(-3 if k == m else 3) for k in range(2, n + 1)], 3)
        gammas &= norm_sup(g) == 3 and v_value(g, vms[m - 2]) == 0
    return [
        Check("metric distance 2", mp.optimal_value == 2, PAPER),
        Check("P_T(u) holds every v_m and (1,0,...)",
              all(mp.contains(v) for v in vms) and mp.contains(FinSeq({1: 1})), PAPER),
        Check("gamma_m in J(u) gives V(gamma_m, v_m) = 0", gammas, PAPER),
        Check("Pi_T(u) holds every v_m", all(gm.contains(v) for v in vms), PAPER),
    ]


def _c0_sample(rng: random.Random, r: Fraction) -> TailSeq:
    pool = [Fraction(0), r / 2, r, 3 * r / 2, 2 * r, 3 * r, -r, -r / 2]
    return TailSeq([rng.choice(pool) for _ in range(rng.randint(0, 4))], 0)


def _c0_pi_rule(r: Fraction, s: TailSeq) -> bool:
    sig = norm_sup(s)
    return sig == 0 or (sig <= r and max(s.prefix) == sig)


def _case_prop415(seed: int) -> List[Check]:
    rng = random.Random(seed)
    p_ok = pi_ok = True
    z_miss = 0
    for _ in range(1000):
        r = Fraction(rng.randint(1, 3))
        s = _c0_sample(rng, r)
        in_p, in_z = c0_projections(r, s)
        truth = c0_generalized_oracle(r, s)
        p_ok &= in_p == c0_metric_oracle(r, s)
        pi_ok &= truth == _c0_pi_rule(r, s)
        z_miss += in_z != truth
    return [
        Check("P = S(beta_r) on 1000 samples", p_ok, PAPER),
        Check("Pi = {theta} u {||s|| <= r, max s_n = ||s||} on 1000 samples", pi_ok, DERIVED,
              f"the rule 'some s_n = r' misclassifies {z_miss}"),
    ]


def _case_remez(seed: int) -> List[Check]:
    out = []
    for expr, n, level in (("t^2", 1, 0.125), ("t", 0, 0.5), ("t", 1, 0.0)):
        f = cb.grid_function(expr)
        p, cert = cb.remez(f, n)
        ok = abs(cert.level - level) <= 1e-9 and cb.equioscillation_verify(f, p, n)
        out.append(Check(f"{expr}, degree {n}: level {level}", ok, DERIVED, f"{cert.level:.12g}"))
    return out


def _case_thm55_linear(seed: int) -> List[Check]:
    f = cb.grid_function("t")
    fam = cb.gmp_families(f, 1, 25)
    return [
        Check("25 distinct lines through (1,1)", len(set(fam)) == 25, PAPER),
        Check("all pass the membership test", all(cb.gmp_membership(f, q) for q in fam), PAPER),
        Check("constant 1 is a member, 0 is not",
              cb.gmp_membership(f, cb.Polynomial([1])) and not cb.gmp_membership(f, cb.Polynomial([0])),
              DERIVED),
    ]


def _case_thm55_quadratic(seed: int) -> List[Check]:
    f = cb.grid_function("4*t*(1-t)")
    fam = cb.gmp_families(f, 2, 4)
    vertex = all(abs(q(0.5) - 1) <= 1e-12 for q in fam)
    return [Check("4 quadratics with vertex (1/2, 1), all members",
                  len(set(fam)) == 4 and vertex and all(cb.gmp_membership(f, q) for q in fam), PAPER)]


def _case_cor57(seed: int) -> List[Check]:
    f = cb.grid_function("t")
    up = cb.gmp_scaled(f, cb.Polynomial([0, 2]))
    down = cb.gmp_scaled(f, cb.Polynomial([0, -3]))
    none = cb.gmp_scaled(f, cb.Polynomial([0, 1, -1]))
    close = lambda q: q is not None and max(abs(a - b) for a, b in zip(q.coeffs, (0.0, 1.0))) <= 1e-12
    return [
        Check("2t scales to t", close(up), DERIVED),
        Check("-3t scales to t with a sign flip", close(down), DERIVED),
        Check("t(1-t) has a disjoint maximizing set", none is None, DERIVED),
    ]


def _case_measures(seed: int) -> List[Check]:
    rng = random.Random(seed)
    f = cb.grid_function("cos(4*pi*t)")
    pts = cb.maximizing_set(f)
    worst = 0.0
    for _ in range(50):
        k = rng.randint(1, len(pts))
        chosen = rng.sample(pts, k)
        w = [rng.random() + 0.01 for _ in chosen]
        w = [v / sum(w) for v in w]
        mu = cb.duality_measure(f, chosen, w)
        worst = max(worst, abs(mu.pair(f) - f.norm ** 2), abs(mu.total_variation - f.norm))
    mu = cb.duality_measure(f, [0.0, 0.25], [0.5, 0.5])
    return [
        Check("M(cos 4 pi t) = {0, 1/4, 1/2, 3/4, 1}",
              len(pts) == 5 and max(abs(a - b) for a, b in zip(pts, (0, .25, .5, .75, 1))) <= 1e-6, DERIVED),
        Check("atoms (0, 1/2), (1/4, -1/2)",
              abs(mu.atoms[0][1] - 0.5) <= 1e-8 and abs(mu.atoms[1][1] + 0.5) <= 1e-8, DERIVED),
        Check("50 random weightings lie in J(f) within 1e-8", worst <= 1e-8, PAPER, f"{worst:.1e}"),
    ]


def _case_thm63(seed: int) -> List[Check]:
    T = Hyperplane(1)
    a = metric_vi_check(T, FinSeq({1: 3}), FinSeq({1: 1})).holds_for_some_j
    b = metric_vi_check(T, FinSeq({1: 3}), FinSeq({2: 1})).holds_for_some_j
    c = metric_vi_check(Ball(1, dim=2), FinSeq({1: 2}), FinSeq({1: 1})).holds_for_some_j
    return [
        Check("T, x=(3,0,...), z=(1,0,...) holds", a, PAPER),
        Check("T, x=(3,0,...), z=(0,1,...) fails", not b, DERIVED),
        Check("Ball(1), x=(2,0), z=(1,0) holds", c, DERIVED),
    ]


def _case_thm26(seed: int) -> List[Check]:
    a = vi_sufficiency(NonnegCone(), TailSeq([-1, -2], -1), FinSeq())
    x = FinSeq.from_list(_q("1/2", "1/2"))
    b = vi_sufficiency(Simplex(1), TailSeq.constant(1), x)
    return [
        Check("nonneg cone, phi <= 0, z = theta: VI holds", a.holds_for_some_j, DERIVED),
        Check("simplex, phi = beta_1, z in D: VI holds with phi itself",
              b.holds_for_some_j and b.witness_j is not None, TRIVIAL),
    ]


def _case_simplex_identical(seed: int) -> List[Check]:
    D = Simplex(1)
    x = FinSeq.from_list(_q("1/2", "1/2"))
    gm = gen_metric_project(D, x)
    rng = random.Random(seed)
    whole = all(gm.contains(_rand_simplex_point(rng, 4)) for _ in range(20))
    whole &= all(gm.contains(FinSeq.unit(i)) for i in range(1, 5))
    return [
        Check("Pi_D(x) = D for x in D", whole and gm.optimal_value == 0, PAPER),
        Check("every point of D is generalized identical to x",
              all(identical_points(x, FinSeq.unit(i)) for i in range(1, 5)) and identical_points(x, x), PAPER),
    ]


def _case_ball_identical(seed: int) -> List[Check]:
    S = Ball(1)
    pos = FinSeq.from_list(_q(*["1/4"] * 4))
    gap = FinSeq.from_list(_q("1/2", "1/2"))
    a = gen_metric_project(S, pos)
    b = gen_metric_project(S, gap)
    return [
        Check("all-positive x in D: Pi_S(x) = D", a.set_tag == "D(1)", PAPER),
        Check("x with a zero entry: Pi_S(x) contains a point outside D",
              b.contains(FinSeq({1: Fraction(1, 2), 3: Fraction(-1, 2)})), PAPER),
    ]


def _case_theta(seed: int) -> List[Check]:
    rng = random.Random(seed)
    ok = True
    for c in (Ball(1), Simplex(2), Hyperplane(1), NonnegCone()):
        gm = gen_metric_project(c, FinSeq())
        mp = metric_project(c, FinSeq())
        ok &= gm.optimal_value == mp.optimal_value ** 2
        for _ in range(10):
            y = FinSeq.from_list([Fraction(rng.randint(-3, 3), 2) for _ in range(3)])
            ok &= gm.contains(y) == mp.contains(y)
    return [Check("Pi_C(theta) = P_C(theta) on four sets", ok, PAPER)]


REGISTRY: Dict[str, CaseSpec] = {c.id: c for c in [
    CaseSpec("ex2.4", "pi_T(beta_1) is the simplex", None, _case_ex24),
    CaseSpec("ex2.5", "pi onto the nonnegative cone of nonpositive phi is theta", None, _case_ex25),
    CaseSpec("ex2.8", "geometric functional on c0: infimum 0 not attained (numeric)", None, _case_ex28),
    CaseSpec("ex2.9", "pi_T(3,1,0,...) and the VI counterexample", 4, _case_ex29),
    CaseSpec("ex3.4", "non-proximal hull co{e_n}", None, _case_ex34),
    CaseSpec("ex3.9", "Pi_T(3,0,...) through gamma = (3,1,0,...)", 4, _case_ex39),
    CaseSpec("ex4.8", "Pi and P onto the unit ball from D+(2)", 4, _case_ex48),
    CaseSpec("lemma4.10", "inverse duality of beta_r", None, _case_lemma410),
    CaseSpec("lemma4.13", "duality of beta_r in c", None, _case_lemma413),
    CaseSpec("ex4.12", "P_T and Pi_T of (3,0,...)", 5, _case_ex412),
    CaseSpec("prop4.15", "P and Pi from c onto c0", None, _case_prop415),
    CaseSpec("thm5.1-remez", "best uniform approximation", None, _case_remez),
    CaseSpec("thm5.5-linear", "linear members of Pi_P1(t)", None, _case_thm55_linear),
    CaseSpec("thm5.5-quadratic", "quadratic members of Pi_P2", None, _case_thm55_quadratic),
    CaseSpec("cor5.7", "scaled members", None, _case_cor57),
    CaseSpec("lemma5.3", "atomic duality measures", None, _case_measures),
    CaseSpec("thm6.3", "metric projection variational inequality", None, _case_thm63),
    CaseSpec("thm2.6", "VI sufficiency", None, _case_thm26),
    CaseSpec("ex4.1-simplex", "generalized identical points in D", 4, _case_simplex_identical),
    CaseSpec("ex4.2-ball", "Pi onto the unit ball from D", 4, _case_ball_identical),
    CaseSpec("prop4.1-theta", "Pi_C(theta) = P_C(theta)", None, _case_theta),
]}


# commands ----------------------------------------------------------------------

class UsageError(Exception):
    pass


def _emit(args, payload: dict, table: List[List[str]]) -> None:
    if args.json:
        print(json.dumps(payload, indent=2))
    elif args.csv:
        buf = io.StringIO()
        csv.writer(buf).writerows(table)
        print(buf.getvalue(), end="")
    else:
        for row in table:
            print("  ".join(str(c) for c in row))


def cmd_list(args) -> int:
    rows = [["id", "budget", "summary"]] + [[c.id, str(c.budget or "-"), c.summary] for c in REGISTRY.values()]
    _emit(args, {"cases": [{"id": c.id, "summary": c.summary, "budget": c.budget}
                           for c in REGISTRY.values()]}, rows)
    return EXIT_OK


def cmd_verify(args) -> int:
    ids = list(REGISTRY) if args.case == "all" else [args.case]
    if any(i not in REGISTRY for i in ids):
        raise UsageError(f"unknown case {args.case!r}; see list-cases")
    if not args.json:
        print(f"# seed {args.seed}")
    rows = [["case", "status", "provenance", "check", "detail"]]
    report = {"seed": args.seed, "cases": []}
    all_ok = True
    for cid in ids:
        t0 = time.perf_counter()
        try:
            checks = REGISTRY[cid].run(args.seed)
        except Exception as exc:  # a crash is a failed case, not a CLI error
            checks = [Check("ran without error", False, TRIVIAL, f"{type(exc).__name__}: {exc}")]
        ok = all(c.passed for c in checks)
        all_ok &= ok
        for c in checks:
            rows.append([cid, "PASS" if c.passed else "FAIL", f"[{c.provenance}]", c.name, c.detail])
        report["cases"].append({
            "id": cid, "passed": ok, "seconds": round(time.perf_counter() - t0, 3),
            "checks": [{"name": c.name, "passed": c.passed, "provenance": c.provenance, "detail": c.detail}
                       for c in checks],
        })
    report["passed"] = all_ok
    rows.append(["summary", "PASS" if all_ok else "FAIL", "", f"{len(ids)} cases", ""])
    _emit(args, report, rows)
    return EXIT_OK if all_ok else EXIT_FAIL


def _load_json(text: str, what: str):
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise UsageError(f"{what}: invalid JSON ({exc.msg})") from None


def _grid_oracle(kind: str, c, point, budget: int):
    """Least objective over a rational grid in the set (budget <= 3)."""
    n = min(budget, 3)
    step = Fraction(1, 4)
    bound = 3
    axis = [k * step for k in range(-bound * 4, bound * 4 + 1)]
    best = None
    for vals in product(axis, repeat=n):
        y = FinSeq.from_list(vals)
        if not membership(c.with_dim(budget), y):
            continue
        if kind == "project":
            v = norm_l1(point - y)
        elif kind == "gproject":
            v = v_value(point, y)
        else:
            v = min(v_value(j, y) for j in duality_l1(point).vertices(budget))
        if best is None or v < best:
            best = v
    return best


def cmd_solve(args) -> int:
    try:
        c = set_from_json(_load_json(args.set, "--set"))
        raw = _load_json(args.point, "--point")
        point = tailseq_from_json(raw) if args.kind == "gproject" else finseq_from_json(raw)
    except (ValueError, KeyError, TypeError) as exc:
        raise UsageError(str(exc)) from None
    solver = {"project": metric_project, "gproject": gen_project, "gmproject": gen_metric_project}[args.kind]
    try:
        res = solver(c, point, budget=args.budget)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    payload = res.to_json()
    rows = [["field", "value"]] + [[k, json.dumps(v)] for k, v in payload.items()]
    code = EXIT_OK
    if args.numeric:
        approx = float(res.optimal_value)
        payload["numeric_value"] = approx
        rows.append(["numeric_value", repr(approx)])
    if args.l2:
        if args.kind == "gproject" or not c.bounded:
            raise UsageError("--l2 needs a bounded set and a primal point")
        pts = vertices(c.with_dim(res.dimension_budget_used))
        n = res.dimension_budget_used
        d2, p_near = l2_metric_project(pts, point, n)
        gv, g_near = l2_gen_project(pts, point, n)
        mv, m_near = l2_gen_metric_project(pts, point, n)
        same = d2 == gv == mv and p_near == g_near == m_near
        payload["l2"] = {"value": rat_to_json(d2), "nearest": finseq_to_json(p_near), "coincide": same}
        rows.append(["l2", json.dumps(payload["l2"])])
        if not same:
            code = EXIT_ORACLE
    if args.oracle:
        n = res.dimension_budget_used
        if n > 3:
            raise UsageError("--oracle grid search needs --budget <= 3")
        grid = _grid_oracle(args.kind, c, point, n)
        payload["oracle_value"] = rat_to_json(grid) if grid is not None else None
        rows.append(["oracle_value", payload["oracle_value"]])
        if grid is not None and grid < res.optimal_value:
            print(f"oracle mismatch: solver {res.optimal_value}, grid {grid}", file=sys.stderr)
            code = EXIT_ORACLE
    _emit(args, payload, rows)
    return code


def cmd_remez(args) -> int:
    try:
        f = cb.grid_function(args.expr)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    if args.degree < 0:
        raise UsageError("degree must be nonnegative")
    try:
        p, cert = cb.remez(f, args.degree)
    except cb.RemezError as exc:
        print(f"remez: {exc}", file=sys.stderr)
        return EXIT_FAIL
    ok = cb.equioscillation_verify(f, p, args.degree)
    if args.csv:
        buf = io.StringIO()
        w = csv.writer(buf)
        w.writerow(["t", "residual"])
        for t in f.grid[:: max(1, f.n // 256)]:
            w.writerow([f"{t:.6f}", f"{f(t) - p(t):.12g}"])
        print(buf.getvalue(), end="")
        return EXIT_OK if ok else EXIT_FAIL
    payload = {"coefficients": list(p.coeffs), "level": cert.level,
               "certificate": cert.to_json(), "equioscillation": ok}
    rows = [["coefficients", " ".join(f"{c:.12g}" for c in p.coeffs)],
            ["level", f"{cert.level:.12g}"],
            ["alternation", " ".join(f"{t:.6g}" for t in cert.points)],
            ["equioscillation", str(ok)]]
    _emit(args, payload, rows)
    return EXIT_OK if ok else EXIT_FAIL


def cmd_duality(args) -> int:
    try:
        if args.beta is not None:
            desc = duality_c(TailSeq.constant(Fraction(args.beta)))
            payload = {"beta": args.beta, "set": desc.tag(), "with_zero_slot": True}
        else:
            x = finseq_from_json(_load_json(args.point, "--point"))
            payload = duality_l1(x).to_json()
    except (ValueError, TypeError, ZeroDivisionError) as exc:
        raise UsageError(str(exc)) from None
    _emit(args, payload, [[k, json.dumps(v)] for k, v in payload.items()])
    return EXIT_OK


def cmd_identical(args) -> int:
    try:
        x = finseq_from_json(_load_json(args.x, "x"))
        y = finseq_from_json(_load_json(args.y, "y"))
        same = identical_points(x, y)
    except (ValueError, TypeError) as exc:
        raise UsageError(str(exc)) from None
    _emit(args, {"identical": same}, [["identical", str(same)]])
    return EXIT_OK


def cmd_vi_check(args) -> int:
    try:
        c = set_from_json(_load_json(args.set, "--set"))
        z = finseq_from_json(_load_json(args.z, "--z"))
        if args.mode == "gen":
            phi = tailseq_from_json(_load_json(args.point, "--point"))
            rep = vi_sufficiency(c, phi, z, budget=args.budget)
        else:
            x = finseq_from_json(_load_json(args.point, "--point"))
            rep = metric_vi_check(c, x, z, budget=args.budget)
    except (ValueError, KeyError, TypeError) as exc:
        raise UsageError(str(exc)) from None
    payload = rep.to_json()
    _emit(args, payload, [[k, json.dumps(v)] for k, v in payload.items()])
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    out = common.add_mutually_exclusive_group()
    out.add_argument("--json", action="store_true", help="emit a JSON report")
    out.add_argument("--csv", action="store_true", help="emit CSV rows")
    common.add_argument("--seed", type=int, default=DEFAULT_SEED, help="seed for randomized checks")
    common.add_argument("--budget", type=int, default=None, help="dimension budget")
    common.add_argument("--numeric", action="store_true", help="also report binary64 values")

    parser = argparse.ArgumentParser(prog="genproj", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("list-cases", parents=[common], help="list registered cases")
    p.set_defaults(func=cmd_list)

    p = sub.add_parser("verify", parents=[common], help="run golden cases")
    p.add_argument("case", help="case id or 'all'")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("solve", parents=[common], help="solve one projection")
    p.add_argument("kind", choices=["project", "gproject", "gmproject"])
    p.add_argument("--set", required=True, help="set JSON")
    p.add_argument("--point", required=True, help="point (FinSeq) or functional (TailSeq) JSON")
    p.add_argument("--oracle", action="store_true", help="compare with a grid search (budget <= 3)")
    p.add_argument("--l2", action="store_true", help="also solve in the Euclidean model")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("remez", parents=[common], help="best uniform polynomial approximation")
    p.add_argument("expr", help="expression in t")
    p.add_argument("degree", type=int)
    p.set_defaults(func=cmd_remez)

    p = sub.add_parser("duality", parents=[common], help="describe a duality set")
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--point", help="FinSeq JSON in l1")
    g.add_argument("--beta", help="r for the constant sequence beta_r in c")
    p.set_defaults(func=cmd_duality)

    p = sub.add_parser("identical", parents=[common], help="are two l1 points generalized identical")
    p.add_argument("x")
    p.add_argument("y")
    p.set_defaults(func=cmd_identical)

    p = sub.add_parser("vi-check", parents=[common], help="variational inequality check")
    p.add_argument("mode", choices=["gen", "metric"])
    p.add_argument("--set", required=True)
    p.add_argument("--point", required=True, help="phi (gen) or x (metric)")
    p.add_argument("--z", required=True)
    p.set_defaults(func=cmd_vi_check)
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
