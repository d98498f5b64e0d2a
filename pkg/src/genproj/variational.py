"""Variational-inequality checks for the projections.

Both checks ask for a functional g, built from points of one or more
duality boxes, that lies in the normal cone of C at z:
``<g, z - y> >= 0`` for every y in C. With C = conv(points) + cone(rays)
this is a finite system of linear inequalities in the free box
coordinates, so existence is one exact LP feasibility problem.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from .convex_sets import ConvexSetDesc, Unbounded, generators, lifted_program, membership, support
from .duality import DualityBox, duality_l1
from .exact_core import FinSeq, TailSeq, finseq_to_json, norm_l1, pair, rat_to_json, tailseq_to_json
from .lp import OPTIMAL, LPProblem, lp_solve

MAX_AUDITED_CORNERS = 64


@dataclass(frozen=True)
class VIReport:
    """Outcome of a variational-inequality check.

    ``inner_values`` maps each box corner (as its coordinate list) to
    min over C of the inequality's left side, or None when that is -inf.
    It is filled only for boxes with at most 64 corners.
    """

    holds_for_some_j: bool
    witness_j: Optional[TailSeq] = None
    violating_y: Optional[FinSeq] = None
    inner_values: Dict[str, Optional[Fraction]] = field(default_factory=dict)

    def to_json(self) -> dict:
        return {
            "holds_for_some_j": self.holds_for_some_j,
            "witness_j": tailseq_to_json(self.witness_j) if self.witness_j is not None else None,
            "violating_y": finseq_to_json(self.violating_y) if self.violating_y is not None else None,
            "inner_values": {k: (rat_to_json(v) if v is not None else None)
                             for k, v in self.inner_values.items()},
        }


def find_normal_functional(c: ConvexSetDesc, z: FinSeq, const: Optional[TailSeq],
                           terms: Sequence[Tuple[int, DualityBox]]) -> Optional[List[TailSeq]]:
    """Pick j_k in each box so g = const + sum(sign_k j_k) is normal to C at z.

    Coordinates past the budget never pair with C, so only 1..n are decided;
    the returned box members carry +bound there and in the tail.
    """
    n = c.dim
    pts, rays = generators(c)
    lp = LPProblem()
    base = {i: (const[i] if const is not None else Fraction(0)) for i in range(1, n + 1)}
    cols: Dict[Tuple[int, int], int] = {}
    for k, (sgn, box) in enumerate(terms):
        pinned, b = box.fixed_map, box.free_bound
        for i in range(1, n + 1):
            if i in pinned:
                base[i] += sgn * pinned[i]
            elif b > 0:
                # j_i = t - b with 0 <= t <= 2b
                t = lp.add_var(f"t{k}_{i}")
                cols[(k, i)] = t
                lp.add_row({t: 1}, "<=", 2 * b)
                base[i] -= sgn * b

    def add(direction: FinSeq, sense: str) -> None:
        coeffs: Dict[int, Fraction] = {}
        for (k, i), t in cols.items():
            d = direction[i]
            if d:
                coeffs[t] = coeffs.get(t, Fraction(0)) + terms[k][0] * d
        constant = sum((base[i] * d for i, d in direction.items() if i <= n), Fraction(0))
        lp.add_row(coeffs, sense, -constant)

    for v in pts:
        add(z - v, ">=")
    for d in rays:
        add(d, "<=")
    sol = lp_solve(lp)
    if sol.status != OPTIMAL:
        return None
    out = []
    for k, (_, box) in enumerate(terms):
        free = {i: sol.x[cols[(k, i)]] - box.free_bound for (kk, i) in cols if kk == k}
        out.append(box.element(free, n))
    return out


def _min_gap(c: ConvexSetDesc, g: TailSeq, z: FinSeq) -> Optional[Fraction]:
    """min over C of <g, z - y>, or None when unbounded below (by generators)."""
    top = support(c, g)
    if top is Unbounded:
        return None
    return pair(g, z) - top


def _min_gap_lp(c: ConvexSetDesc, g: TailSeq, z: FinSeq) -> Optional[Fraction]:
    """Same quantity as ``_min_gap``, solved by LP over the set's rows."""
    prog = lifted_program(c, with_norm=False)
    lp = prog.lp
    lp.set_objective(prog.y_coeffs({i: g[i] for i in range(1, c.dim + 1)}), maximize=True)
    sol = lp_solve(lp)
    if sol.status != OPTIMAL:
        return None
    return pair(g, z) - sol.value


def _audit(c: ConvexSetDesc, box: DualityBox, z: FinSeq, shift: Optional[TailSeq],
           sgn: int) -> Dict[str, Optional[Fraction]]:
    n = c.dim
    if box.free_bound > 0 and 2 ** len(box.free_coords(n)) > MAX_AUDITED_CORNERS:
        return {}
    out = {}
    for j in box.vertices(n):
        g = j.scale(sgn) if shift is None else shift + j.scale(sgn)
        key = "[" + ",".join(rat_to_json(v) for v in j.to_list(n)) + "]"
        out[key] = _min_gap(c, g, z)
    return out


def _budgeted(c: ConvexSetDesc, budget: Optional[int], points, functionals=()) -> ConvexSetDesc:
    n = c.dim if budget is None else budget
    n = max([n, c.min_dim] + [p.max_index for p in points] + [len(f.prefix) for f in functionals])
    return c.with_dim(n)


def vi_sufficiency(c: ConvexSetDesc, phi: TailSeq, z: FinSeq,
                   budget: Optional[int] = None) -> VIReport:
    """Is there jz in J(z) with <phi - jz, z - y> >= 0 for all y in C?

    A positive answer certifies z in pi_C(phi); this is re-checked against
    the exact optimal value before returning.
    """
    from .projections import solution_set_contains

    cn = _budgeted(c, budget, [z], [phi])
    if not membership(cn, z):
        raise ValueError("z is not in the set")
    box = duality_l1(z)
    found = find_normal_functional(cn, z, phi, [(-1, box)])
    audit = _audit(cn, box, z, phi, -1)
    if found is None:
        return VIReport(False, None, vi_counterexample(cn, phi, z), audit)
    jz = found[0]
    gap = _min_gap_lp(cn, phi - jz, z)
    if gap is None or gap < 0:
        raise RuntimeError("normal functional failed its LP re-check")
    if not solution_set_contains(cn, phi, z):
        raise RuntimeError("VI holds but z is not optimal for V(phi, .)")
    return VIReport(True, jz, None, audit)


def max_over_duality_box(phi: TailSeq, z: FinSeq, y: FinSeq) -> Fraction:
    """max over jz in J(z) of <phi - jz, z - y>, in closed form."""
    d = z - y
    return pair(phi, d) - duality_l1(z).min_pairing(d)


def _steps(limit: int = 4) -> List[Fraction]:
    out = []
    for q in range(1, limit + 1):
        out += [Fraction(q), Fraction(1, q)]
    return list(dict.fromkeys(out))


def vi_counterexample(c: ConvexSetDesc, phi: TailSeq, z: FinSeq,
                      budget: Optional[int] = None) -> Optional[FinSeq]:
    """A point y of C violating the VI for every jz in J(z), if one is found.

    Tries the shifts z + k(e_1 - e_m) first, then the generators of C.
    """
    cn = _budgeted(c, budget, [z], [phi])
    if not membership(cn, z):
        raise ValueError("z is not in the set")
    n = cn.dim
    cands = []
    for k in _steps():
        for m in range(2, n + 1):
            cands.append(z + FinSeq({1: k, m: -k}))
    pts, rays = generators(cn)
    cands += pts + [z + d for d in rays]
    for y in cands:
        if y.max_index <= n and membership(cn, y) and max_over_duality_box(phi, z, y) < 0:
            return y
    return None


def metric_vi_check(c: ConvexSetDesc, x: FinSeq, z: FinSeq,
                    budget: Optional[int] = None) -> VIReport:
    """Is there j in J(x - z) with <j, z - y> >= 0 for all y in C?

    For x outside C this holds exactly when z is a nearest point; the
    answer is cross-checked against the metric projection's distance.
    """
    from .projections import metric_project

    cn = _budgeted(c, budget, [x, z])
    if not membership(cn, z):
        raise ValueError("z is not in the set")
    if membership(cn, x):
        raise ValueError("x lies in the set; the check needs x outside it")
    box = duality_l1(x - z)
    found = find_normal_functional(cn, z, None, [(1, box)])
    audit = _audit(cn, box, z, None, 1)
    nearest = norm_l1(x - z) == metric_project(cn, x, check_double=False, recognize=False).optimal_value
    if (found is not None) != nearest:
        raise RuntimeError("VI answer disagrees with the metric projection")
    if found is None:
        return VIReport(False, None, None, audit)
    return VIReport(True, found[0], None, audit)
