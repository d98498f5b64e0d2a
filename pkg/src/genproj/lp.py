"""Exact two-phase simplex over Fractions.

Problems are stated with nonnegative variables and rows of the form
``sum(a_j x_j) (<=|=|>=) b``. Pivoting follows Bland's rule, so the method
terminates on degenerate problems; at the sizes used here the dense tableau
is cheap enough to keep the arithmetic exact.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Tuple

OPTIMAL = "optimal"
UNBOUNDED = "unbounded"
INFEASIBLE = "infeasible"

_ZERO = Fraction(0)


@dataclass
class LPProblem:
    """min or max of ``objective . x`` subject to ``rows`` and ``x >= 0``.

    Each row is ``(coeffs, sense, rhs)`` with ``coeffs`` a sparse map from
    variable index to coefficient and ``sense`` one of ``"<="``, ``"="``,
    ``">="``.
    """

    n_vars: int = 0
    objective: Dict[int, Fraction] = field(default_factory=dict)
    maximize: bool = False
    rows: List[Tuple[Dict[int, Fraction], str, Fraction]] = field(default_factory=list)
    names: List[str] = field(default_factory=list)

    def add_var(self, name: str = "") -> int:
        self.n_vars += 1
        self.names.append(name)
        return self.n_vars - 1

    def add_vars(self, count: int, prefix: str = "v") -> List[int]:
        return [self.add_var(f"{prefix}{k}") for k in range(count)]

    def add_row(self, coeffs: Dict[int, Fraction], sense: str, rhs) -> int:
        if sense not in ("<=", "=", ">="):
            raise ValueError(f"bad row sense {sense!r}")
        clean = {j: Fraction(c) for j, c in coeffs.items() if c != 0}
        self.rows.append((clean, sense, Fraction(rhs)))
        return len(self.rows) - 1

    def set_objective(self, coeffs: Dict[int, Fraction], maximize: bool = False) -> None:
        self.objective = {j: Fraction(c) for j, c in coeffs.items() if c != 0}
        self.maximize = maximize

    def copy(self) -> "LPProblem":
        return LPProblem(self.n_vars, dict(self.objective), self.maximize,
                         [(dict(c), s, b) for c, s, b in self.rows], list(self.names))


@dataclass
class LPSolution:
    status: str
    x: Optional[List[Fraction]] = None
    value: Optional[Fraction] = None
    basis: Optional[List[int]] = None
    ray: Optional[List[Fraction]] = None
    farkas: Optional[List[Fraction]] = None
    duals: Optional[List[Fraction]] = None

    @property
    def optimal(self) -> bool:
        return self.status == OPTIMAL


class _Tableau:
    def __init__(self, rows: List[Dict[int, Fraction]], rhs: List[Fraction], n_cols: int,
                 basis: List[int]):
        self.rows = rows
        self.rhs = rhs
        self.n_cols = n_cols
        self.basis = basis

    def pivot(self, r: int, col: int) -> None:
        prow = self.rows[r]
        inv = 1 / prow[col]
        if inv != 1:
            for j in prow:
                prow[j] *= inv
            self.rhs[r] *= inv
        prow_items = list(prow.items())
        prhs = self.rhs[r]
        for i, row in enumerate(self.rows):
            if i == r:
                continue
            factor = row.get(col)
            if not factor:
                continue
            for j, a in prow_items:
                v = row.get(j, _ZERO) - factor * a
                if v:
                    row[j] = v
                else:
                    row.pop(j, None)
            self.rhs[i] -= factor * prhs
        self.basis[r] = col

    def reduced_costs(self, cost: Dict[int, Fraction], allowed: List[bool]) -> Dict[int, Fraction]:
        # d_j = c_j - sum_i c_B(i) a_ij
        red = {j: c for j, c in cost.items() if allowed[j]}
        for i, row in enumerate(self.rows):
            cb = cost.get(self.basis[i], _ZERO)
            if not cb:
                continue
            for j, a in row.items():
                if allowed[j]:
                    red[j] = red.get(j, _ZERO) - cb * a
        return red

    def run(self, cost: Dict[int, Fraction], allowed: List[bool], max_iter: int = 100000):
        """Minimize ``cost`` from the current feasible basis (Bland's rule)."""
        for _ in range(max_iter):
            red = self.reduced_costs(cost, allowed)
            basic = set(self.basis)
            entering = None
            for j in sorted(red):
                if red[j] < 0 and j not in basic:
                    entering = j
                    break
            if entering is None:
                return OPTIMAL, None
            best = None
            for i, row in enumerate(self.rows):
                a = row.get(entering)
                if a is not None and a > 0:
                    ratio = self.rhs[i] / a
                    key = (ratio, self.basis[i])
                    if best is None or key < best[0]:
                        best = (key, i)
            if best is None:
                return UNBOUNDED, entering
            self.pivot(best[1], entering)
        raise RuntimeError("simplex iteration limit reached")


def lp_solve(problem: LPProblem) -> LPSolution:
    """Solve ``problem`` exactly.

    Returns the optimal point and value, or an unbounded ray, or a Farkas
    vector ``y`` with ``y^T A <= 0`` and ``y^T b > 0`` on the standard-form
    equality system when the rows are infeasible.
    """
    n = problem.n_vars
    m = len(problem.rows)
    rows: List[Dict[int, Fraction]] = []
    rhs: List[Fraction] = []
    flips: List[int] = []
    basis: List[int] = []
    n_cols = n
    slack_cols: List[Optional[int]] = []
    art_cols: List[int] = []
    init_cols: List[int] = []
    pending = []
    for coeffs, sense, b in problem.rows:
        flip = -1 if b < 0 else 1
        row = {j: flip * c for j, c in coeffs.items()}
        b = flip * b
        if flip < 0:
            sense = {"<=": ">=", ">=": "<=", "=": "="}[sense]
        pending.append((row, sense, b, flip))
    for row, sense, b, flip in pending:
        slack = None
        if sense in ("<=", ">="):
            slack = n_cols
            n_cols += 1
            row[slack] = Fraction(1 if sense == "<=" else -1)
        slack_cols.append(slack)
        rows.append(row)
        rhs.append(b)
        flips.append(flip)
    for i, (row, sense, b, flip) in enumerate(pending):
        if sense == "<=":
            basis.append(slack_cols[i])
            init_cols.append(slack_cols[i])
        else:
            art = n_cols
            n_cols += 1
            rows[i][art] = Fraction(1)
            art_cols.append(art)
            basis.append(art)
            init_cols.append(art)
    tab = _Tableau(rows, rhs, n_cols, basis)
    is_art = [False] * n_cols
    for a in art_cols:
        is_art[a] = True

    if art_cols:
        phase1 = {a: Fraction(1) for a in art_cols}
        allowed = [True] * n_cols
        tab.run(phase1, allowed)
        infeas = sum((tab.rhs[i] for i in range(m) if is_art[tab.basis[i]]), _ZERO)
        if infeas > 0:
            y = _row_multipliers(tab, phase1, init_cols)
            farkas = [flips[i] * y[i] for i in range(m)]
            return LPSolution(INFEASIBLE, farkas=farkas)
        # drive zero-level artificials out of the basis
        for i in range(m):
            if is_art[tab.basis[i]]:
                for j in sorted(tab.rows[i]):
                    if not is_art[j]:
                        tab.pivot(i, j)
                        break

    sign = -1 if problem.maximize else 1
    cost = {j: sign * c for j, c in problem.objective.items()}
    allowed = [not is_art[j] for j in range(n_cols)]
    status, entering = tab.run(cost, allowed)
    if status == UNBOUNDED:
        ray = [_ZERO] * n
        if entering < n:
            ray[entering] = Fraction(1)
        for i, row in enumerate(tab.rows):
            bj = tab.basis[i]
            a = row.get(entering)
            if a and bj < n:
                ray[bj] = -a
        return LPSolution(UNBOUNDED, ray=ray)
    x = [_ZERO] * n
    for i in range(m):
        if tab.basis[i] < n:
            x[tab.basis[i]] = tab.rhs[i]
    value = sum((c * x[j] for j, c in problem.objective.items()), _ZERO)
    y = _row_multipliers(tab, cost, init_cols)
    duals = [sign * flips[i] * y[i] for i in range(m)]
    return LPSolution(OPTIMAL, x=x, value=value, basis=list(tab.basis), duals=duals)


def _row_multipliers(tab: _Tableau, cost: Dict[int, Fraction], init_cols: List[int]) -> List[Fraction]:
    """``c_B B^-1`` read off the columns of the initial identity basis."""
    m = len(tab.rows)
    y = [_ZERO] * m
    for k in range(m):
        col = init_cols[k]
        total = _ZERO
        for i, row in enumerate(tab.rows):
            cb = cost.get(tab.basis[i], _ZERO)
            a = row.get(col)
            if cb and a:
                total += cb * a
        y[k] = total
    return y
