"""Uniform approximation on C[0,1]: maximizing sets, duality measures,
the Remez exchange, and members of the generalized metric projection onto
polynomials of degree <= n.

Functions are sampled on a uniform grid; extrema found on the grid are
refined by a bounded scalar search, so reported points and norms are
accurate well below the default tolerance.
"""

from __future__ import annotations

import ast
from dataclasses import dataclass
from typing import Callable, List, Optional, Sequence, Tuple

import numpy as np
from scipy.optimize import minimize_scalar

DEFAULT_GRID = 1024
DEFAULT_TOL = 1e-8


class GridFunction:
    """A continuous function on [0,1] together with its samples on N+1 points."""

    def __init__(self, func: Callable[[np.ndarray], np.ndarray], n: int = DEFAULT_GRID):
        if n < 64:
            raise ValueError("grid needs at least 64 intervals")
        self.func = func
        self.n = n
        self.grid = np.linspace(0.0, 1.0, n + 1)
        self.values = np.broadcast_to(np.asarray(func(self.grid), dtype=float), self.grid.shape).copy()
        self.grid_norm = float(np.max(np.abs(self.values)))
        self._peaks = _refined_peaks(self)
        self.norm = max([self.grid_norm] + [abs(v) for _, v in self._peaks])

    def __call__(self, t):
        out = np.asarray(self.func(np.asarray(t, dtype=float)), dtype=float)
        return float(out) if out.ndim == 0 else out

    def __sub__(self, other) -> "GridFunction":
        g = other.func if isinstance(other, GridFunction) else other
        return GridFunction(lambda t: self.func(t) - g(t), self.n)


def _refined_peaks(f: GridFunction) -> List[Tuple[float, float]]:
    """Local maxima of |f| on the grid, each polished inside its neighbour cell."""
    a = np.abs(f.values)
    n = f.n
    out = []
    for i in range(n + 1):
        left = a[i - 1] if i > 0 else -np.inf
        right = a[i + 1] if i < n else -np.inf
        if a[i] < left or a[i] < right:
            continue
        t = float(f.grid[i])
        if 0 < i < n and (a[i] > left or a[i] > right):
            res = minimize_scalar(lambda s: -abs(f(s)), bounds=(f.grid[i - 1], f.grid[i + 1]),
                                  method="bounded", options={"xatol": 1e-13})
            if -res.fun > a[i]:
                t = float(res.x)
        out.append((t, f(t)))
    return out


def parse_function(expr: str) -> Callable[[np.ndarray], np.ndarray]:
    """Compile an expression in t with + - * / ^, pow, sin, cos, exp, abs."""
    text = expr.replace("^", "**").replace("×", "*").replace("÷", "/").replace("−", "-")
    try:
        tree = ast.parse(text, mode="eval")
    except SyntaxError as exc:
        raise ValueError(f"cannot parse {expr!r}: {exc.msg}") from None
    funcs = {"sin": np.sin, "cos": np.cos, "exp": np.exp, "abs": np.abs, "pow": np.power}
    consts = {"pi": np.pi, "e": np.e}
    binops = {ast.Add: np.add, ast.Sub: np.subtract, ast.Mult: np.multiply,
              ast.Div: np.divide, ast.Pow: np.power}

    def build(node):
        if isinstance(node, ast.Expression):
            return build(node.body)
        if isinstance(node, ast.Constant) and isinstance(node.value, (int, float)):
            v = float(node.value)
            return lambda t: np.full_like(t, v, dtype=float)
        if isinstance(node, ast.Name):
            if node.id == "t":
                return lambda t: t
            if node.id in consts:
                v = consts[node.id]
                return lambda t: np.full_like(t, v, dtype=float)
        if isinstance(node, ast.BinOp) and type(node.op) in binops:
            op, lhs, rhs = binops[type(node.op)], build(node.left), build(node.right)
            return lambda t: op(lhs(t), rhs(t))
        if isinstance(node, ast.UnaryOp) and isinstance(node.op, (ast.USub, ast.UAdd)):
            inner = build(node.operand)
            return (lambda t: -inner(t)) if isinstance(node.op, ast.USub) else inner
        if isinstance(node, ast.Call) and isinstance(node.func, ast.Name) and node.func.id in funcs \
                and not node.keywords:
            fn = funcs[node.func.id]
            args = [build(a) for a in node.args]
            if len(args) != (2 if node.func.id == "pow" else 1):
                raise ValueError(f"wrong number of arguments to {node.func.id}")
            return lambda t: fn(*(g(t) for g in args))
        raise ValueError(f"unsupported syntax in {expr!r}")

    body = build(tree)
    return lambda t: body(np.asarray(t, dtype=float))


def grid_function(expr: str, n: int = DEFAULT_GRID) -> GridFunction:
    return GridFunction(parse_function(expr), n)


@dataclass(frozen=True)
class Polynomial:
    """sum coeffs[k] t^k."""

    coeffs: Tuple[float, ...]

    def __init__(self, coeffs: Sequence[float]):
        object.__setattr__(self, "coeffs", tuple(float(c) for c in coeffs) or (0.0,))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __call__(self, t):
        t = np.asarray(t, dtype=float)
        acc = np.zeros_like(t)
        for c in reversed(self.coeffs):
            acc = acc * t + c
        return float(acc) if acc.ndim == 0 else acc

    def scale(self, factor: float) -> "Polynomial":
        return Polynomial([factor * c for c in self.coeffs])

    def as_function(self, n: int = DEFAULT_GRID) -> GridFunction:
        return GridFunction(self, n)

    def norm(self, n: int = DEFAULT_GRID) -> float:
        return self.as_function(n).norm


def maximizing_set(f: GridFunction, tol: float = DEFAULT_TOL) -> List[float]:
    """Points where |f| reaches ||f|| within tol (grid maxima, refined)."""
    if f.norm == 0:
        raise ValueError("the zero function has no maximizing set")
    hits = sorted(t for t, v in f._peaks if abs(v) >= f.norm - tol)
    out: List[float] = []
    for t in hits:
        if not out or t - out[-1] > 0.5 / f.n:
            out.append(t)
    return out


def _in_maximizing_set(f: GridFunction, t: float, tol: float) -> bool:
    return 0.0 <= t <= 1.0 and abs(f(t)) >= f.norm - tol


@dataclass(frozen=True)
class DiscreteMeasure:
    atoms: Tuple[Tuple[float, float], ...]

    @property
    def total_variation(self) -> float:
        return float(sum(abs(m) for _, m in self.atoms))

    def pair(self, f) -> float:
        return float(sum(m * f(t) for t, m in self.atoms))

    def to_json(self) -> dict:
        return {"atoms": [[t, m] for t, m in self.atoms]}


def duality_measure(f: GridFunction, points: Sequence[float], weights: Sequence[float],
                    tol: float = DEFAULT_TOL) -> DiscreteMeasure:
    """Atomic member of J(f): mass w_i * sign f(t_i) * ||f|| at each t_i in M(f)."""
    if len(points) != len(weights) or not points:
        raise ValueError("need matching, nonempty points and weights")
    if any(w <= 0 for w in weights) or abs(sum(weights) - 1.0) > tol:
        raise ValueError("weights must be positive and sum to 1")
    for t in points:
        if not _in_maximizing_set(f, t, tol):
            raise ValueError(f"t={t} is not a maximizing point")
    mu = DiscreteMeasure(tuple((float(t), float(w * np.sign(f(t)) * f.norm))
                               for t, w in zip(points, weights)))
    nf = f.norm
    if abs(mu.pair(f) - nf * nf) > tol * max(nf * nf, 1.0) or abs(mu.total_variation - nf) > tol:
        raise RuntimeError("constructed measure is not in J(f)")
    return mu


@dataclass(frozen=True)
class AlternationCertificate:
    points: Tuple[float, ...]
    sign: int
    level: float

    def to_json(self) -> dict:
        return {"points": list(self.points), "sign": self.sign, "level": self.level}


class RemezError(RuntimeError):
    def __init__(self, message: str, certificate: AlternationCertificate):
        super().__init__(message)
        self.certificate = certificate


def _alternating_extrema(f: GridFunction, p: Polynomial) -> List[Tuple[float, float]]:
    """One extremum of the residual per run of constant sign, refined."""
    grid = f.grid
    r = f.values - p(grid)
    out: List[Tuple[float, float]] = []
    start = 0
    for i in range(1, len(grid) + 1):
        if i == len(grid) or np.sign(r[i]) != np.sign(r[start]):
            k = start + int(np.argmax(np.abs(r[start:i])))
            t = float(grid[k])
            if 0 < k < len(grid) - 1:
                lo, hi = grid[max(k - 1, start)], grid[min(k + 1, i - 1)]
                if hi > lo:
                    res = minimize_scalar(lambda s: -abs(f(s) - p(s)), bounds=(lo, hi),
                                          method="bounded", options={"xatol": 1e-13})
                    if abs(f(res.x) - p(res.x)) > abs(r[k]):
                        t = float(res.x)
            out.append((t, f(t) - p(t)))
            start = i
    return out


def remez(f: GridFunction, n: int, tol: float = 1e-10,
          max_iter: int = 100) -> Tuple[Polynomial, AlternationCertificate]:
    """Best uniform approximation of f by polynomials of degree <= n."""
    if n < 0:
        raise ValueError("degree must be nonnegative")
    k = np.arange(n + 2)
    ref = (1.0 - np.cos(np.pi * k / (n + 1))) / 2.0
    prev_level = None
    cert = None
    for _ in range(max_iter):
        mat = np.column_stack([ref ** j for j in range(n + 1)] + [(-1.0) ** k])
        sol = np.linalg.solve(mat, f(ref))
        p = Polynomial(sol[:-1])
        level = abs(float(sol[-1]))
        sign = 1 if sol[-1] >= 0 else -1
        cert = AlternationCertificate(tuple(float(t) for t in ref), sign, level)
        ext = _alternating_extrema(f, p)
        worst = max(abs(v) for _, v in ext)
        if worst - level < tol or (prev_level is not None and abs(level - prev_level) < tol):
            return p, cert
        prev_level = level
        if len(ext) < n + 2:
            raise RemezError("residual lost alternation", cert)
        while len(ext) > n + 2:
            # keep the global maximum: drop the smaller end
            ext = ext[1:] if abs(ext[0][1]) < abs(ext[-1][1]) else ext[:-1]
        ref = np.array([t for t, _ in ext])
    raise RemezError(f"no convergence after {max_iter} iterations", cert)


def alternation_points(f: GridFunction, p: Polynomial, tol: float = DEFAULT_TOL) -> List[float]:
    """Representatives of the alternating runs where |f - p| is within tol of its max."""
    r = f - p
    level = r.norm
    runs: List[Tuple[float, float]] = []
    for t, v in sorted(r._peaks):
        if abs(v) < level - tol:
            continue
        if runs and np.sign(runs[-1][1]) == np.sign(v):
            continue
        runs.append((t, v))
    return [t for t, _ in runs]


def equioscillation_verify(f: GridFunction, p: Polynomial, n: int, tol: float = DEFAULT_TOL) -> bool:
    """Does f - p alternate at n + 2 points at the level ||f - p||?"""
    if (f - p).norm <= tol:
        return True
    return len(alternation_points(f, p, tol)) >= n + 2


def gmp_membership(f: GridFunction, q: Polynomial, tol: float = DEFAULT_TOL) -> bool:
    """Sufficient test for q in Pi_{P_n}(f): equal norms and q = f at a point of M(f)."""
    if f.norm == 0:
        raise ValueError("f must be nonzero")
    if abs(q.norm(f.n) - f.norm) > tol:
        return False
    return any(abs(q(s) - f(s)) <= tol for s in maximizing_set(f, tol))


def gmp_families(f: GridFunction, n: int, count: int = 5, tol: float = DEFAULT_TOL) -> List[Polynomial]:
    """Explicit members of Pi_{P_n}(f).

    Degree 0 gives the constant f(s) at a maximizing point. With an endpoint
    a in M(f) and n >= 1, lines through (a, f(a)) with the other end c
    strictly inside (-|f(a)|, |f(a)|). With an interior maximizing point v
    and n >= 2, parabolas f(v) + alpha (t - v)^2 whose opening keeps the
    norm at |f(v)|.
    """
    pts = maximizing_set(f, tol)
    constant = Polynomial([f(pts[0])])
    ends = [s for s in pts if s <= tol or s >= 1 - tol]
    inner = [s for s in pts if tol < s < 1 - tol]
    out: List[Polynomial] = []
    if n >= 2 and inner:
        v = inner[0]
        fv = f(v)
        reach = max(v, 1 - v) ** 2
        for j in range(1, count + 1):
            alpha = -np.sign(fv) * 2 * abs(fv) / reach * j / (count + 1)
            out.append(Polynomial([fv + alpha * v * v, -2 * alpha * v, alpha]))
    elif n >= 1 and ends:
        a = round(ends[0])
        fa = f(a)
        for j in range(1, count + 1):
            c = -abs(fa) + 2 * abs(fa) * j / (count + 1)
            out.append(Polynomial([c, fa - c]) if a == 1 else Polynomial([fa, c - fa]))
    else:
        out.append(constant)
    bad = [q for q in out if not gmp_membership(f, q, tol)]
    if bad:
        raise RuntimeError(f"constructed polynomial {bad[0].coeffs} failed the membership test")
    return out


def gmp_scaled(f: GridFunction, p: Polynomial, tol: float = DEFAULT_TOL) -> Optional[Polynomial]:
    """eps (||f|| / ||p||) p when M(f) and M(p) share a point, else None."""
    pf = p.as_function(f.n)
    if pf.norm == 0:
        raise ValueError("p must be nonzero")
    mf, mp = maximizing_set(f, tol), maximizing_set(pf, tol)
    close = 1e-6
    common = [s for s in mf if any(abs(s - u) <= close for u in mp)]
    if not common:
        return None
    s = common[0]
    eps = 1.0 if np.sign(f(s)) == np.sign(p(s)) else -1.0
    q = p.scale(eps * f.norm / pf.norm)
    if not gmp_membership(f, q, tol):
        raise RuntimeError("scaled polynomial failed the membership test")
    return q


def agreement_set(f: GridFunction, g, tol: float = DEFAULT_TOL) -> List[float]:
    """Points of M(f) where g = f, provided ||g|| = ||f||."""
    gn = g.norm(f.n) if isinstance(g, Polynomial) else g.norm
    if abs(gn - f.norm) > tol:
        return []
    return [s for s in maximizing_set(f, tol) if abs(f(s) - g(s)) <= tol]
