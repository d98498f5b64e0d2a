"""Polyhedral feasible sets in l1 and the predicate sets of c0.

Every l1 set here is infinite dimensional; ``dim`` is the dimension budget,
i.e. points are restricted to coordinates 1..dim. At a fixed budget each set
is a polyhedron, available both as LP rows (for the simplex kernel) and as
``conv(points) + cone(rays)`` (for support and variational checks).
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from fractions import Fraction
from typing import Dict, List, Optional, Tuple, Union

from .exact_core import (
    FinSeq,
    RationalLike,
    TailSeq,
    as_rational,
    finseq_from_json,
    finseq_to_json,
    norm_l1,
    norm_l1_with_zero,
    rat_from_json,
    rat_to_json,
)
from .lp import OPTIMAL, LPProblem, LPSolution, lp_solve

__all__ = [
    "ConvexSetDesc",
    "Ball",
    "Simplex",
    "Hyperplane",
    "NonnegCone",
    "NonposCone",
    "HullOfPoints",
    "SBall",
    "ZSet",
    "Unbounded",
    "LPProblem",
    "LPSolution",
    "lp_solve",
    "membership",
    "vertices",
    "support",
    "set_to_json",
    "set_from_json",
    "LiftedProgram",
]

DEFAULT_DIM = 4

# variants whose description is invariant under permuting coordinates 1..dim
SYMMETRIC_VARIANTS = ("ball", "simplex", "hyperplane", "nonneg_cone", "nonpos_cone")
L1_VARIANTS = SYMMETRIC_VARIANTS + ("hull",)
C0_VARIANTS = ("s_ball", "z_set")


class _UnboundedType:
    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self) -> str:
        return "Unbounded"


Unbounded = _UnboundedType()


@dataclass(frozen=True)
class ConvexSetDesc:
    """Tagged descriptor of a convex set.

    ``param`` is the radius r for ball/simplex/s_ball/z_set and the level k
    for the hyperplane; ``points`` is only used by the hull variant.
    """

    variant: str
    param: Fraction = Fraction(0)
    dim: int = DEFAULT_DIM
    points: Tuple[FinSeq, ...] = ()
    with_zero_slot: bool = False

    def __post_init__(self):
        if self.variant not in L1_VARIANTS + C0_VARIANTS:
            raise ValueError(f"unknown set variant {self.variant!r}")
        if self.dim < 1:
            raise ValueError("dimension budget must be positive")
        if self.variant in ("ball", "simplex", "s_ball", "z_set") and self.param <= 0:
            raise ValueError("radius must be positive")
        if self.variant == "hull":
            if not self.points:
                raise ValueError("hull needs at least one point")
            need = max(p.max_index for p in self.points)
            if need > self.dim:
                raise ValueError(f"hull points need budget >= {need}")
            if any(p.has_zero_slot for p in self.points):
                raise ValueError("hull points cannot use the index-0 slot")

    @property
    def is_l1(self) -> bool:
        return self.variant in L1_VARIANTS

    @property
    def bounded(self) -> bool:
        return self.variant in ("ball", "simplex", "hull")

    @property
    def symmetric(self) -> bool:
        return self.variant in SYMMETRIC_VARIANTS

    @property
    def min_dim(self) -> int:
        if self.variant == "hull":
            return max(p.max_index for p in self.points)
        return 1

    def with_dim(self, n: int) -> "ConvexSetDesc":
        if n == self.dim:
            return self
        if n < self.min_dim:
            raise ValueError(f"budget {n} is below the support of the hull points")
        return replace(self, dim=n)

    def tag(self) -> str:
        r = rat_to_json(self.param)
        return {
            "ball": f"S({r})",
            "simplex": f"D({r})",
            "hyperplane": f"T({r})",
            "nonneg_cone": "l1+",
            "nonpos_cone": "l1-",
            "hull": f"co{{{len(self.points)} points}}",
            "s_ball": f"S(beta_{r})",
            "z_set": f"Z({r})",
        }[self.variant]

    def __repr__(self) -> str:
        return f"<{self.tag()} dim={self.dim}>"


def Ball(r: RationalLike, dim: int = DEFAULT_DIM) -> ConvexSetDesc:
    return ConvexSetDesc("ball", as_rational(r), dim)


def Simplex(r: RationalLike = 1, dim: int = DEFAULT_DIM, with_zero_slot: bool = False) -> ConvexSetDesc:
    return ConvexSetDesc("simplex", as_rational(r), dim, with_zero_slot=with_zero_slot)


def Hyperplane(k: RationalLike = 1, dim: int = DEFAULT_DIM) -> ConvexSetDesc:
    return ConvexSetDesc("hyperplane", as_rational(k), dim)


def NonnegCone(dim: int = DEFAULT_DIM) -> ConvexSetDesc:
    return ConvexSetDesc("nonneg_cone", Fraction(0), dim)


def NonposCone(dim: int = DEFAULT_DIM) -> ConvexSetDesc:
    return ConvexSetDesc("nonpos_cone", Fraction(0), dim)


def HullOfPoints(points, dim: Optional[int] = None) -> ConvexSetDesc:
    pts = tuple(points)
    need = max((p.max_index for p in pts), default=1)
    return ConvexSetDesc("hull", Fraction(0), max(dim or 1, need, 1), pts)


def SBall(r: RationalLike) -> ConvexSetDesc:
    """{s in c0 : ||beta_r - s|| <= r}, i.e. 0 <= s_n <= 2r."""
    return ConvexSetDesc("s_ball", as_rational(r), 1)


def ZSet(r: RationalLike) -> ConvexSetDesc:
    """{s in c0 : some s_n equals r}."""
    return ConvexSetDesc("z_set", as_rational(r), 1)


# membership -----------------------------------------------------------------

def membership(c: ConvexSetDesc, y: Union[FinSeq, TailSeq]) -> bool:
    """Exact membership; l1 points outside the budget are rejected."""
    if c.variant in C0_VARIANTS:
        s = y if isinstance(y, TailSeq) else TailSeq.from_finseq(y)
        if s.tail != 0:
            return False
        r = c.param
        if c.variant == "s_ball":
            return all(0 <= v <= 2 * r for v in s.prefix)
        return any(v == r for v in s.prefix)
    if not isinstance(y, FinSeq):
        raise TypeError("l1 sets take FinSeq points")
    if c.variant == "simplex" and c.with_zero_slot:
        if y.max_index > c.dim or y.zero < 0:
            return False
        return all(v > 0 for _, v in y.items()) and norm_l1_with_zero(y) == c.param
    if y.has_zero_slot or y.max_index > c.dim:
        return False
    v = c.variant
    if v == "ball":
        return norm_l1(y) <= c.param
    if v == "simplex":
        return all(val > 0 for _, val in y.items()) and norm_l1(y) == c.param
    if v == "hyperplane":
        return sum((val for _, val in y.items()), Fraction(0)) == c.param
    if v == "nonneg_cone":
        return all(val > 0 for _, val in y.items())
    if v == "nonpos_cone":
        return all(val < 0 for _, val in y.items())
    # hull: LP feasibility of y = sum(lam_k p_k), lam in the unit simplex
    lp = LPProblem()
    lam = lp.add_vars(len(c.points), "lam")
    lp.add_row({j: 1 for j in lam}, "=", 1)
    for i in range(1, c.dim + 1):
        coeffs = {lam[k]: p[i] for k, p in enumerate(c.points) if p[i] != 0}
        lp.add_row(coeffs, "=", y[i])
    return lp_solve(lp).status == OPTIMAL


# V-representation -------------------------------------------------------------

def generators(c: ConvexSetDesc) -> Tuple[List[FinSeq], List[FinSeq]]:
    """(points, rays) with the set equal to conv(points) + cone(rays) at budget dim.

    For the hyperplane the lineality directions e_1 - e_m are listed with
    both signs.
    """
    n, r = c.dim, c.param
    v = c.variant
    if v == "ball":
        pts = [FinSeq.unit(i, s * r) for i in range(1, n + 1) for s in (1, -1)]
        return pts, []
    if v == "simplex":
        return [FinSeq.unit(i, r) for i in range(1, n + 1)], []
    if v == "hyperplane":
        rays = []
        for m in range(2, n + 1):
            d = FinSeq({1: 1, m: -1})
            rays += [d, -d]
        return [FinSeq.unit(1, r)], rays
    if v == "nonneg_cone":
        return [FinSeq()], [FinSeq.unit(i) for i in range(1, n + 1)]
    if v == "nonpos_cone":
        return [FinSeq()], [FinSeq.unit(i, -1) for i in range(1, n + 1)]
    if v == "hull":
        return list(c.points), []
    raise ValueError(f"{c.tag()} is not an l1 polyhedron")


def vertices(c: ConvexSetDesc) -> List[FinSeq]:
    """Exact vertex list of a bounded variant at its budget."""
    if not c.bounded:
        raise ValueError(f"{c.tag()} is unbounded; it has no finite vertex list")
    pts, _ = generators(c)
    if c.variant != "hull":
        return pts
    unique = list(dict.fromkeys(pts))
    keep = []
    for k, p in enumerate(unique):
        others = unique[:k] + unique[k + 1:]
        if others and membership(HullOfPoints(others, c.dim), p):
            continue
        keep.append(p)
    return keep


def support(c: ConvexSetDesc, phi: TailSeq):
    """sup <phi, y> over the set at its budget, or ``Unbounded``."""
    pts, rays = generators(c)
    for d in rays:
        if _dot(phi, d) > 0:
            return Unbounded
    return max(_dot(phi, p) for p in pts)


def _dot(phi: TailSeq, x: FinSeq) -> Fraction:
    return sum((phi[i] * v for i, v in x.items()), Fraction(0))


# LP encoding --------------------------------------------------------------------

@dataclass
class LiftedProgram:
    """LP over a set with y = p - q split and a norm variable s >= ||y||_1.

    ``pos[i]`` / ``neg[i]`` are the column indices of p_i and q_i (or None
    when the set forces a sign). ``norm`` is the column of s.
    """

    lp: LPProblem
    n: int
    pos: Dict[int, Optional[int]] = field(default_factory=dict)
    neg: Dict[int, Optional[int]] = field(default_factory=dict)
    norm: Optional[int] = None

    def y_coeffs(self, weights: Dict[int, Fraction]) -> Dict[int, Fraction]:
        """Column coefficients of the linear form sum_i w_i y_i."""
        out: Dict[int, Fraction] = {}
        for i, w in weights.items():
            if not w or i > self.n:
                continue
            if self.pos[i] is not None:
                out[self.pos[i]] = out.get(self.pos[i], Fraction(0)) + w
            if self.neg[i] is not None:
                out[self.neg[i]] = out.get(self.neg[i], Fraction(0)) - w
        return out

    def read_y(self, x: List[Fraction]) -> FinSeq:
        entries = {}
        for i in range(1, self.n + 1):
            v = Fraction(0)
            if self.pos[i] is not None:
                v += x[self.pos[i]]
            if self.neg[i] is not None:
                v -= x[self.neg[i]]
            entries[i] = v
        return FinSeq(entries)

    def copy(self) -> "LiftedProgram":
        return LiftedProgram(self.lp.copy(), self.n, dict(self.pos), dict(self.neg), self.norm)


def lifted_program(c: ConvexSetDesc, with_norm: bool = True) -> LiftedProgram:
    """Rows describing the set at its budget, ready for an objective."""
    if not c.is_l1:
        raise ValueError(f"{c.tag()} has no l1 LP encoding")
    n = c.dim
    lp = LPProblem()
    prog = LiftedProgram(lp, n)
    v = c.variant
    for i in range(1, n + 1):
        prog.pos[i] = None if v == "nonpos_cone" else lp.add_var(f"p{i}")
        prog.neg[i] = None if v in ("simplex", "nonneg_cone") else lp.add_var(f"q{i}")
    split_sum = {j: 1 for i in range(1, n + 1) for j in (prog.pos[i], prog.neg[i]) if j is not None}
    ones = {i: Fraction(1) for i in range(1, n + 1)}
    if v == "ball":
        lp.add_row(split_sum, "<=", c.param)
    elif v == "simplex":
        lp.add_row(prog.y_coeffs(ones), "=", c.param)
    elif v == "hyperplane":
        lp.add_row(prog.y_coeffs(ones), "=", c.param)
    elif v == "hull":
        lam = lp.add_vars(len(c.points), "lam")
        lp.add_row({j: 1 for j in lam}, "=", 1)
        for i in range(1, n + 1):
            row = prog.y_coeffs({i: Fraction(1)})
            for k, p in enumerate(c.points):
                if p[i]:
                    row[lam[k]] = -p[i]
            lp.add_row(row, "=", 0)
    if with_norm:
        s = lp.add_var("s")
        prog.norm = s
        row = dict(split_sum)
        row[s] = -1
        lp.add_row(row, "<=", 0)
    return prog


# JSON ----------------------------------------------------------------------------

def set_to_json(c: ConvexSetDesc) -> dict:
    out = {"variant": c.variant, "dim": c.dim}
    if c.variant in ("ball", "simplex", "s_ball", "z_set"):
        out["r"] = rat_to_json(c.param)
    elif c.variant == "hyperplane":
        out["k"] = rat_to_json(c.param)
    elif c.variant == "hull":
        out["points"] = [finseq_to_json(p) for p in c.points]
    if c.with_zero_slot:
        out["with_zero_slot"] = True
    return out


_JSON_KEYS = {
    "ball": {"r"}, "simplex": {"r", "with_zero_slot"}, "hyperplane": {"k"},
    "nonneg_cone": set(), "nonpos_cone": set(), "hull": {"points"}, "s_ball": {"r"}, "z_set": {"r"},
}


def set_from_json(obj: dict) -> ConvexSetDesc:
    if not isinstance(obj, dict) or "variant" not in obj:
        raise ValueError("set JSON needs a 'variant'")
    v = obj["variant"]
    if v not in _JSON_KEYS:
        raise ValueError(f"unknown set variant {v!r}")
    extra = set(obj) - _JSON_KEYS[v] - {"variant", "dim"}
    if extra:
        raise ValueError(f"unexpected keys for {v}: {sorted(extra)}")
    if v in ("ball", "hull", "s_ball", "z_set"):
        need = "points" if v == "hull" else "r"
        if need not in obj:
            raise ValueError(f"{v} needs {need!r}")
    dim = int(obj.get("dim", DEFAULT_DIM))
    if v == "ball":
        return Ball(rat_from_json(obj["r"]), dim)
    if v == "simplex":
        return Simplex(rat_from_json(obj.get("r", "1")), dim, bool(obj.get("with_zero_slot", False)))
    if v == "hyperplane":
        return Hyperplane(rat_from_json(obj.get("k", "1")), dim)
    if v == "nonneg_cone":
        return NonnegCone(dim)
    if v == "nonpos_cone":
        return NonposCone(dim)
    if v == "hull":
        return HullOfPoints([finseq_from_json(p) for p in obj["points"]], dim)
    if v == "s_ball":
        return SBall(rat_from_json(obj["r"]))
    return ZSet(rat_from_json(obj["r"]))
