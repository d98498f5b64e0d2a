"""Normalized duality map on the implemented models.

For x in l1 the set J(x) is an axis-aligned box in l_inf: coordinates in
the support of x are pinned to ||x||*sign(x_i), every other coordinate and
the tail range over [-||x||, ||x||]. Everything below reduces to that box.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from typing import Dict, Iterator, List, Tuple

from .convex_sets import DEFAULT_DIM, ConvexSetDesc, Simplex
from .exact_core import (
    FinSeq,
    RationalLike,
    TailSeq,
    as_rational,
    norm_l1,
    norm_sup,
    rat_to_json,
    sign,
)


@dataclass(frozen=True)
class DualityBox:
    """Exact description of J(x) for x in the l1 model."""

    norm_value: Fraction
    fixed: Tuple[Tuple[int, Fraction], ...]
    free_bound: Fraction

    @property
    def tail_interval(self) -> Tuple[Fraction, Fraction]:
        return (-self.free_bound, self.free_bound)

    @property
    def fixed_map(self) -> Dict[int, Fraction]:
        return dict(self.fixed)

    def free_coords(self, n: int) -> List[int]:
        """Coordinates in 1..n that are not pinned."""
        pinned = self.fixed_map
        return [i for i in range(1, n + 1) if i not in pinned]

    def vertices(self, n: int) -> Iterator[TailSeq]:
        """Corners of the box restricted to coordinates 1..n.

        The tail is set to +norm as a representative; it never pairs with a
        point supported in 1..n.
        """
        free = self.free_coords(n)
        b = self.free_bound
        pinned = self.fixed_map
        if b == 0:
            yield TailSeq()
            return
        for signs in product((1, -1), repeat=len(free)):
            vals = dict(pinned)
            vals.update({i: s * b for i, s in zip(free, signs)})
            yield TailSeq([vals.get(i, b) for i in range(1, n + 1)], b)

    def element(self, free_values: Dict[int, Fraction], n: int) -> TailSeq:
        """Member with the given values on free coordinates (others at +bound)."""
        vals = self.fixed_map
        for i, v in free_values.items():
            if i in vals:
                raise ValueError(f"coordinate {i} is pinned")
            if abs(v) > self.free_bound:
                raise ValueError("free value outside the box")
            vals[i] = v
        b = self.free_bound
        m = max([n] + list(vals))
        return TailSeq([vals.get(i, b) for i in range(1, m + 1)], b)

    def min_pairing(self, d: FinSeq) -> Fraction:
        """min over the box of <j, d> for finitely supported d."""
        pinned = self.fixed_map
        total = Fraction(0)
        for i, v in d.items():
            if i in pinned:
                total += pinned[i] * v
            else:
                total -= self.free_bound * abs(v)
        return total

    def max_pairing(self, d: FinSeq) -> Fraction:
        return -self.min_pairing(-d)

    def to_json(self) -> dict:
        lo, hi = self.tail_interval
        return {
            "norm": rat_to_json(self.norm_value),
            "fixed": {str(i): rat_to_json(v) for i, v in self.fixed},
            "free_bound": rat_to_json(self.free_bound),
            "tail": [rat_to_json(lo), rat_to_json(hi)],
        }


def duality_l1(x: FinSeq) -> DualityBox:
    if x.has_zero_slot:
        raise ValueError("x carries an index-0 entry; it is not in the l1/l_inf duality")
    r = norm_l1(x)
    fixed = tuple((i, r * sign(v)) for i, v in x.items())
    return DualityBox(r, fixed, r)


def duality_contains(box: DualityBox, phi: TailSeq) -> bool:
    if norm_sup(phi) != box.norm_value:
        return False
    pinned = box.fixed_map
    for i, v in pinned.items():
        if phi[i] != v:
            return False
    b = box.free_bound
    return all(abs(v) <= b for v in phi.prefix) and abs(phi.tail) <= b


def duality_l2(x: FinSeq) -> FinSeq:
    """In a Hilbert space J is the identity."""
    return x


def identical_points_l2(x: FinSeq, y: FinSeq) -> bool:
    """J(x) and J(y) are the singletons {x}, {y} in l2."""
    return duality_l2(x) == duality_l2(y)


def duality_c(beta: TailSeq, dim: int = DEFAULT_DIM) -> ConvexSetDesc:
    """J(beta_r) inside c* = l1, where members use the 0 slot.

    Only constant sequences beta_r = (r, r, ...) with r > 0 are handled.
    """
    if beta.prefix or beta.tail <= 0:
        raise ValueError("duality_c needs a constant sequence beta_r with r > 0")
    r = beta.tail
    return Simplex(r, dim=dim, with_zero_slot=True)


def inverse_duality_contains(phi: TailSeq, x: FinSeq) -> bool:
    """Is x in J^-1(phi), i.e. phi in J(x)?"""
    return duality_contains(duality_l1(x), phi)


def inverse_duality_solve_beta(r: RationalLike, dim: int = DEFAULT_DIM) -> ConvexSetDesc:
    """J^-1(beta_r) as a set descriptor: the simplex of radius r."""
    r = as_rational(r)
    if r <= 0:
        raise ValueError("r must be positive")
    return Simplex(r, dim=dim)


def identical_points(x: FinSeq, y: FinSeq) -> bool:
    """Decide J(x) and J(y) intersect, coordinate by coordinate.

    Both boxes share the same free bound iff the norms agree; pinned values
    then have magnitude equal to that bound, so pinned-vs-free coordinates
    always fit and only pinned-vs-pinned coordinates can clash.
    """
    bx, by = duality_l1(x), duality_l1(y)
    if bx.norm_value != by.norm_value:
        return False
    px, py = bx.fixed_map, by.fixed_map
    return all(py[i] == v for i, v in px.items() if i in py)
