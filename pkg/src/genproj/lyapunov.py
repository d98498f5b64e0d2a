"""The functional V(phi, x) = ||phi||^2 - 2<phi, x> + ||x||^2, computed exactly."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .duality import duality_contains, duality_l1
from .exact_core import FinSeq, TailSeq, norm_l1, norm_l1_with_zero, norm_sup, pair, pair_c


@dataclass(frozen=True)
class LyapunovValue:
    value: Fraction
    lower_bound: Fraction
    upper_bound: Fraction

    def __post_init__(self):
        if not (self.lower_bound <= self.value <= self.upper_bound):
            raise AssertionError(f"V={self.value} escapes [{self.lower_bound}, {self.upper_bound}]")


def _with_bounds(a: Fraction, b: Fraction, value: Fraction) -> LyapunovValue:
    return LyapunovValue(value, (a - b) ** 2, (a + b) ** 2)


def v_eval(phi: TailSeq, x: FinSeq) -> LyapunovValue:
    """V on l_inf x l1."""
    a, b = norm_sup(phi), norm_l1(x)
    return _with_bounds(a, b, a * a - 2 * pair(phi, x) + b * b)


def v_value(phi: TailSeq, x: FinSeq) -> Fraction:
    return v_eval(phi, x).value


def v_zero_iff_duality(phi: TailSeq, x: FinSeq) -> bool:
    """V(phi, x) == 0, cross-checked against membership of phi in J(x)."""
    zero = v_eval(phi, x).value == 0
    in_box = duality_contains(duality_l1(x), phi)
    if zero != in_box:
        raise RuntimeError(f"V=0 test ({zero}) disagrees with the duality box ({in_box})")
    return zero


def v_eval_c(g: FinSeq, t: TailSeq) -> LyapunovValue:
    """V on c* x c: g in l1 with its 0 slot, t convergent with limit t.tail."""
    a, b = norm_l1_with_zero(g), norm_sup(t)
    return _with_bounds(a, b, a * a - 2 * pair_c(g, t) + b * b)
