"""Exact sequence models for l1, l_inf, c and c0.

Two immutable carriers cover every concrete element used by the toolkit:

* ``FinSeq``: a finitely supported sequence, 1-indexed, with an optional
  index-0 slot that only matters for the pairing between l1 and c.
* ``TailSeq``: a finite prefix followed by a constant tail, modelling
  eventually constant elements of l_inf and c (c0 when the tail is zero).

All scalars are ``fractions.Fraction``; floats are refused so that nothing
inexact leaks into a ground-truth computation.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Iterator, Mapping, Optional, Sequence, Union

Rational = Fraction
RationalLike = Union[int, str, Fraction]


def as_rational(value: RationalLike) -> Fraction:
    """Convert ints, "p/q" strings and Fractions to a Fraction."""
    if isinstance(value, bool):
        raise TypeError("booleans are not scalars")
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value.strip())
    raise TypeError(f"cannot use {type(value).__name__} as an exact scalar")


def sign(value: Fraction) -> int:
    return (value > 0) - (value < 0)


class FinSeq:
    """Finitely supported real sequence (an element of l1).

    Indices start at 1. ``zero`` holds the optional index-0 entry used by the
    pairing with c; ``pair`` rejects sequences that carry it.
    """

    __slots__ = ("_items", "_zero")

    def __init__(self, entries: Optional[Mapping[int, RationalLike]] = None,
                 zero: RationalLike = 0):
        items = {}
        for index, value in (entries or {}).items():
            index = int(index)
            if index < 1:
                raise ValueError("FinSeq indices start at 1; use zero= for slot 0")
            q = as_rational(value)
            if q != 0:
                items[index] = q
        self._items = tuple(sorted(items.items()))
        self._zero = as_rational(zero)

    @classmethod
    def from_list(cls, values: Sequence[RationalLike], zero: RationalLike = 0) -> "FinSeq":
        """Build from the values at indices 1, 2, ..."""
        return cls({i + 1: v for i, v in enumerate(values)}, zero=zero)

    @classmethod
    def unit(cls, index: int, value: RationalLike = 1) -> "FinSeq":
        return cls({index: value})

    @classmethod
    def zero_seq(cls) -> "FinSeq":
        return cls()

    @property
    def zero(self) -> Fraction:
        return self._zero

    @property
    def has_zero_slot(self) -> bool:
        return self._zero != 0

    @property
    def support(self) -> tuple:
        return tuple(i for i, _ in self._items)

    @property
    def max_index(self) -> int:
        return self._items[-1][0] if self._items else 0

    def items(self) -> Iterator[tuple]:
        return iter(self._items)

    def __getitem__(self, index: int) -> Fraction:
        if index == 0:
            return self._zero
        for i, v in self._items:
            if i == index:
                return v
        return Fraction(0)

    def to_list(self, n: int) -> list:
        """Values at indices 1..n."""
        out = [Fraction(0)] * n
        for i, v in self._items:
            if i <= n:
                out[i - 1] = v
        return out

    def is_zero(self) -> bool:
        return not self._items and self._zero == 0

    def _combine(self, other: "FinSeq", factor: int) -> "FinSeq":
        merged = dict(self._items)
        for i, v in other._items:
            merged[i] = merged.get(i, Fraction(0)) + factor * v
        return FinSeq(merged, zero=self._zero + factor * other._zero)

    def __add__(self, other: "FinSeq") -> "FinSeq":
        return self._combine(other, 1)

    def __sub__(self, other: "FinSeq") -> "FinSeq":
        return self._combine(other, -1)

    def __neg__(self) -> "FinSeq":
        return self.scale(-1)

    def scale(self, factor: RationalLike) -> "FinSeq":
        f = as_rational(factor)
        return FinSeq({i: f * v for i, v in self._items}, zero=f * self._zero)

    def __mul__(self, factor: RationalLike) -> "FinSeq":
        return self.scale(factor)

    __rmul__ = __mul__

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, FinSeq):
            return NotImplemented
        return self._items == other._items and self._zero == other._zero

    def __hash__(self) -> int:
        return hash((self._items, self._zero))

    def __repr__(self) -> str:
        body = ", ".join(f"{i}: {v}" for i, v in self._items)
        zero = f", zero={self._zero}" if self._zero else ""
        return f"FinSeq({{{body}}}{zero})"


class TailSeq:
    """Eventually constant sequence: ``prefix`` at indices 1..m, then ``tail``.

    The representation is canonical: trailing prefix entries equal to the
    tail are folded into it.
    """

    __slots__ = ("_prefix", "_tail")

    def __init__(self, prefix: Iterable[RationalLike] = (), tail: RationalLike = 0):
        values = [as_rational(v) for v in prefix]
        t = as_rational(tail)
        while values and values[-1] == t:
            values.pop()
        self._prefix = tuple(values)
        self._tail = t

    @classmethod
    def constant(cls, value: RationalLike) -> "TailSeq":
        """The constant sequence (value, value, ...), e.g. beta_r."""
        return cls((), value)

    @classmethod
    def from_finseq(cls, x: FinSeq, tail: RationalLike = 0) -> "TailSeq":
        return cls(x.to_list(x.max_index), tail)

    @property
    def prefix(self) -> tuple:
        return self._prefix

    @property
    def tail(self) -> Fraction:
        return self._tail

    @property
    def in_c0(self) -> bool:
        return self._tail == 0

    def __getitem__(self, index: int) -> Fraction:
        if index < 1:
            raise IndexError("TailSeq indices start at 1")
        if index <= len(self._prefix):
            return self._prefix[index - 1]
        return self._tail

    def to_list(self, n: int) -> list:
        return [self[i] for i in range(1, n + 1)]

    def _combine(self, other: "TailSeq", factor: int) -> "TailSeq":
        m = max(len(self._prefix), len(other._prefix))
        prefix = [self[i] + factor * other[i] for i in range(1, m + 1)]
        return TailSeq(prefix, self._tail + factor * other._tail)

    def __add__(self, other: "TailSeq") -> "TailSeq":
        return self._combine(other, 1)

    def __sub__(self, other: "TailSeq") -> "TailSeq":
        return self._combine(other, -1)

    def __neg__(self) -> "TailSeq":
        return self.scale(-1)

    def scale(self, factor: RationalLike) -> "TailSeq":
        f = as_rational(factor)
        return TailSeq([f * v for v in self._prefix], f * self._tail)

    def __mul__(self, factor: RationalLike) -> "TailSeq":
        return self.scale(factor)

    __rmul__ = __mul__

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, TailSeq):
            return NotImplemented
        return self._prefix == other._prefix and self._tail == other._tail

    def __hash__(self) -> int:
        return hash((self._prefix, self._tail))

    def __repr__(self) -> str:
        body = ", ".join(str(v) for v in self._prefix)
        return f"TailSeq([{body}], tail={self._tail})"


def norm_l1(x: FinSeq) -> Fraction:
    """Sum of absolute entries at indices >= 1 (the 0 slot is excluded)."""
    return sum((abs(v) for _, v in x.items()), Fraction(0))


def norm_l1_with_zero(x: FinSeq) -> Fraction:
    """l1 norm of an element of c* = l1, counting the index-0 slot."""
    return norm_l1(x) + abs(x.zero)


def norm_sup(phi: TailSeq) -> Fraction:
    return max([abs(v) for v in phi.prefix] + [abs(phi.tail)])


def pair(phi: TailSeq, x: FinSeq) -> Fraction:
    """Pairing of l_inf with l1."""
    if x.has_zero_slot:
        raise ValueError("x carries an index-0 entry; use pair_c for the c-pairing")
    return sum((phi[i] * v for i, v in x.items()), Fraction(0))


def pair_c(x: FinSeq, t: TailSeq) -> Fraction:
    """Pairing of c* = l1 (with its 0 slot) against an element of c."""
    total = x.zero * t.tail
    for i, v in x.items():
        total += v * t[i]
    return total


# JSON encodings -------------------------------------------------------------

def rat_to_json(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def rat_from_json(value) -> Fraction:
    if isinstance(value, float):
        raise ValueError(f"exact value expected, got float {value!r}")
    return as_rational(value)


def finseq_to_json(x: FinSeq) -> dict:
    out = {"entries": {str(i): rat_to_json(v) for i, v in x.items()}}
    if x.has_zero_slot:
        out["zero"] = rat_to_json(x.zero)
    return out


def finseq_from_json(obj) -> FinSeq:
    """Accept {"entries": {...}, "zero": ...} or a plain list (indices 1..)."""
    if isinstance(obj, list):
        return FinSeq.from_list([rat_from_json(v) for v in obj])
    if not isinstance(obj, dict) or "entries" not in obj:
        raise ValueError("FinSeq JSON needs an 'entries' object or a list")
    entries = {int(k): rat_from_json(v) for k, v in obj["entries"].items()}
    return FinSeq(entries, zero=rat_from_json(obj.get("zero", "0")))


def tailseq_to_json(phi: TailSeq) -> dict:
    return {"prefix": [rat_to_json(v) for v in phi.prefix], "tail": rat_to_json(phi.tail)}


def tailseq_from_json(obj) -> TailSeq:
    if isinstance(obj, list):
        return TailSeq([rat_from_json(v) for v in obj], 0)
    if not isinstance(obj, dict) or "tail" not in obj:
        raise ValueError("TailSeq JSON needs 'prefix' and 'tail'")
    return TailSeq([rat_from_json(v) for v in obj.get("prefix", [])], rat_from_json(obj["tail"]))
