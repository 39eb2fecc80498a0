"""Closed bounded intervals with Moore arithmetic and the gH-difference.

Endpoints are IEEE doubles with round-to-nearest; there is no outward
rounding. This is arithmetic for optimization, not for verified enclosures.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence, Union

__all__ = [
    "Interval",
    "IntervalVector",
    "Dominance",
    "IntervalError",
    "InvalidInterval",
    "DivisorContainsZero",
    "LengthMismatch",
    "IntervalOverflow",
    "ZERO",
    "ONE",
    "add",
    "sub",
    "mul",
    "scalar_mul",
    "div",
    "gh_difference",
    "compare",
    "dominates",
    "strictly_dominates",
    "interval_norm",
    "vector_norm",
    "inner_product",
    "exp_interval",
]


class IntervalError(ValueError):
    pass


class InvalidInterval(IntervalError):
    pass


class DivisorContainsZero(IntervalError, ZeroDivisionError):
    pass


class LengthMismatch(IntervalError):
    pass


class IntervalOverflow(IntervalError, OverflowError):
    pass


@dataclass(frozen=True)
class Interval:
    """A closed interval ``[lo, hi]`` with finite endpoints and ``lo <= hi``.

    Degenerate intervals (``lo == hi``) stand for real numbers. The arithmetic
    operators implement Moore's rules; ``-`` is the Moore difference
    ``a + (-1)*b``, which is *not* the gH-difference (see
    :func:`gh_difference` or :meth:`gh_sub`).
    """

    lo: float
    hi: float

    def __post_init__(self):
        lo = float(self.lo)
        hi = float(self.hi)
        if not (math.isfinite(lo) and math.isfinite(hi)):
            raise InvalidInterval(f"non-finite endpoint in [{lo}, {hi}]")
        if lo > hi:
            raise InvalidInterval(f"lower endpoint exceeds upper: [{lo}, {hi}]")
        object.__setattr__(self, "lo", lo)
        object.__setattr__(self, "hi", hi)

    @classmethod
    def point(cls, value: float) -> "Interval":
        return cls(value, value)

    @property
    def width(self) -> float:
        return self.hi - self.lo

    @property
    def mid(self) -> float:
        return 0.5 * (self.lo + self.hi)

    @property
    def is_degenerate(self) -> bool:
        return self.lo == self.hi

    def __contains__(self, value: float) -> bool:
        return self.lo <= value <= self.hi

    def __iter__(self) -> Iterator[float]:
        yield self.lo
        yield self.hi

    def __add__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return add(self, other)

    __radd__ = __add__

    def __sub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return sub(self, other)

    def __rsub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return sub(other, self)

    def __mul__(self, other):
        if isinstance(other, Interval):
            return mul(self, other)
        if isinstance(other, (int, float)):
            return scalar_mul(other, self)
        return NotImplemented

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return div(self, other)

    def __rtruediv__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return div(other, self)

    def __neg__(self) -> "Interval":
        return Interval(-self.hi, -self.lo)

    def gh_sub(self, other: "Interval") -> "Interval":
        return gh_difference(self, other)

    def norm(self) -> float:
        return interval_norm(self)

    def format(self, precision: int = 6) -> str:
        return f"[{self.lo:.{precision}g}, {self.hi:.{precision}g}]"

    def __str__(self) -> str:
        return self.format()


def _coerce(value):
    if isinstance(value, Interval):
        return value
    if isinstance(value, (int, float)):
        return Interval(value, value)
    return NotImplemented


ZERO = Interval(0.0, 0.0)
ONE = Interval(1.0, 1.0)


def add(a: Interval, b: Interval) -> Interval:
    return Interval(a.lo + b.lo, a.hi + b.hi)


def scalar_mul(lam: float, a: Interval) -> Interval:
    lam = float(lam)
    if not math.isfinite(lam):
        raise InvalidInterval(f"non-finite scalar {lam}")
    if lam >= 0:
        return Interval(lam * a.lo, lam * a.hi)
    return Interval(lam * a.hi, lam * a.lo)


def sub(a: Interval, b: Interval) -> Interval:
    """Moore difference ``a + (-1)*b``; ``sub(a, a)`` is not zero in general."""
    return add(a, scalar_mul(-1.0, b))


def mul(a: Interval, b: Interval) -> Interval:
    # Four-products rule. mul(a, a) is the self-product, not the square
    # function, so it can dip below zero when 0 is inside a.
    p = (a.lo * b.lo, a.lo * b.hi, a.hi * b.lo, a.hi * b.hi)
    return Interval(min(p), max(p))


def div(a: Interval, b: Interval) -> Interval:
    if b.lo <= 0.0 <= b.hi:
        raise DivisorContainsZero(f"divisor {b} contains zero")
    return mul(a, Interval(1.0 / b.hi, 1.0 / b.lo))


def gh_difference(a: Interval, b: Interval) -> Interval:
    d_lo = a.lo - b.lo
    d_hi = a.hi - b.hi
    return Interval(min(d_lo, d_hi), max(d_lo, d_hi))


class Dominance(enum.Enum):
    """Outcome of ``compare(a, b)``, read as "a ... b"."""

    STRICTLY_DOMINATES = "strictly_dominates"
    DOMINATES = "dominates"
    EQUAL = "equal"
    DOMINATED_BY = "dominated_by"
    STRICTLY_DOMINATED_BY = "strictly_dominated_by"
    INCOMPARABLE = "incomparable"

    def mirror(self) -> "Dominance":
        return _MIRROR[self]

    @property
    def is_dominating(self) -> bool:
        """True when ``a`` is at least as good as ``b`` (``a`` precedes-or-equals ``b``)."""
        return self in (Dominance.STRICTLY_DOMINATES, Dominance.DOMINATES, Dominance.EQUAL)

    @property
    def is_dominated(self) -> bool:
        return self in (
            Dominance.STRICTLY_DOMINATED_BY,
            Dominance.DOMINATED_BY,
            Dominance.EQUAL,
        )


_MIRROR = {
    Dominance.STRICTLY_DOMINATES: Dominance.STRICTLY_DOMINATED_BY,
    Dominance.DOMINATES: Dominance.DOMINATED_BY,
    Dominance.EQUAL: Dominance.EQUAL,
    Dominance.DOMINATED_BY: Dominance.DOMINATES,
    Dominance.STRICTLY_DOMINATED_BY: Dominance.STRICTLY_DOMINATES,
    Dominance.INCOMPARABLE: Dominance.INCOMPARABLE,
}


def compare(a: Interval, b: Interval) -> Dominance:
    """Classify ``a`` against ``b`` under the endpoint-wise partial order.

    Exact comparison, no tolerance. Since ``a`` dominating ``b`` without
    being equal to it is already strict domination, the weak members
    ``DOMINATES``/``DOMINATED_BY`` never come back from this function; they
    exist so callers can name the relation.
    """
    if a.lo == b.lo and a.hi == b.hi:
        return Dominance.EQUAL
    if a.lo <= b.lo and a.hi <= b.hi:
        return Dominance.STRICTLY_DOMINATES
    if b.lo <= a.lo and b.hi <= a.hi:
        return Dominance.STRICTLY_DOMINATED_BY
    return Dominance.INCOMPARABLE


def dominates(a: Interval, b: Interval) -> bool:
    """``a`` precedes-or-equals ``b``."""
    return a.lo <= b.lo and a.hi <= b.hi


def strictly_dominates(a: Interval, b: Interval) -> bool:
    return dominates(a, b) and a != b


def interval_norm(a: Interval) -> float:
    return max(abs(a.lo), abs(a.hi))


def exp_interval(a: Interval) -> Interval:
    try:
        return Interval(math.exp(a.lo), math.exp(a.hi))
    except OverflowError as exc:
        raise IntervalOverflow(f"exp overflows on {a}") from exc


IntervalLike = Union[Interval, Sequence[float]]


def _as_interval(item) -> Interval:
    if isinstance(item, Interval):
        return item
    lo, hi = item
    return Interval(lo, hi)


class IntervalVector(Sequence[Interval]):
    """An immutable n-tuple of intervals (n >= 1)."""

    __slots__ = ("_items",)

    def __init__(self, items: Iterable[IntervalLike]):
        items = tuple(_as_interval(it) for it in items)
        if not items:
            raise InvalidInterval("an interval vector needs at least one component")
        self._items = items

    @classmethod
    def zeros(cls, n: int) -> "IntervalVector":
        return cls([ZERO] * n)

    @classmethod
    def from_points(cls, values: Iterable[float]) -> "IntervalVector":
        return cls(Interval(v, v) for v in values)

    def __len__(self) -> int:
        return len(self._items)

    def __getitem__(self, i):
        return self._items[i]

    def __iter__(self) -> Iterator[Interval]:
        return iter(self._items)

    def __eq__(self, other) -> bool:
        if isinstance(other, IntervalVector):
            return self._items == other._items
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self._items)

    def __repr__(self) -> str:
        return f"IntervalVector({list(self._items)!r})"

    @property
    def lo(self) -> tuple:
        return tuple(a.lo for a in self._items)

    @property
    def hi(self) -> tuple:
        return tuple(a.hi for a in self._items)

    def _check(self, other: "IntervalVector") -> None:
        if len(self) != len(other):
            raise LengthMismatch(f"lengths differ: {len(self)} vs {len(other)}")

    def __add__(self, other: "IntervalVector") -> "IntervalVector":
        self._check(other)
        return IntervalVector(add(a, b) for a, b in zip(self, other))

    def gh_sub(self, other: "IntervalVector") -> "IntervalVector":
        self._check(other)
        return IntervalVector(gh_difference(a, b) for a, b in zip(self, other))

    def scale(self, lam: float) -> "IntervalVector":
        return IntervalVector(scalar_mul(lam, a) for a in self)

    def norm(self) -> float:
        return vector_norm(self)


def vector_norm(v: IntervalVector) -> float:
    return math.fsum(interval_norm(a) for a in v)


def inner_product(d: Sequence[float], v: Sequence[Interval]) -> Interval:
    """Moore sum of ``d[i] * v[i]``: the interval ``d^T (.) v``."""
    if len(d) != len(v):
        raise LengthMismatch(f"direction has length {len(d)}, vector {len(v)}")
    total = ZERO
    for di, vi in zip(d, v):
        total = add(total, scalar_mul(di, vi))
    return total
