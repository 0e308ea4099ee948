"""Exact rational intervals, interval unions and real-root isolation.

Every scalar is a :class:`fractions.Fraction`; nothing in here touches floats.
"""

from __future__ import annotations

from bisect import bisect_right
from dataclasses import dataclass
from fractions import Fraction
from math import lcm
from typing import Iterable, Sequence

from . import _kernels
from .errors import NoRootFound

Rational = Fraction


def as_rational(value) -> Fraction:
    """Exact conversion; strings like ``"0.43"`` and ``"4/9"`` are accepted."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, float):
        raise TypeError("floats are not accepted; pass a string or Fraction")
    return Fraction(value)


def format_rational(x: Fraction) -> str:
    """``p/q`` form, integers printed as ``p/1``."""
    return f"{x.numerator}/{x.denominator}"


@dataclass(frozen=True, order=True)
class Interval:
    """Closed interval ``[lo, hi]`` with rational endpoints."""

    lo: Fraction
    hi: Fraction

    def __post_init__(self):
        lo = as_rational(self.lo)
        hi = as_rational(self.hi)
        if lo > hi:
            raise ValueError(f"empty interval [{lo}, {hi}]")
        object.__setattr__(self, "lo", lo)
        object.__setattr__(self, "hi", hi)

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    def __contains__(self, x) -> bool:
        return self.lo <= x <= self.hi

    def contains_interval(self, other: Interval) -> bool:
        return self.lo <= other.lo and other.hi <= self.hi

    def scale(self, k: Fraction) -> Interval:
        """Image under ``x -> k*x`` for ``k >= 0``."""
        return Interval(k * self.lo, k * self.hi)

    def __str__(self):
        return f"[{format_rational(self.lo)}, {format_rational(self.hi)}]"


def _common_denominator(intervals: Iterable[Interval]) -> int:
    den = 1
    for iv in intervals:
        den = lcm(den, iv.lo.denominator, iv.hi.denominator)
    return den


def _to_ints(intervals: Sequence[Interval], den: int):
    los = [iv.lo.numerator * (den // iv.lo.denominator) for iv in intervals]
    his = [iv.hi.numerator * (den // iv.hi.denominator) for iv in intervals]
    return los, his


def _from_ints(los, his, den: int) -> tuple[Interval, ...]:
    return tuple(Interval(Fraction(lo, den), Fraction(hi, den)) for lo, hi in zip(los, his))


@dataclass(frozen=True)
class IntervalUnion:
    """Finite union of pairwise disjoint closed intervals, sorted left to right.

    Build instances with :func:`union_normalize`; the constructor trusts its input.
    """

    parts: tuple[Interval, ...] = ()

    def __iter__(self):
        return iter(self.parts)

    def __len__(self):
        return len(self.parts)

    def __bool__(self):
        return bool(self.parts)

    def _part_at(self, x) -> Interval | None:
        """The part whose left end is the last one ``<= x``."""
        k = bisect_right(self.parts, x, key=lambda p: p.lo)
        return self.parts[k - 1] if k else None

    def __contains__(self, x) -> bool:
        part = self._part_at(x)
        return part is not None and x <= part.hi

    @property
    def measure(self) -> Fraction:
        return sum((iv.width for iv in self.parts), Fraction(0))

    @property
    def hull(self) -> Interval | None:
        if not self.parts:
            return None
        return Interval(self.parts[0].lo, self.parts[-1].hi)

    def covers(self, iv: Interval) -> bool:
        """True iff the closed interval ``iv`` lies inside a single part."""
        part = self._part_at(iv.lo)
        return part is not None and iv.hi <= part.hi

    def issubset(self, other: IntervalUnion) -> bool:
        return all(other.covers(p) for p in self.parts)

    def __or__(self, other: IntervalUnion) -> IntervalUnion:
        return union_normalize(self.parts + other.parts)

    def scale(self, k: Fraction) -> IntervalUnion:
        return IntervalUnion(tuple(p.scale(k) for p in self.parts))

    def intersect(self, box: Interval) -> IntervalUnion:
        out = []
        for p in self.parts:
            lo, hi = max(p.lo, box.lo), min(p.hi, box.hi)
            if lo <= hi:
                out.append(Interval(lo, hi))
        return IntervalUnion(tuple(out))

    def meets_open(self, lo: Fraction, hi: Fraction) -> bool:
        """True iff some point of the union lies in the open interval ``(lo, hi)``."""
        return lo < hi and any(p.lo < hi and p.hi > lo for p in self.parts)

    def __str__(self):
        if not self.parts:
            return "{}"
        return " U ".join(str(p) for p in self.parts)


def union_normalize(raw: Iterable[Interval]) -> IntervalUnion:
    """Merge closed intervals into a sorted union of disjoint parts.

    Touching intervals (``[0,1/2]`` and ``[1/2,1]``) merge into one part.
    """
    raw = list(raw)
    if not raw:
        return IntervalUnion()
    den = _common_denominator(raw)
    los, his = _to_ints(raw, den)
    los, his = _kernels.merge_intervals(los, his)
    return IntervalUnion(_from_ints(los, his, den))


def union_complement_in(u: IntervalUnion, box: Interval) -> IntervalUnion:
    """Closure of ``box`` minus ``u``."""
    out = []
    cursor = box.lo
    for p in u.parts:
        if p.hi < box.lo:
            continue
        if p.lo > box.hi:
            break
        if p.lo > cursor:
            out.append(Interval(cursor, p.lo))
        cursor = max(cursor, p.hi)
    if cursor < box.hi:
        out.append(Interval(cursor, box.hi))
    return IntervalUnion(tuple(out))


# ---------------------------------------------------------------------------
# Polynomials with integer coefficients


@dataclass(frozen=True)
class IntegerPolynomial:
    """Integer polynomial, constant term first."""

    coefficients: tuple[int, ...]

    def __post_init__(self):
        coeffs = tuple(int(a) for a in self.coefficients)
        while len(coeffs) > 1 and coeffs[-1] == 0:
            coeffs = coeffs[:-1]
        if not coeffs or coeffs[-1] == 0:
            raise ValueError("zero polynomial")
        object.__setattr__(self, "coefficients", coeffs)

    @classmethod
    def from_terms(cls, terms: dict[int, int]) -> IntegerPolynomial:
        """Build from ``{power: coefficient}``."""
        coeffs = [0] * (max(terms) + 1)
        for k, a in terms.items():
            coeffs[k] += a
        return cls(tuple(coeffs))

    @property
    def degree(self) -> int:
        return len(self.coefficients) - 1

    def __call__(self, x: Fraction) -> Fraction:
        acc = Fraction(0)
        for a in reversed(self.coefficients):
            acc = acc * x + a
        return acc

    def sign(self, x: Fraction) -> int:
        v = self(x)
        return (v > 0) - (v < 0)


def _trim(p: list[Fraction]) -> list[Fraction]:
    while p and p[-1] == 0:
        p.pop()
    return p


def _poly_rem(a: list[Fraction], b: list[Fraction]) -> list[Fraction]:
    a = list(a)
    while len(a) >= len(b) and a:
        k = a[-1] / b[-1]
        shift = len(a) - len(b)
        for i, bi in enumerate(b):
            a[shift + i] -= k * bi
        a.pop()
        _trim(a)
    return a


def _poly_quo(a: list[Fraction], b: list[Fraction]) -> list[Fraction]:
    a = list(a)
    q = [Fraction(0)] * max(len(a) - len(b) + 1, 1)
    while len(a) >= len(b) and a:
        k = a[-1] / b[-1]
        shift = len(a) - len(b)
        q[shift] = k
        for i, bi in enumerate(b):
            a[shift + i] -= k * bi
        a.pop()
        _trim(a)
    return q


def _derivative(p: list[Fraction]) -> list[Fraction]:
    return [k * a for k, a in enumerate(p)][1:]


def _evaluate(p: list[Fraction], x: Fraction) -> Fraction:
    acc = Fraction(0)
    for a in reversed(p):
        acc = acc * x + a
    return acc


def _squarefree(p: list[Fraction]) -> list[Fraction]:
    a, b = p, _derivative(p)
    while b:
        a, b = b, _poly_rem(a, b)
    if len(a) == 1:
        return p
    return _poly_quo(p, a)


def sturm_sequence(p: IntegerPolynomial) -> list[list[Fraction]]:
    """Sturm chain of the square-free part of ``p``."""
    p0 = _squarefree([Fraction(a) for a in p.coefficients])
    chain = [p0, _derivative(p0)]
    while chain[-1]:
        r = _poly_rem(chain[-2], chain[-1])
        if not r:
            break
        chain.append([-a for a in r])
    return [q for q in chain if q]


def _sign_changes(chain, x: Fraction) -> int:
    signs = [s for s in ((v > 0) - (v < 0) for v in (_evaluate(q, x) for q in chain)) if s]
    return sum(1 for s, t in zip(signs, signs[1:]) if s != t)


def count_roots(p: IntegerPolynomial, lo: Fraction, hi: Fraction, chain=None) -> int:
    """Number of distinct real roots of ``p`` in the half-open interval ``(lo, hi]``."""
    chain = chain if chain is not None else sturm_sequence(p)
    return _sign_changes(chain, lo) - _sign_changes(chain, hi)


def isolate_smallest_root(
    p: IntegerPolynomial,
    window: Interval,
    precision: Fraction,
    max_depth: int = 256,
) -> Interval:
    """Enclose the smallest real root of ``p`` in ``window`` to width ``<= precision``.

    Sturm counts keep the enclosure on the leftmost root; the returned endpoints
    are rational and, unless the enclosure collapses onto an exact rational root,
    carry opposite signs of the square-free part of ``p``.
    """
    precision = as_rational(precision)
    if precision <= 0:
        raise ValueError("precision must be positive")
    chain = sturm_sequence(p)
    sqf = chain[0]
    a, b = window.lo, window.hi
    if _evaluate(sqf, a) == 0:
        return Interval(a, a)
    if count_roots(p, a, b, chain) == 0:
        raise NoRootFound(f"no real root of {p.coefficients} in {window}")
    for _ in range(max_depth):
        if b - a <= precision:
            return Interval(a, b)
        mid = (a + b) / 2
        left = count_roots(p, a, mid, chain)
        if left:
            if _evaluate(sqf, mid) == 0 and left == 1:
                return Interval(mid, mid)
            b = mid
        else:
            a = mid
    if b - a <= precision:
        return Interval(a, b)
    raise NoRootFound(f"precision {precision} not reached within {max_depth} bisections")
