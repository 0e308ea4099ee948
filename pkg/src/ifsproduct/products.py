"""Products of covers, the four-interval refinement test and coverage verdicts."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import lcm

from . import _kernels
from .errors import NegativeInput, OrderViolation, PreconditionViolated, WidthMismatch
from .ifs import IfsParams, WindowSpec, build_cover, full_window, iter_covers
from .numerics import (
    Interval,
    IntervalUnion,
    _common_denominator,
    _from_ints,
    _to_ints,
    union_normalize,
)


def interval_product(I1: Interval, I2: Interval) -> Interval:
    """Image of ``(x, y) -> x*y`` on ``I1 x I2`` for non-negative intervals."""
    if I1.lo < 0 or I2.lo < 0:
        raise NegativeInput("interval products need non-negative endpoints")
    return Interval(I1.lo * I2.lo, I1.hi * I2.hi)


@dataclass(frozen=True)
class ProductRefinement:
    """Products of the child pieces of ``[a, a+t]`` and ``[b, b+t]``, ``a >= b``.

    With ``d = 1 - lam`` the children are ``[a, a+ct] U [a+dt, a+t]`` and the
    four products are::

        j1 = [ab,            (a+ct)(b+ct)]
        j2 = [b(a+dt),       (a+t)(b+ct)]
        j3 = [a(b+dt),       (a+ct)(b+t)]
        j4 = [(a+dt)(b+dt),  (a+t)(b+t)]
    """

    j1: Interval
    j2: Interval
    j3: Interval
    j4: Interval

    @property
    def e(self) -> tuple[Fraction, ...]:
        return tuple(j.lo for j in self.intervals)

    @property
    def h(self) -> tuple[Fraction, ...]:
        return tuple(j.hi for j in self.intervals)

    @property
    def intervals(self) -> tuple[Interval, Interval, Interval, Interval]:
        return (self.j1, self.j2, self.j3, self.j4)

    @property
    def margins(self) -> tuple[Fraction, Fraction, Fraction]:
        """``(h1 - e2, h2 - e3, h3 - e4)``."""
        e, h = self.e, self.h
        return (h[0] - e[1], h[1] - e[2], h[2] - e[3])

    def union(self) -> IntervalUnion:
        return union_normalize(self.intervals)


def _ordered(I1: Interval, I2: Interval) -> tuple[Interval, Interval]:
    if I1.width != I2.width:
        raise WidthMismatch(f"widths differ: {I1.width} vs {I2.width}")
    if I1.lo < 0 or I2.lo < 0:
        raise NegativeInput("interval products need non-negative endpoints")
    return I1, I2


def refine_product(p: IfsParams, I1: Interval, I2: Interval) -> ProductRefinement:
    I1, I2 = _ordered(I1, I2)
    a, b, t = I1.lo, I2.lo, I1.width
    if a < b:
        raise OrderViolation("refine_product expects lo(I1) >= lo(I2)")
    c, d = p.c, 1 - p.lam
    return ProductRefinement(
        Interval(a * b, (a + c * t) * (b + c * t)),
        Interval(b * (a + d * t), (a + t) * (b + c * t)),
        Interval(a * (b + d * t), (a + c * t) * (b + t)),
        Interval((a + d * t) * (b + d * t), (a + t) * (b + t)),
    )


def stability_check(p: IfsParams, I1: Interval, I2: Interval) -> bool:
    """True iff the children's products fill the parent product without gaps."""
    return all(m >= 0 for m in refine_product(p, I1, I2).margins)


def stability_check_unordered(p: IfsParams, I1: Interval, I2: Interval) -> bool:
    if I1.lo < I2.lo:
        I1, I2 = I2, I1
    return stability_check(p, I1, I2)


def product_union(u1: IntervalUnion, u2: IntervalUnion) -> IntervalUnion:
    """Merged union of the products of every part of ``u1`` with every part of ``u2``."""
    if not u1 or not u2:
        return IntervalUnion()
    for iv in (u1.parts[0], u2.parts[0]):
        if iv.lo < 0:
            raise NegativeInput("interval products need non-negative endpoints")
    den = _common_denominator(u1.parts + u2.parts)
    los1, his1 = _to_ints(u1.parts, den)
    los2, his2 = _to_ints(u2.parts, den)
    los, his = _kernels.product_intervals(los1, his1, los2, his2)
    return IntervalUnion(_from_ints(los, his, den * den))


def cover_products(p: IfsParams, win: WindowSpec, n_max: int) -> list[IntervalUnion]:
    """``product_union(G_n, G_n)`` for ``n = k0 .. n_max``."""
    return [product_union(cv.union, cv.union) for cv in iter_covers(p, win, n_max)]


def depth_invariance(p: IfsParams, win: WindowSpec, n_max: int) -> bool:
    """True iff ``product_union(G_n, G_n)`` is identical for every level up to ``n_max``.

    Finite-depth agreement is evidence only; the proof of invariance is the
    pairwise refinement test.
    """
    products = cover_products(p, win, n_max)
    return all(prod == products[0] for prod in products[1:])


@dataclass(frozen=True)
class CoverageVerdict:
    covered: bool
    base_product: IntervalUnion
    m: Fraction | None
    route: str
    certificate: str
    gap: tuple[Fraction, Fraction] | None = None
    audit: dict = field(default_factory=dict, compare=False)


def rightmost_component_left(base: IntervalUnion) -> Fraction | None:
    """Left end of the part of ``base`` that reaches 1, or None if 1 is not covered."""
    if not base or base.parts[-1].hi != 1:
        return None
    return base.parts[-1].lo


def renormalized_coverage(p: IfsParams, base: IntervalUnion, route: str = "base") -> CoverageVerdict:
    """Decide whether ``{0} U base U lam*base U lam**2*base U ...`` is all of ``[0, 1]``.

    ``lam**n * base`` lies in ``[0, lam**n]``, so only ``base`` itself can
    meet ``(lam, 1]``; hence the union is ``[0, 1]`` exactly when ``base``
    contains ``[lam, 1]``, i.e. the part through 1 starts at ``m <= lam``.
    Conversely ``[lam, 1]`` in ``base`` gives ``[lam**(n+1), lam**n]`` for all n.
    """
    m = rightmost_component_left(base)
    if m is None:
        return CoverageVerdict(False, base, None, route, "base product does not reach 1")
    if m <= p.lam:
        return CoverageVerdict(True, base, m, route, f"[{m}, 1] in base product and {m} <= lambda={p.lam}")
    return CoverageVerdict(False, base, m, route, f"base product starts at {m} > lambda={p.lam}; inconclusive")


def refute_coverage(p: IfsParams, n: int = 1) -> CoverageVerdict:
    """Exhibit the gap ``(c, (1-lam)**2)`` missed by the product set.

    The attractor lies in ``[0, c] U [1-lam, 1]``, so its product set lies in
    ``[0, c] U [(1-lam)**2, 1]``. The level-``n`` outer approximation is
    checked to avoid the gap as well.
    """
    p.ensure_valid()
    lo, hi = p.c, (1 - p.lam) ** 2
    if not lo < hi:
        raise PreconditionViolated("c >= (1-lambda)^2: there is no gap to exhibit")
    outer = cover_products(p, full_window(), n)[-1] if n >= 1 else IntervalUnion((Interval(0, 1),))
    if outer.meets_open(lo, hi):
        raise AssertionError(f"outer approximation at level {n} meets the gap ({lo}, {hi})")
    return CoverageVerdict(
        False,
        outer,
        None,
        "refuted",
        f"gap ({lo}, {hi}) avoided by the level-{n} outer approximation",
        gap=(lo, hi),
    )


def base_product(p: IfsParams, win: WindowSpec) -> IntervalUnion:
    cover = build_cover(p, win, _base_level(win))
    return product_union(cover.union, cover.union)


def _base_level(win: WindowSpec) -> int:
    from .ifs import _windows

    return _windows(win)[0].base_level


def count_pair_products_outside(points, union: IntervalUnion) -> int:
    """How many ordered pairs ``(x, y)`` from ``points`` have ``x*y`` outside ``union``."""
    pts = sorted(points)
    if not pts:
        return 0
    if pts[0] < 0:
        raise NegativeInput("points must be non-negative")
    den = 1
    for x in pts:
        den = lcm(den, x.denominator)
    ints = [x.numerator * (den // x.denominator) for x in pts]
    sq = den * den
    if any((sq * iv.lo).denominator != 1 or (sq * iv.hi).denominator != 1 for iv in union):
        # put everything over a denominator that also clears the union's
        extra = _common_denominator(union.parts)
        den = lcm(den, extra)
        ints = [x.numerator * (den // x.denominator) for x in pts]
        sq = den * den
    los, his = _to_ints(union.parts, sq)
    return _kernels.count_products_outside(ints, ints, los, his)


def endpoint_products_outside(p: IfsParams, win: WindowSpec, n: int) -> int:
    """Ordered pairs of level-``n`` endpoint samples whose product misses ``product_union(G_n, G_n)``.

    Same count as ``count_pair_products_outside`` on ``endpoint_samples`` and
    the cover product, but kept in integers over the cover's scale squared so
    deep levels with millions of product components stay cheap.
    """
    cover = build_cover(p, win, n)
    w = int(cover.basic_width * cover.scale)
    lefts = list(cover.lefts)
    los, his = _kernels.merge_intervals(lefts, [a + w for a in lefts])
    plo, phi = _kernels.product_intervals(los, his, los, his)
    pts = sorted(set(lefts).union(a + w for a in lefts))
    return _kernels.count_products_outside(pts, pts, plo, phi)
