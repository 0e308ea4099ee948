"""The three-map IFS ``x -> lam*x``, ``x -> lam*x + c - lam``, ``x -> lam*x + 1 - lam``.

Basic intervals of level ``n`` are the images of ``[0, 1]`` under length-``n``
compositions and all have width ``lam**n``. A cover ``G_n`` of a window is
grown as a tree: start from the level-``k0`` basic intervals lying inside the
window and replace each basic interval by its three children, level by level.
Basic intervals are tracked by their left endpoints (integers over a common
denominator), so coinciding intervals from different words are stored once.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from math import lcm
from typing import Iterator, Sequence, Union

from . import _kernels
from .errors import InvalidParams
from .numerics import Interval, IntervalUnion, _from_ints, as_rational, union_normalize

DEFAULT_MAX_LEVEL = 24

Word = tuple[int, ...]


@dataclass(frozen=True)
class IfsParams:
    lam: Fraction
    c: Fraction
    valid: bool = True
    reason: str | None = None

    @property
    def d(self) -> Fraction:
        return 1 - self.lam

    @property
    def translations(self) -> tuple[Fraction, Fraction, Fraction]:
        return (Fraction(0), self.c - self.lam, 1 - self.lam)

    def ensure_valid(self) -> IfsParams:
        if not self.valid:
            raise InvalidParams(self.reason)
        return self

    def __str__(self):
        return f"(lambda={self.lam}, c={self.c})"


def validate_params(lam, c) -> IfsParams:
    """Check the overlap conditions ``lam <= c <= 2*lam`` and ``c + lam < 1``.

    Returns the parameters with a validity flag and the failed inequalities
    joined by ``" and "``; ``lam`` outside ``(0, 1)`` raises :class:`InvalidParams` outright.
    """
    lam = as_rational(lam)
    c = as_rational(c)
    if not 0 < lam < 1:
        raise InvalidParams("0 < lambda < 1")
    failed = [
        name
        for name, ok in (("lambda <= c", lam <= c), ("c <= 2*lambda", c <= 2 * lam), ("c < 1 - lambda", c + lam < 1))
        if not ok
    ]
    reason = " and ".join(failed) or None
    return IfsParams(lam, c, reason is None, reason)


def word_interval(p: IfsParams, w: Sequence[int]) -> Interval:
    """``f_{w[0]} o ... o f_{w[-1]}([0, 1])``."""
    t = p.translations
    left = Fraction(0)
    scale = Fraction(1)
    for symbol in w:
        left += scale * t[symbol - 1]
        scale *= p.lam
    return Interval(left, left + scale)


def children(p: IfsParams, J: Interval) -> IntervalUnion:
    """Union of the three child basic intervals of ``J``."""
    t = J.width
    return union_normalize(
        Interval(J.lo + t * s, J.lo + t * s + p.lam * t) for s in p.translations
    )


@dataclass(frozen=True)
class Window:
    """``[a, b]`` whose endpoints are basic-interval endpoints at ``base_level``."""

    a: Fraction
    b: Fraction
    base_level: int

    def __post_init__(self):
        a, b = as_rational(self.a), as_rational(self.b)
        if not a < b:
            raise ValueError("window needs a < b")
        if self.base_level < 0:
            raise ValueError("base_level must be >= 0")
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)

    def __str__(self):
        return f"[{self.a}, {self.b}]@{self.base_level}"


WindowSpec = Union[Window, Sequence[Window]]


def full_window() -> Window:
    return Window(Fraction(0), Fraction(1), 0)


def right_window(p: IfsParams) -> Window:
    """``[1 - lam, 1]``, the image of the third map."""
    return Window(1 - p.lam, Fraction(1), 1)


def upper_window(p: IfsParams) -> Window:
    """``[c - lam**2, 1]``; its left end is the left end of ``f_2 f_3 (I)``."""
    return Window(p.c - p.lam**2, Fraction(1), 2)


def split_window(p: IfsParams) -> tuple[Window, Window]:
    """``[c - lam, c]`` and ``[1 - lam, 1]``, processed jointly."""
    return (Window(p.c - p.lam, p.c, 1), Window(1 - p.lam, Fraction(1), 1))


def _windows(win: WindowSpec) -> tuple[Window, ...]:
    if isinstance(win, Window):
        return (win,)
    wins = tuple(win)
    if not wins:
        raise ValueError("empty window list")
    if len({w.base_level for w in wins}) != 1:
        raise ValueError("windows processed jointly must share base_level")
    return wins


def level_endpoints(p: IfsParams, n: int) -> tuple[set[Fraction], set[Fraction]]:
    """Left and right endpoints of every level-``n`` basic interval (brute force)."""
    lefts, rights = set(), set()
    for w in product((1, 2, 3), repeat=n):
        iv = word_interval(p, w)
        lefts.add(iv.lo)
        rights.add(iv.hi)
    return lefts, rights


def check_window(p: IfsParams, win: WindowSpec) -> None:
    """Raise ``ValueError`` unless each window's ends are basic-interval ends at its base level."""
    for w in _windows(win):
        lefts, rights = level_endpoints(p, w.base_level)
        if w.a not in lefts or w.b not in rights:
            raise ValueError(f"window {w} endpoints are not level-{w.base_level} basic-interval endpoints")


@dataclass(frozen=True)
class Cover:
    """Level-``n`` cover ``G_n`` of a window, as a merged union.

    ``piece_count`` counts distinct basic intervals, so ``t_n`` with
    coinciding words identified.
    """

    level: int
    window: tuple[Window, ...]
    union: IntervalUnion
    piece_count: int
    # left endpoints as ints over ``scale``; used to grow the next level
    lefts: tuple[int, ...] = field(repr=False, compare=False)
    scale: int = field(repr=False, compare=False)
    basic_width: Fraction = field(repr=False, compare=False)

    def basic_intervals(self) -> list[Interval]:
        return [Interval(Fraction(a, self.scale), Fraction(a, self.scale) + self.basic_width) for a in self.lefts]


class _Grid:
    """Integer bookkeeping for left endpoints: level-``n`` lefts live over ``Q**n * s``."""

    def __init__(self, p: IfsParams):
        self.P, self.Q = p.lam.numerator, p.lam.denominator
        self.s = lcm(self.Q, p.c.denominator)
        self.T = [int(t * self.s) for t in p.translations]

    def scale(self, n: int) -> int:
        return self.Q**n * self.s

    def width(self, n: int) -> int:
        return self.P**n * self.s

    def to_int(self, x: Fraction, n: int) -> int:
        v = x * self.scale(n)
        if v.denominator != 1:
            raise ValueError("value is not on the level grid")
        return v.numerator

    def offsets(self, n: int) -> list[int]:
        """Offsets taking level-``n`` lefts (rescaled to level ``n+1``) to their children."""
        return [self.P**n * t * self.Q for t in self.T]


def _base_lefts(p: IfsParams, wins: tuple[Window, ...]) -> list[Fraction]:
    k0 = wins[0].base_level
    found = set()
    for w in product((1, 2, 3), repeat=k0):
        iv = word_interval(p, w)
        if any(win.a <= iv.lo and iv.hi <= win.b for win in wins):
            found.add(iv.lo)
    return sorted(found)


def _make_cover(grid, wins, level, lefts) -> Cover:
    scale = grid.scale(level)
    w = grid.width(level)
    los, his = _kernels.merge_intervals(lefts, [a + w for a in lefts])
    return Cover(
        level, wins, IntervalUnion(_from_ints(los, his, scale)), len(lefts), tuple(lefts), scale, Fraction(w, scale)
    )


def iter_covers(
    p: IfsParams, win: WindowSpec, n_max: int, max_level: int = DEFAULT_MAX_LEVEL
) -> Iterator[Cover]:
    """Yield ``G_k0, G_{k0+1}, ..., G_{n_max}`` for the window(s)."""
    wins = _windows(win)
    k0 = wins[0].base_level
    if n_max < k0:
        raise ValueError("n_max below the window's base level")
    if n_max > max_level:
        raise ValueError(f"level {n_max} exceeds the cap {max_level}; raise max_level explicitly")
    grid = _Grid(p)
    lefts = [grid.to_int(x, k0) for x in _base_lefts(p, wins)]
    yield _make_cover(grid, wins, k0, lefts)
    for n in range(k0, n_max):
        lefts = _kernels.expand_lefts([a * grid.Q for a in lefts], grid.offsets(n))
        yield _make_cover(grid, wins, n + 1, lefts)


def build_cover(p: IfsParams, win: WindowSpec, n: int, max_level: int = DEFAULT_MAX_LEVEL) -> Cover:
    """``G_n`` for the window(s)."""
    cover = None
    for cover in iter_covers(p, win, n, max_level):
        pass
    return cover


def endpoint_samples(p: IfsParams, win: WindowSpec, n: int) -> set[Fraction]:
    """Both endpoints of every level-``n`` basic interval of the window's cover.

    Each of these is a point of the attractor: ``0`` and ``1`` are fixed by
    the first and third maps, so every basic interval has its ends in K.
    """
    cover = build_cover(p, win, n)
    w = p.lam**n
    out = set()
    for a in cover.lefts:
        x = Fraction(a, cover.scale)
        out.add(x)
        out.add(x + w)
    return out


def cover_contains(p: IfsParams, x: Fraction, n: int, win: WindowSpec | None = None) -> list[bool]:
    """Membership of ``x`` in ``G_k0, ..., G_n``, following only basic intervals that contain ``x``.

    Agrees with ``x in build_cover(p, win, m).union`` but stays cheap at depth.
    """
    wins = _windows(win if win is not None else full_window())
    k0 = wins[0].base_level
    grid = _Grid(p)
    x = as_rational(x)
    lefts = [grid.to_int(y, k0) for y in _base_lefts(p, wins)]
    out = []
    for level in range(k0, n + 1):
        scale, w = grid.scale(level), grid.width(level)
        xs = x * scale
        lefts = [a for a in lefts if a <= xs <= a + w]
        out.append(bool(lefts))
        if level < n:
            lefts = _kernels._pykernels.expand_lefts([a * grid.Q for a in lefts], grid.offsets(level))
    return out
