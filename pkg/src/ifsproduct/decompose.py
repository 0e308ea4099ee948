"""Write ``u`` in ``[0, 1]`` as ``x*y`` with ``x, y`` in the attractor, to a certified accuracy.

The route's base product contains ``[m, 1]`` with ``m <= lam``, so some
``u / lam**n`` lands there. A pair of base basic intervals whose product
contains it is then refined ``depth`` times; at every step one of the nine
child pairs still contains the target because the children's products fill
the parent's product.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from math import lcm

from .errors import InternalNoChildPair, NotInPurpleRegion
from .ifs import IfsParams, Word, _base_lefts, _windows, word_interval
from .numerics import Interval, as_rational, format_rational
from .products import interval_product
from .regions import classify, route_guards, route_window


@dataclass(frozen=True)
class DecompositionCertificate:
    word_x: Word
    word_y: Word
    x: Fraction
    y: Fraction
    scaling_power: int
    error_bound: Fraction
    enclosing_rect: tuple[Interval, Interval]

    def to_json(self, p: IfsParams, u: Fraction) -> str:
        return json.dumps(
            {
                "kind": "decomposition",
                "lambda": format_rational(p.lam),
                "c": format_rational(p.c),
                "u": format_rational(u),
                "word_x": "".join(map(str, self.word_x)),
                "word_y": "".join(map(str, self.word_y)),
                "x": format_rational(self.x),
                "y": format_rational(self.y),
                "scaling_power": self.scaling_power,
                "error_bound": format_rational(self.error_bound),
                "enclosing_rect": [
                    [format_rational(iv.lo), format_rational(iv.hi)] for iv in self.enclosing_rect
                ],
            },
            indent=1,
        )

    @classmethod
    def from_json(cls, text: str) -> tuple[Fraction, Fraction, Fraction, DecompositionCertificate]:
        """Returns ``(lam, c, u, certificate)``."""
        d = json.loads(text)
        rect = tuple(Interval(Fraction(a), Fraction(b)) for a, b in d["enclosing_rect"])
        cert = cls(
            tuple(int(ch) for ch in d["word_x"]),
            tuple(int(ch) for ch in d["word_y"]),
            Fraction(d["x"]),
            Fraction(d["y"]),
            int(d["scaling_power"]),
            Fraction(d["error_bound"]),
            rect,
        )
        return Fraction(d["lambda"]), Fraction(d["c"]), Fraction(d["u"]), cert


def _base_words(p: IfsParams, win) -> list[tuple[Word, Interval]]:
    """Level-``k0`` words whose basic interval lies in the window, one word per interval."""
    wins = _windows(win)
    keep = set(_base_lefts(p, wins))
    out = []
    seen = set()
    for w in product((1, 2, 3), repeat=wins[0].base_level):
        iv = word_interval(p, w)
        if iv.lo in keep and iv.lo not in seen:
            seen.add(iv.lo)
            out.append((w, iv))
    return out


def _refine(p: IfsParams, I1: Interval, I2: Interval, target: Fraction, depth: int, w2: list[int]) -> list[int]:
    """Pick child pairs containing ``target`` ``depth`` times; extends ``w2``, returns the ``w1`` symbols.

    Works on integer numerators over a shared denominator ``den``; each step
    multiplies ``den`` by ``S*Q`` where ``lam = P/Q`` and the translations are
    ``tau_i/S``.
    """
    P, Q = p.lam.numerator, p.lam.denominator
    S = lcm(*(t.denominator for t in p.translations))
    taus = [t.numerator * (S // t.denominator) for t in p.translations]
    den = lcm(I1.lo.denominator, I2.lo.denominator, I1.width.denominator)
    a1, a2, w = (int(v * den) for v in (I1.lo, I2.lo, I1.width))
    N, M = target.numerator, target.denominator
    out = []
    for _ in range(depth):
        kids1 = [(a1 * S + w * tau) * Q for tau in taus]
        kids2 = [(a2 * S + w * tau) * Q for tau in taus]
        w, den = P * w * S, den * S * Q
        for i, j in product(range(3), repeat=2):
            lo1, lo2 = kids1[i], kids2[j]
            if lo1 * lo2 * M <= N * den * den <= (lo1 + w) * (lo2 + w) * M:
                out.append(i + 1)
                w2.append(j + 1)
                a1, a2 = lo1, lo2
                break
        else:
            raise InternalNoChildPair(f"no child pair of {I1} x {I2} covers {target}")
    return out


def decompose(p: IfsParams, u, depth: int) -> DecompositionCertificate:
    u = as_rational(u)
    p.ensure_valid()
    if not 0 <= u <= 1:
        raise ValueError("u must lie in [0, 1]")
    if depth < 1:
        raise ValueError("depth must be >= 1")
    label = classify(p)
    if not label.colored:
        raise NotInPurpleRegion(f"{p} has (1-lambda)^2 > c")

    if u == 0 or u == 1:
        symbol = 1 if u == 0 else 3
        w = (symbol,) * depth
        iv = word_interval(p, w)
        return DecompositionCertificate(w, w, u, u, 0, Fraction(0), (iv, iv))

    win = route_window(p, label)
    m = route_guards(p, label)
    n = 0
    target = u
    while target < m:
        target /= p.lam
        n += 1

    pair = None
    for (w1, I1), (w2, I2) in product(_base_words(p, win), repeat=2):
        if target in interval_product(I1, I2):
            pair = (list(w1), I1, list(w2), I2)
            break
    if pair is None:
        raise InternalNoChildPair(f"no base pair covers {target}")
    w1, I1, w2, I2 = pair

    w1 += _refine(p, I1, I2, target, depth, w2)
    I1 = word_interval(p, tuple(w1))
    I2 = word_interval(p, tuple(w2))

    scale = p.lam**n
    rect = (I1.scale(scale), I2)
    prod = interval_product(*rect)
    return DecompositionCertificate(
        (1,) * n + tuple(w1),
        tuple(w2),
        rect[0].lo,
        rect[1].lo,
        n,
        prod.width,
        rect,
    )


def verify_certificate(p: IfsParams, u, cert: DecompositionCertificate) -> bool:
    """Replay a certificate from its words alone.

    ``x`` and ``y`` must be endpoints of their words' intervals: the left one
    in general, the right one for the all-3 word whose right end is 1.
    """
    u = as_rational(u)
    try:
        Ix = word_interval(p, cert.word_x)
        Iy = word_interval(p, cert.word_y)
    except (IndexError, TypeError):
        return False
    if any(s not in (1, 2, 3) for s in cert.word_x + cert.word_y):
        return False
    if (Ix, Iy) != tuple(cert.enclosing_rect):
        return False
    if cert.x not in (Ix.lo, Ix.hi) or cert.y not in (Iy.lo, Iy.hi):
        return False
    if (cert.x == Ix.hi and cert.x != 1) or (cert.y == Iy.hi and cert.y != 1):
        return False
    if u not in interval_product(Ix, Iy):
        return False
    return abs(cert.x * cert.y - u) <= cert.error_bound
