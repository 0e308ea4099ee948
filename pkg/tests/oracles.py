"""Brute-force reference computations for the tests.

Nothing here calls the package's cover, product or merge code: word intervals
come straight from the affine maps and unions are merged by a plain sweep.
"""

from fractions import Fraction
from itertools import product
from math import lcm


def maps(lam, c):
    return [lambda x: lam * x, lambda x: lam * x + c - lam, lambda x: lam * x + 1 - lam]


def word_bounds(lam, c, word):
    """``f_{w1} o ... o f_{wn}([0, 1])`` by applying the maps innermost first."""
    fs = maps(lam, c)
    lo, hi = Fraction(0), Fraction(1)
    for s in reversed(word):
        lo, hi = fs[s - 1](lo), fs[s - 1](hi)
    return lo, hi


def sweep_merge(pairs):
    out = []
    for lo, hi in sorted(pairs):
        if out and lo <= out[-1][1]:
            out[-1][1] = max(out[-1][1], hi)
        else:
            out.append([lo, hi])
    return [tuple(x) for x in out]


def window_words(lam, c, windows, n):
    """All length-``n`` words whose length-``k0`` prefix interval lies in one of the windows."""
    k0 = windows[0][2]
    out = []
    for w in product((1, 2, 3), repeat=n):
        lo, hi = word_bounds(lam, c, w[:k0])
        if any(a <= lo and hi <= b for a, b, _ in windows):
            out.append(w)
    return out


def cover_oracle(lam, c, windows, n):
    return sweep_merge([word_bounds(lam, c, w) for w in window_words(lam, c, windows, n)])


def product_oracle(lam, c, n):
    """Merged union of all ``3**n x 3**n`` word-pair products, in integers."""
    bounds = [word_bounds(lam, c, w) for w in product((1, 2, 3), repeat=n)]
    den = lcm(*(x.denominator for pair in bounds for x in pair))
    ints = [(int(lo * den), int(hi * den)) for lo, hi in bounds]
    pairs = [(a * b, c_ * d) for a, c_ in ints for b, d in ints]
    sq = den * den
    return [(Fraction(lo, sq), Fraction(hi, sq)) for lo, hi in sweep_merge(pairs)]


def measure_by_sweep(pairs):
    """Lebesgue measure of a union of closed intervals via an endpoint sweep."""
    events = sorted([(lo, 1) for lo, _ in pairs] + [(hi, -1) for _, hi in pairs], key=lambda e: (e[0], -e[1]))
    depth, total, last = 0, Fraction(0), None
    for x, delta in events:
        if depth > 0:
            total += x - last
        depth += delta
        last = x
    return total


def in_union(x, pairs):
    return any(lo <= x <= hi for lo, hi in pairs)


def classify_oracle(lam, c):
    """Region label from the textbook inequalities, thresholds as 50-digit decimals."""
    from decimal import Decimal, getcontext

    getcontext().prec = 50
    if not (0 < lam < 1) or not (lam <= c <= 2 * lam and c + lam < 1):
        return "invalid"
    if c < (1 - lam) ** 2:
        return "necessary_fails"
    golden = (3 - Decimal(5).sqrt()) / 2
    if Decimal(lam.numerator) / Decimal(lam.denominator) >= golden:
        return "brown"
    if c <= lam * lam + lam / (1 - lam):
        return "gray"
    if (c - lam * lam) * (1 - lam) <= c * c:
        return "orange"
    return "blue"
