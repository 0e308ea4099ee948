"""Pure-Python kernels on integer-scaled interval endpoints.

All inputs are non-negative Python ints sharing one implicit denominator.
These are the reference implementations; the compiled module must agree
with them exactly.
"""

from bisect import bisect_left
from itertools import product


def merge_intervals(los, his):
    """Sort closed intervals ``[los[i], his[i]]`` and merge overlapping or touching ones."""
    pairs = sorted(zip(los, his))
    out_lo = []
    out_hi = []
    for lo, hi in pairs:
        if out_hi and lo <= out_hi[-1]:
            if hi > out_hi[-1]:
                out_hi[-1] = hi
        else:
            out_lo.append(lo)
            out_hi.append(hi)
    return out_lo, out_hi


def product_intervals(los1, his1, los2, his2):
    """Merged union of ``[a*b, c*d]`` over all pairs of the two interval lists."""
    if not los1 or not los2:
        return [], []
    pairs = [(a * b, c * d) for (a, c), (b, d) in product(zip(los1, his1), zip(los2, his2))]
    pairs.sort()
    out_lo = []
    out_hi = []
    for lo, hi in pairs:
        if out_hi and lo <= out_hi[-1]:
            if hi > out_hi[-1]:
                out_hi[-1] = hi
        else:
            out_lo.append(lo)
            out_hi.append(hi)
    return out_lo, out_hi


def expand_lefts(lefts, offsets):
    """Sorted distinct values of ``a + s`` for ``a`` in lefts and ``s`` in offsets."""
    return sorted({a + s for a in lefts for s in offsets})


def count_products_outside(xs, ys, los, his):
    """Number of pairs with ``x*y`` outside the union of ``[los[i], his[i]]``.

    ``ys`` must be sorted ascending and the union parts sorted and disjoint;
    products live over the square of the points' denominator.
    """
    m = len(los)
    missing = 0
    for x in xs:
        k = 0
        for y in ys:
            v = x * y
            if k < m and his[k] < v:
                k = bisect_left(his, v, k + 1)
            if k == m or v < los[k]:
                missing += 1
    return missing
