"""Hot loops on integer-scaled endpoints, with a compiled fast path.

The compiled module handles endpoints below 2**62 (products in 128-bit
registers). Anything larger, or a missing build, goes to the pure-Python
kernels, which use arbitrary-precision ints and are the reference.
"""

from . import _pykernels

try:
    from . import _ckernels
except ImportError:  # extension not built
    _ckernels = None

BACKEND = "compiled" if _ckernels is not None else "python"

_active = _ckernels


def set_backend(name):
    """Force ``"python"`` or ``"compiled"``; returns the previous backend name."""
    global _active
    previous = "compiled" if _active is not None else "python"
    if name == "python":
        _active = None
    elif name == "compiled":
        if _ckernels is None:
            raise RuntimeError("compiled kernels are not built")
        _active = _ckernels
    else:
        raise ValueError(f"unknown backend {name!r}")
    return previous


def active_backend():
    return "compiled" if _active is not None else "python"


def merge_intervals(los, his):
    if _active is not None:
        try:
            return _active.merge_intervals(los, his)
        except OverflowError:
            pass
    return _pykernels.merge_intervals(los, his)


def product_intervals(los1, his1, los2, his2):
    if _active is not None:
        try:
            return _active.product_intervals(los1, his1, los2, his2)
        except OverflowError:
            pass
    return _pykernels.product_intervals(los1, his1, los2, his2)


def expand_lefts(lefts, offsets):
    if _active is not None:
        try:
            return _active.expand_lefts(lefts, offsets)
        except OverflowError:
            pass
    return _pykernels.expand_lefts(lefts, offsets)


def count_products_outside(xs, ys, los, his):
    if _active is not None:
        try:
            return _active.count_products_outside(xs, ys, los, his)
        except OverflowError:
            pass
    return _pykernels.count_products_outside(xs, ys, los, his)
