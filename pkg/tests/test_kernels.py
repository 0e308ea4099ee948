"""The compiled and pure-Python kernels must agree exactly."""

import pytest
from hypothesis import given
from hypothesis import strategies as st

from ifsproduct import _kernels
from ifsproduct._kernels import _pykernels

compiled = pytest.mark.skipif(_kernels.BACKEND != "compiled", reason="compiled kernels not built")

small = st.integers(0, 10**6)
wide = st.integers(0, 2**70)


def interval_lists(ints, max_size=30):
    return st.lists(st.tuples(ints, st.integers(0, 1000)), max_size=max_size).map(
        lambda xs: ([a for a, _ in xs], [a + w for a, w in xs])
    )


@compiled
@given(interval_lists(small))
def test_merge_agrees(iv):
    assert _kernels._ckernels.merge_intervals(*iv) == _pykernels.merge_intervals(*iv)


@compiled
@given(interval_lists(small), interval_lists(small))
def test_product_agrees(a, b):
    assert _kernels._ckernels.product_intervals(*a, *b) == _pykernels.product_intervals(*a, *b)


@compiled
def test_product_uses_128_bit_range():
    big = 2**61
    assert _kernels._ckernels.product_intervals([big], [big + 1], [big], [big]) == ([big * big], [(big + 1) * big])


@compiled
@given(st.lists(small, max_size=50), st.lists(small, min_size=1, max_size=3))
def test_expand_agrees(lefts, offsets):
    assert _kernels._ckernels.expand_lefts(lefts, offsets) == _pykernels.expand_lefts(lefts, offsets)


@compiled
@given(st.lists(small, max_size=20), st.lists(small, max_size=20), interval_lists(st.integers(0, 10**12)))
def test_count_outside_agrees(xs, ys, iv):
    ys = sorted(ys)
    los, his = _pykernels.merge_intervals(*iv)
    assert _kernels._ckernels.count_products_outside(xs, ys, los, his) == _pykernels.count_products_outside(
        xs, ys, los, his
    )


@given(st.lists(wide, max_size=10), st.lists(wide, max_size=10), interval_lists(st.integers(0, 2**140), 10))
def test_dispatch_falls_back_on_overflow(xs, ys, iv):
    ys = sorted(ys)
    los, his = _pykernels.merge_intervals(*iv)
    assert _kernels.count_products_outside(xs, ys, los, his) == _pykernels.count_products_outside(xs, ys, los, his)


@given(interval_lists(wide), interval_lists(wide))
def test_dispatch_products_with_big_ints(a, b):
    assert _kernels.product_intervals(*a, *b) == _pykernels.product_intervals(*a, *b)
    assert _kernels.merge_intervals(*a) == _pykernels.merge_intervals(*a)


def test_count_outside_small_case():
    # products of {1, 2} with itself: 1, 2, 2, 4; union [1, 2] misses 4
    assert _pykernels.count_products_outside([1, 2], [1, 2], [1], [2]) == 1


def test_set_backend_round_trip():
    prev = _kernels.set_backend("python")
    try:
        assert _kernels.active_backend() == "python"
        assert _kernels.merge_intervals([3, 0], [4, 3]) == ([0], [4])
    finally:
        _kernels.set_backend(prev)
    with pytest.raises(ValueError):
        _kernels.set_backend("gpu")
