# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernels on integer-scaled interval endpoints.

Endpoints are carried as 64-bit integers and products as 128-bit integers.
Inputs that do not fit raise ``OverflowError`` so the caller can fall back
to the arbitrary-precision Python kernels.
"""

from libc.stdlib cimport malloc, free, qsort

cdef extern from *:
    """
    typedef __int128 i128;
    typedef struct { __int128 lo; __int128 hi; } pair128;
    typedef struct { long long lo; long long hi; } pair64;

    static int cmp_pair128(const void *x, const void *y) {
        const pair128 *a = (const pair128 *)x;
        const pair128 *b = (const pair128 *)y;
        if (a->lo < b->lo) return -1;
        if (a->lo > b->lo) return 1;
        if (a->hi < b->hi) return -1;
        if (a->hi > b->hi) return 1;
        return 0;
    }

    static int cmp_pair64(const void *x, const void *y) {
        const pair64 *a = (const pair64 *)x;
        const pair64 *b = (const pair64 *)y;
        if (a->lo < b->lo) return -1;
        if (a->lo > b->lo) return 1;
        if (a->hi < b->hi) return -1;
        if (a->hi > b->hi) return 1;
        return 0;
    }

    static int cmp_ll(const void *x, const void *y) {
        long long a = *(const long long *)x, b = *(const long long *)y;
        return (a > b) - (a < b);
    }
    """
    ctypedef long long i128
    ctypedef struct pair128:
        i128 lo
        i128 hi
    ctypedef struct pair64:
        long long lo
        long long hi
    int cmp_pair128(const void *x, const void *y) nogil
    int cmp_pair64(const void *x, const void *y) nogil
    int cmp_ll(const void *x, const void *y) nogil

from cpython cimport array
import array

cdef long long HALF = 4611686018427387904  # 2**62
cdef array.array _TEMPLATE = array.array("q")


cdef object _to_py(i128 v):
    cdef unsigned long long high = <unsigned long long>(v >> 64)
    cdef unsigned long long low = <unsigned long long>v
    if high == 0:
        return low
    return (<object>high << 64) | <object>low


cdef array.array _load(seq):
    cdef Py_ssize_t n = len(seq), i
    cdef array.array out = array.clone(_TEMPLATE, n, zero=False)
    cdef long long v
    for i in range(n):
        v = seq[i]  # OverflowError beyond 64 bits
        if v < 0 or v >= HALF:
            raise OverflowError("endpoint out of compiled range")
        out.data.as_longlongs[i] = v
    return out


cdef i128 *_load128(seq) except NULL:
    # split into 63-bit halves; values must stay below 2**126
    cdef Py_ssize_t n = len(seq), i
    cdef i128 *out = <i128 *>malloc((n + 1) * sizeof(i128))
    if out == NULL:
        raise MemoryError()
    cdef long long high, low
    try:
        for i in range(n):
            v = seq[i]
            if v < 0 or v >> 126:
                raise OverflowError("endpoint out of compiled range")
            high = v >> 63
            low = v & 0x7FFFFFFFFFFFFFFF
            out[i] = (<i128>high << 63) | <i128>low
    except BaseException:
        free(out)
        raise
    return out


def merge_intervals(los, his):
    cdef long long[:] lo = _load(los)
    cdef long long[:] hi = _load(his)
    cdef Py_ssize_t n = lo.shape[0], i, k = 0
    if n == 0:
        return [], []
    cdef pair64 *buf = <pair64 *>malloc(n * sizeof(pair64))
    if buf == NULL:
        raise MemoryError()
    try:
        for i in range(n):
            buf[i].lo = lo[i]
            buf[i].hi = hi[i]
        with nogil:
            qsort(buf, n, sizeof(pair64), cmp_pair64)
            for i in range(1, n):
                if buf[i].lo <= buf[k].hi:
                    if buf[i].hi > buf[k].hi:
                        buf[k].hi = buf[i].hi
                else:
                    k += 1
                    buf[k] = buf[i]
        return [buf[i].lo for i in range(k + 1)], [buf[i].hi for i in range(k + 1)]
    finally:
        free(buf)


def product_intervals(los1, his1, los2, his2):
    cdef long long[:] a_lo = _load(los1)
    cdef long long[:] a_hi = _load(his1)
    cdef long long[:] b_lo = _load(los2)
    cdef long long[:] b_hi = _load(his2)
    cdef Py_ssize_t n1 = a_lo.shape[0], n2 = b_lo.shape[0]
    cdef Py_ssize_t n = n1 * n2, i, j, k = 0
    if n == 0:
        return [], []
    cdef pair128 *buf = <pair128 *>malloc(n * sizeof(pair128))
    if buf == NULL:
        raise MemoryError()
    try:
        with nogil:
            for i in range(n1):
                for j in range(n2):
                    buf[i * n2 + j].lo = <i128>a_lo[i] * <i128>b_lo[j]
                    buf[i * n2 + j].hi = <i128>a_hi[i] * <i128>b_hi[j]
            qsort(buf, n, sizeof(pair128), cmp_pair128)
            for i in range(1, n):
                if buf[i].lo <= buf[k].hi:
                    if buf[i].hi > buf[k].hi:
                        buf[k].hi = buf[i].hi
                else:
                    k += 1
                    buf[k] = buf[i]
        return [_to_py(buf[i].lo) for i in range(k + 1)], [_to_py(buf[i].hi) for i in range(k + 1)]
    finally:
        free(buf)


def expand_lefts(lefts, offsets):
    cdef long long[:] base = _load(lefts)
    cdef long long[:] off = _load(offsets)
    cdef Py_ssize_t n1 = base.shape[0], n2 = off.shape[0]
    cdef Py_ssize_t n = n1 * n2, i, j, k = 0
    if n == 0:
        return []
    cdef long long *buf = <long long *>malloc(n * sizeof(long long))
    if buf == NULL:
        raise MemoryError()
    try:
        with nogil:
            for i in range(n1):
                for j in range(n2):
                    buf[i * n2 + j] = base[i] + off[j]
            qsort(buf, n, sizeof(long long), cmp_ll)
            for i in range(1, n):
                if buf[i] != buf[k]:
                    k += 1
                    buf[k] = buf[i]
        return [buf[i] for i in range(k + 1)]
    finally:
        free(buf)


def count_products_outside(xs, ys, los, his):
    cdef long long[:] x = _load(xs)
    cdef long long[:] y = _load(ys)
    cdef Py_ssize_t nx = x.shape[0], ny = y.shape[0], m = len(los), i, j, k, a, b, mid, step
    cdef long long missing = 0
    cdef i128 v
    cdef i128 *lo = _load128(los)
    cdef i128 *hi
    try:
        hi = _load128(his)
    except BaseException:
        free(lo)
        raise
    try:
        with nogil:
            for i in range(nx):
                k = 0
                for j in range(ny):
                    v = <i128>x[i] * <i128>y[j]
                    if k < m and hi[k] < v:
                        # gallop from k, then bisect for the first hi >= v
                        a = k
                        step = 1
                        while a + step < m and hi[a + step] < v:
                            a += step
                            step *= 2
                        b = a + step if a + step < m else m
                        while b - a > 1:
                            mid = (a + b) // 2
                            if hi[mid] < v:
                                a = mid
                            else:
                                b = mid
                        k = b
                    if k == m or v < lo[k]:
                        missing += 1
        return missing
    finally:
        free(lo)
        free(hi)
