# cython: language_level=3
"""Compiled embedding / pull-back kernels.

Same contract as ``_pykernels``: storage indices, cell ``(i, j)`` holds sample
``i*tau + j``, mean summed in ascending row order.
"""

import numpy as np
cimport numpy as cnp
from libc.stdlib cimport malloc, free

cnp.import_array()


cdef double _select(double *a, Py_ssize_t k, Py_ssize_t kth) noexcept nogil:
    # Hoare quickselect: afterwards a[kth] holds the kth smallest value,
    # everything left of it is <= a[kth] and everything right is >= a[kth]
    cdef Py_ssize_t lo = 0, hi = k - 1, i, j
    cdef double pivot, t
    while lo < hi:
        pivot = a[(lo + hi) // 2]
        i = lo
        j = hi
        while i <= j:
            while a[i] < pivot:
                i += 1
            while a[j] > pivot:
                j -= 1
            if i <= j:
                t = a[i]; a[i] = a[j]; a[j] = t
                i += 1
                j -= 1
        if kth <= j:
            hi = j
        elif kth >= i:
            lo = i
        else:
            break
    return a[kth]


cdef inline Py_ssize_t _qlo(Py_ssize_t n, Py_ssize_t m, Py_ssize_t tau) nogil:
    # ceil((n - m + 1) / tau) clipped at 0
    cdef Py_ssize_t a = n - m + 1
    if a <= 0:
        return 0
    return (a + tau - 1) // tau


cdef inline Py_ssize_t _qhi(Py_ssize_t n, Py_ssize_t d, Py_ssize_t tau) nogil:
    cdef Py_ssize_t q = n // tau
    return q if q < d - 1 else d - 1


cdef _check_cover(Py_ssize_t d, Py_ssize_t m, Py_ssize_t tau):
    if d > 1 and m < tau:
        raise ValueError(f"m={m} < tau={tau}: some samples have no cell in the matrix")


def embed(x, Py_ssize_t d, Py_ssize_t tau):
    cdef const double[::1] xv = np.ascontiguousarray(x, dtype=np.float64)
    cdef Py_ssize_t m = xv.shape[0] - (d - 1) * tau
    out = np.empty((d, m), dtype=np.float64)
    cdef double[:, ::1] ov = out
    cdef Py_ssize_t i, j, off
    with nogil:
        for i in range(d):
            off = i * tau
            for j in range(m):
                ov[i, j] = xv[off + j]
    return out


def line_counts(Py_ssize_t d, Py_ssize_t m, Py_ssize_t tau):
    cdef Py_ssize_t N = m + (d - 1) * tau
    out = np.empty(N, dtype=np.int64)
    cdef cnp.int64_t[::1] ov = out
    cdef Py_ssize_t n
    with nogil:
        for n in range(N):
            ov[n] = _qhi(n, d, tau) - _qlo(n, m, tau) + 1
    return out


def pullback_mean(z, Py_ssize_t tau):
    cdef const double[:, :] zv = np.asarray(z, dtype=np.float64)
    cdef Py_ssize_t d = zv.shape[0], m = zv.shape[1]
    _check_cover(d, m, tau)
    cdef Py_ssize_t N = m + (d - 1) * tau
    out = np.empty(N, dtype=np.float64)
    cdef double[::1] ov = out
    cdef Py_ssize_t n, i, j, off
    with nogil:
        for n in range(N):
            ov[n] = 0.0
        # row by row keeps each sample's sum in ascending row order
        for i in range(d):
            off = i * tau
            for j in range(m):
                ov[off + j] = ov[off + j] + zv[i, j]
        for n in range(N):
            ov[n] = ov[n] / <double>(_qhi(n, d, tau) - _qlo(n, m, tau) + 1)
    return out


def pullback_median(z, Py_ssize_t tau):
    cdef const double[:, :] zv = np.asarray(z, dtype=np.float64)
    cdef Py_ssize_t d = zv.shape[0], m = zv.shape[1]
    _check_cover(d, m, tau)
    cdef Py_ssize_t N = m + (d - 1) * tau
    out = np.empty(N, dtype=np.float64)
    cdef double[::1] ov = out
    cdef Py_ssize_t n, q, lo, hi, k, h
    cdef double upper, lower
    cdef double *buf = <double *>malloc(d * sizeof(double))
    if buf == NULL:
        raise MemoryError()
    try:
        with nogil:
            for n in range(N):
                lo = _qlo(n, m, tau)
                hi = _qhi(n, d, tau)
                k = hi - lo + 1
                for q in range(lo, hi + 1):
                    buf[q - lo] = zv[q, n - q * tau]
                h = k // 2
                upper = _select(buf, k, h)
                if k % 2 == 1:
                    ov[n] = upper
                else:
                    # the lower middle value is the largest one left of h
                    lower = buf[0]
                    for q in range(1, h):
                        if buf[q] > lower:
                            lower = buf[q]
                    ov[n] = (lower + upper) / 2.0
    finally:
        free(buf)
    return out
