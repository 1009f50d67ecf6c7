"""Numpy implementations of the embedding / pull-back kernels.

These mirror ``_ckernels.pyx`` exactly, including the summation order of the
mean (ascending row index), so both backends give bit-identical results.
All indices are storage indices: the cell ``(i, j)`` holds sample ``i*tau + j``.
"""

import numpy as np


def embed(x, d, tau):
    x = np.ascontiguousarray(x, dtype=np.float64)
    m = x.shape[0] - (d - 1) * tau
    idx = tau * np.arange(d)[:, None] + np.arange(m)[None, :]
    return x[idx]


def line_counts(d, m, tau):
    N = m + (d - 1) * tau
    counts = np.zeros(N, dtype=np.int64)
    for i in range(d):
        counts[i * tau:i * tau + m] += 1
    return counts


def _check_cover(d, m, tau):
    if d > 1 and m < tau:
        raise ValueError(f"m={m} < tau={tau}: some samples have no cell in the matrix")


def pullback_mean(z, tau):
    z = np.asarray(z, dtype=np.float64)
    d, m = z.shape
    _check_cover(d, m, tau)
    N = m + (d - 1) * tau
    acc = np.zeros(N)
    counts = np.zeros(N)
    for i in range(d):
        acc[i * tau:i * tau + m] += z[i]
        counts[i * tau:i * tau + m] += 1.0
    return acc / counts


def pullback_median(z, tau):
    z = np.asarray(z, dtype=np.float64)
    d, m = z.shape
    _check_cover(d, m, tau)
    N = m + (d - 1) * tau
    buf = np.full((d, N), np.nan)
    for i in range(d):
        buf[i, i * tau:i * tau + m] = z[i]
    return np.nanmedian(buf, axis=0)
