"""Independent brute-force oracles; none of these touch the package kernels."""

import numpy as np


def brute_force_points(n, tau, s, alpha1, alpha2, beta1, beta2):
    return [(x, y)
            for x in range(alpha1, alpha2 + 1)
            for y in range(beta1, beta2 + 1)
            if tau * x + y == n + s * tau]


def lines_by_scan(d, m, tau, s):
    """Map sequence label n -> cells (row, col) on its line, by scanning the rectangle."""
    out = {}
    for x in range(s, d + s):
        for y in range(s, m + s):
            out.setdefault(tau * x + y - s * tau, []).append((x, y))
    return out


def embed_loops(x, d, tau):
    m = len(x) - (d - 1) * tau
    M = np.empty((d, m))
    for i in range(d):
        for j in range(m):
            M[i, j] = x[i * tau + j]
    return M


def pull_back_loops(z, tau):
    """Average every cell into the bin of the sample it represents."""
    d, m = z.shape
    N = m + (d - 1) * tau
    sums = [0.0] * N
    counts = [0] * N
    for i in range(d):
        for j in range(m):
            sums[i * tau + j] += z[i, j]
            counts[i * tau + j] += 1
    return np.array([sv / c for sv, c in zip(sums, counts)])


def snr_db(reference, estimate):
    reference = np.asarray(reference)
    err = np.asarray(estimate) - reference
    return 10.0 * np.log10(np.sum(reference ** 2) / np.sum(err ** 2))


def two_tone(N, s=0):
    n = np.arange(s, N + s)
    return np.sin(2 * np.pi * n / 16) + 0.5 * np.sin(2 * np.pi * n / 5)
