"""Pull a ``d x m`` component matrix back to a time sequence.

Sample ``x[n]`` of a type-``s`` sequence sits in the cells ``(q, n + s*tau - q*tau)``
(logical labels) for ``q_min <= q <= q_max``. Pull-back estimates each
``x[n]`` from those cells; with the arithmetic mean this is the exact inverse
of :func:`tspullback.embedding.embed` on its image and works for any delay
and either indexing type, provided ``m >= tau`` (or ``d == 1``). With fewer
columns than the delay some samples never enter the matrix; their q-range is
empty and pull-back raises ``ValueError``.

:func:`pull_back` runs on the compiled/numpy kernels. :func:`pull_back_reference`
evaluates the same thing one index at a time from :func:`q_bounds` and
:func:`collect_q_set`, and :func:`dap_reference` is the classical
unit-delay anti-diagonal averaging kept as an independent oracle.
"""

from __future__ import annotations

from enum import Enum
from typing import NamedTuple

import numpy as np

from ._backend import kernels
from .diophantine import ceil_div, floor_div
from .embedding import TimeSequence, TrajectoryMatrix

__all__ = [
    "Estimator",
    "QBounds",
    "q_bounds",
    "q_counts",
    "collect_q_set",
    "pull_back",
    "pull_back_reference",
    "dap_reference",
]


class Estimator(str, Enum):
    MEAN = "mean"
    MEDIAN = "median"


class QBounds(NamedTuple):
    q_min: int
    q_max: int

    @property
    def count(self) -> int:
        return self.q_max - self.q_min + 1


def _check_index(n: int, tau: int, s: int, d: int, m: int) -> None:
    if s not in (0, 1):
        raise ValueError(f"s must be 0 or 1, got {s}")
    if tau < 1 or d < 1 or m < 1:
        raise ValueError(f"need tau, d, m >= 1, got tau={tau}, d={d}, m={m}")
    N = m + (d - 1) * tau
    if not s <= n <= N - 1 + s:
        raise ValueError(f"n={n} outside the sequence index range [{s}, {N - 1 + s}]")


def q_bounds(n: int, tau: int, s: int, d: int, m: int) -> QBounds:
    """Row-label range of the cells holding ``x[n]``."""
    _check_index(n, tau, s, d, m)
    q_min = max(s, ceil_div(n + s * tau - m + (1 - s), tau))
    q_max = min(d + s - 1, floor_div(n + (tau - 1) * s, tau))
    return QBounds(q_min, q_max)


def q_counts(d: int, m: int, tau: int) -> np.ndarray:
    """Number of copies of each sample (storage order), length ``m + (d-1)*tau``."""
    return np.asarray(kernels.line_counts(d, m, tau), dtype=np.int64)


def collect_q_set(z, n: int, tau: int, s: int) -> np.ndarray:
    """Entries of `z` that are copies (or estimates) of ``x[n]``, ascending in row."""
    z = np.asarray(z, dtype=np.float64)
    d, m = z.shape
    q_min, q_max = q_bounds(n, tau, s, d, m)
    rows = np.arange(q_min, q_max + 1)
    cols = n + s * tau - rows * tau
    return z[rows - s, cols - s]


def _resolve(z, tau, s):
    if isinstance(z, TrajectoryMatrix):
        if tau is None:
            tau = z.tau
        if s is None:
            s = z.s
        z = z.entries
    z = np.asarray(z, dtype=np.float64)
    if z.ndim != 2 or min(z.shape) < 1:
        raise ValueError(f"expected a non-empty 2-d matrix, got shape {z.shape}")
    if tau is None or tau < 1:
        raise ValueError(f"tau must be >= 1, got {tau}")
    s = 0 if s is None else s
    if s not in (0, 1):
        raise ValueError(f"s must be 0 or 1, got {s}")
    return z, int(tau), int(s)


def pull_back(z, tau: int | None = None, s: int | None = None,
              estimator: Estimator | str = Estimator.MEAN) -> TimeSequence:
    """Pull a component matrix back to a type-`s` sequence of length ``m + (d-1)*tau``.

    Parameters
    ----------
    z : array_like or TrajectoryMatrix
        ``d x m`` matrix. For a :class:`TrajectoryMatrix`, `tau` and `s`
        default to its own parameters.
    tau : int
        Time delay used for the embedding.
    s : {0, 1}
        Indexing type of the output sequence.
    estimator : {"mean", "median"}
        How each set of copies is collapsed to one value.
    """
    z, tau, s = _resolve(z, tau, s)
    estimator = Estimator(estimator)
    if estimator is Estimator.MEAN:
        values = kernels.pullback_mean(z, tau)
    else:
        values = kernels.pullback_median(z, tau)
    return TimeSequence(values, s)


def pull_back_reference(z, tau: int | None = None, s: int | None = None,
                        estimator: Estimator | str = Estimator.MEAN) -> TimeSequence:
    """Index-by-index pull-back straight from the q-bounds; slow, for checking."""
    z, tau, s = _resolve(z, tau, s)
    estimator = Estimator(estimator)
    d, m = z.shape
    if d > 1 and m < tau:
        raise ValueError(f"m={m} < tau={tau}: some samples have no cell in the matrix")
    N = m + (d - 1) * tau
    out = np.empty(N)
    for n in range(s, N + s):
        samples = collect_q_set(z, n, tau, s)
        if estimator is Estimator.MEAN:
            acc = 0.0
            for v in samples:
                acc += v
            out[n - s] = acc / len(samples)
        else:
            out[n - s] = np.median(samples)
    return TimeSequence(out, s)


def dap_reference(z) -> TimeSequence:
    """Diagonal averaging for ``tau = 1`` on a 1-based matrix.

    Three regimes over ``n = 1..N`` with ``d* = min(d, m)``, ``m* = max(d, m)``,
    averaging over the anti-diagonal ``row + col = n + 1``. The matrix is read
    transposed when it has more rows than columns so that the summation index
    always runs over the shorter side.
    """
    z = np.asarray(z, dtype=np.float64)
    d, m = z.shape
    N = d + m - 1
    d_star, m_star = min(d, m), max(d, m)
    zt = z if d <= m else z.T  # d* x m*

    def Z(p, q):  # 1-based
        return zt[p - 1, q - 1]

    out = np.empty(N)
    for n in range(1, N + 1):
        if n < d_star:
            lo, hi, cnt = 1, n, n
        elif n <= m_star:
            lo, hi, cnt = 1, d_star, d_star
        else:
            lo, hi, cnt = n - m_star + 1, N - m_star + 1, N - n + 1
        acc = 0.0
        for p in range(lo, hi + 1):
            acc += Z(p, n - p + 1)
        out[n - 1] = acc / cnt
    return TimeSequence(out, 1)
