"""Time sequences and their delay-embedding trajectory matrices.

A type-``s`` sequence of length ``N`` is labelled ``x[s], ..., x[N-1+s]``;
storage is always 0-based and ``s`` only shifts labels. Embedding with
dimension ``d`` and delay ``tau`` gives the ``d x m`` matrix whose storage
cell ``(i, j)`` holds ``x[i*tau + j + s]``, with ``m = N - (d-1)*tau``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple, Sequence

import numpy as np

from ._backend import kernels

__all__ = [
    "TimeSequence",
    "EmbeddingParams",
    "TrajectoryMatrix",
    "SizeRow",
    "embed",
    "m_of",
    "tau_max",
    "size_table",
]


def _frozen(a: np.ndarray) -> np.ndarray:
    a = np.array(a, dtype=np.float64, copy=True)
    a.setflags(write=False)
    return a


@dataclass(frozen=True, eq=False)
class TimeSequence:
    """Finite real sequence with indexing type ``s`` (0 or 1)."""

    values: np.ndarray
    s: int = 0

    def __post_init__(self) -> None:
        if self.s not in (0, 1):
            raise ValueError(f"s must be 0 or 1, got {self.s}")
        values = np.asarray(self.values, dtype=np.float64)
        if values.ndim != 1 or values.size < 1:
            raise ValueError("a time sequence needs a 1-d array with at least one sample")
        if not np.all(np.isfinite(values)):
            raise ValueError("time sequence values must be finite")
        object.__setattr__(self, "values", _frozen(values))

    @property
    def N(self) -> int:
        return self.values.shape[0]

    @property
    def indices(self) -> range:
        """Logical index labels ``s .. N-1+s``."""
        return range(self.s, self.N + self.s)

    def at(self, n: int) -> float:
        """Sample with logical label `n`."""
        if not self.s <= n <= self.N - 1 + self.s:
            raise IndexError(f"index {n} outside [{self.s}, {self.N - 1 + self.s}]")
        return float(self.values[n - self.s])

    def __len__(self) -> int:
        return self.N

    def __array__(self, dtype=None, copy=None):
        return np.asarray(self.values, dtype=dtype)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, TimeSequence):
            return NotImplemented
        return self.s == other.s and np.array_equal(self.values, other.values)

    __hash__ = None


class EmbeddingParams(NamedTuple):
    d: int
    tau: int = 1


@dataclass(frozen=True, eq=False)
class TrajectoryMatrix:
    entries: np.ndarray
    params: EmbeddingParams
    s: int
    N: int

    @property
    def d(self) -> int:
        return self.params.d

    @property
    def tau(self) -> int:
        return self.params.tau

    @property
    def m(self) -> int:
        return self.entries.shape[1]

    @property
    def shape(self) -> tuple[int, int]:
        return self.entries.shape

    def __array__(self, dtype=None, copy=None):
        return np.asarray(self.entries, dtype=dtype)

    def logical(self, i: int, j: int) -> float:
        """Entry at 1-based (``s=1``) or 0-based (``s=0``) row/column labels."""
        return float(self.entries[i - self.s, j - self.s])


def m_of(N: int, d: int, tau: int) -> int:
    """Number of columns ``N - (d-1)*tau``; may be <= 0, callers check."""
    return N - (d - 1) * tau


def tau_max(N: int, d: int) -> int:
    """Largest delay that keeps the matrix at least square (``m >= d``)."""
    if d < 2:
        raise ValueError(f"tau_max needs d >= 2, got d={d}")
    if N <= d:
        raise ValueError(f"tau_max needs N > d, got N={N}, d={d}")
    return (N - d) // (d - 1)


def embed(x: TimeSequence | Sequence[float] | np.ndarray, p: EmbeddingParams | tuple[int, int],
          s: int | None = None) -> TrajectoryMatrix:
    """Embed `x` into its ``d x m`` trajectory matrix.

    Parameters
    ----------
    x : TimeSequence or array_like
        The sequence. A bare array is wrapped with ``s`` (default 0).
    p : EmbeddingParams or (d, tau)
        Embedding dimension and delay.
    s : int, optional
        Indexing type for bare arrays; must agree with ``x.s`` if given.

    Raises
    ------
    ValueError
        If ``m = N - (d-1)*tau < 1`` or the parameters are out of range.
    """
    if not isinstance(x, TimeSequence):
        x = TimeSequence(np.asarray(x, dtype=np.float64), 0 if s is None else s)
    elif s is not None and s != x.s:
        raise ValueError(f"s={s} disagrees with the sequence type s={x.s}")
    p = EmbeddingParams(*p)
    if p.d < 1 or p.tau < 1:
        raise ValueError(f"need d >= 1 and tau >= 1, got d={p.d}, tau={p.tau}")
    m = m_of(x.N, p.d, p.tau)
    if m < 1:
        raise ValueError(f"m = N-(d-1)tau < 1 (N={x.N}, d={p.d}, tau={p.tau}, m={m})")
    entries = kernels.embed(x.values, p.d, p.tau)
    entries.setflags(write=False)
    return TrajectoryMatrix(entries, p, x.s, x.N)


class SizeRow(NamedTuple):
    tau: int
    m: int
    shape: tuple[int, int]
    m_ge_d: bool

    @property
    def dxm(self) -> str:
        return f"{self.shape[0]}x{self.shape[1]}"


def size_table(N: int, d: int, tau_range: Sequence[int]) -> list[SizeRow]:
    """Trajectory matrix size for every delay in `tau_range`."""
    rows = []
    for tau in tau_range:
        m = m_of(N, d, tau)
        rows.append(SizeRow(tau, m, (d, m), m >= d))
    return rows
