"""Constrained binary Diophantine equation ``tau*x + y = n + s*tau``.

The lattice points of this line inside a rectangle of row/column indices are
exactly the cells of a trajectory matrix that hold the sample ``x[n]``.
Everything here works on Python integers, so there is no overflow and floor /
ceiling follow mathematical (not truncating) semantics.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd
from typing import Iterator

__all__ = [
    "RectDomain",
    "DiophParams",
    "SolutionSet",
    "floor_div",
    "ceil_div",
    "x_bounds",
    "solve",
    "cardinality_piecewise_tau1",
    "is_solvable",
    "nonnegative_guaranteed",
    "trajectory_domain",
]


def floor_div(a: int, b: int) -> int:
    """Floor of ``a / b`` rounding toward minus infinity (``b > 0``)."""
    if b <= 0:
        raise ValueError(f"divisor must be positive, got {b}")
    return a // b


def ceil_div(a: int, b: int) -> int:
    """Ceiling of ``a / b`` rounding toward plus infinity (``b > 0``)."""
    if b <= 0:
        raise ValueError(f"divisor must be positive, got {b}")
    return -((-a) // b)


@dataclass(frozen=True)
class RectDomain:
    """Integer rectangle ``alpha1 <= x <= alpha2``, ``beta1 <= y <= beta2``.

    Unit-width sides (``alpha1 == alpha2``) are accepted so that 1-row or
    1-column matrices can be described.
    """

    alpha1: int
    alpha2: int
    beta1: int
    beta2: int

    def __post_init__(self) -> None:
        if self.alpha1 < 0 or self.beta1 < 0:
            raise ValueError(f"domain lower bounds must be >= 0: {self}")
        if self.alpha1 > self.alpha2 or self.beta1 > self.beta2:
            raise ValueError(f"domain bounds out of order: {self}")

    def __contains__(self, point: tuple[int, int]) -> bool:
        x, y = point
        return self.alpha1 <= x <= self.alpha2 and self.beta1 <= y <= self.beta2

    def __iter__(self) -> Iterator[tuple[int, int]]:
        for x in range(self.alpha1, self.alpha2 + 1):
            for y in range(self.beta1, self.beta2 + 1):
                yield x, y

    @property
    def size(self) -> int:
        return (self.alpha2 - self.alpha1 + 1) * (self.beta2 - self.beta1 + 1)


@dataclass(frozen=True)
class DiophParams:
    n: int
    tau: int
    s: int = 0

    def __post_init__(self) -> None:
        if self.tau < 1:
            raise ValueError(f"tau must be >= 1, got {self.tau}")
        if self.s not in (0, 1):
            raise ValueError(f"s must be 0 or 1, got {self.s}")
        if self.n < self.s:
            raise ValueError(f"n must be >= s={self.s}, got {self.n}")

    @property
    def rhs(self) -> int:
        return self.n + self.s * self.tau


@dataclass(frozen=True)
class SolutionSet:
    """Lattice points of the line, ascending in ``x``.

    An empty set is encoded by ``x_max < x_min``.
    """

    params: DiophParams
    domain: RectDomain
    x_min: int
    x_max: int

    @property
    def points(self) -> list[tuple[int, int]]:
        rhs, tau = self.params.rhs, self.params.tau
        return [(x, rhs - x * tau) for x in range(self.x_min, self.x_max + 1)]

    def __len__(self) -> int:
        return max(0, self.x_max - self.x_min + 1)

    def __iter__(self) -> Iterator[tuple[int, int]]:
        return iter(self.points)

    def __bool__(self) -> bool:
        return self.x_max >= self.x_min


def x_bounds(p: DiophParams, om: RectDomain) -> tuple[int, int]:
    """Return ``(x_min, x_max)`` of the solutions of ``tau*x + y = n + s*tau`` in `om`.

    ``x_min > x_max`` means there is no solution.
    """
    rhs = p.rhs
    x_min = max(om.alpha1, ceil_div(rhs - om.beta2, p.tau))
    x_max = min(om.alpha2, floor_div(rhs - om.beta1, p.tau))
    return x_min, x_max


def solve(p: DiophParams, om: RectDomain) -> SolutionSet:
    x_min, x_max = x_bounds(p, om)
    return SolutionSet(p, om, x_min, x_max)


def trajectory_domain(d: int, m: int, s: int) -> RectDomain:
    """Index rectangle of a ``d x m`` trajectory matrix under the type-`s` labels."""
    return RectDomain(s, d - 1 + s, s, m - 1 + s)


def cardinality_piecewise_tau1(n: int, d: int, m: int, N: int) -> int:
    """Number of copies of ``x[n]`` in a 1-based, unit-delay trajectory matrix.

    Rises linearly to ``min(d, m)``, stays flat up to ``max(d, m)`` and falls
    linearly to 1 at ``n == N``.
    """
    if N != d + m - 1:
        raise ValueError(f"unit delay requires N = d + m - 1, got N={N}, d={d}, m={m}")
    if not 1 <= n <= N:
        raise ValueError(f"n={n} outside [1, {N}]")
    d_star, m_star = min(d, m), max(d, m)
    if n < d_star:
        return n
    if n <= m_star:
        return d_star
    return N - n + 1


def is_solvable(a: int, b: int, n: int) -> bool:
    """Whether ``a*x + b*y = n`` has an integer solution (``gcd(a, b) | n``)."""
    if a < 1 or b < 1:
        raise ValueError(f"a and b must be >= 1, got a={a}, b={b}")
    return n % gcd(a, b) == 0


def nonnegative_guaranteed(a: int, b: int, n: int) -> bool:
    """Whether a solution with ``x, y >= 0`` is guaranteed by the Frobenius bound.

    True when ``gcd(a, b) == 1`` and ``n > a*b - a - b``. A False result does
    not rule out non-negative solutions; it only means the bound is silent.
    """
    if a < 1 or b < 1:
        raise ValueError(f"a and b must be >= 1, got a={a}, b={b}")
    return gcd(a, b) == 1 and n > a * b - a - b
