"""Embed -> decompose -> (denoise) -> pull back, plus delay diagnostics."""

from __future__ import annotations

import warnings
from dataclasses import dataclass, field
from typing import NamedTuple, Sequence

import numpy as np

from .decompose import DecomposerSpec, decompose, denoise
from .embedding import EmbeddingParams, TimeSequence, embed, m_of, tau_max
from .pullback import Estimator, pull_back, q_bounds, q_counts

__all__ = [
    "TauWarning",
    "PipelineConfig",
    "Diagnostics",
    "DecompositionReport",
    "TauRow",
    "delay_warnings",
    "run",
    "tau_diagnostics",
]


class TauWarning(UserWarning):
    """The delay leaves fewer than ``d`` columns; copies per sample get scarce."""


@dataclass(frozen=True)
class PipelineConfig:
    d: int
    tau: int = 1
    s: int = 0
    decomposer: DecomposerSpec = field(default_factory=DecomposerSpec)
    estimator: Estimator = Estimator.MEAN
    denoise_threshold: float | None = None

    def __post_init__(self) -> None:
        if self.d < 2:
            raise ValueError(f"d must be >= 2, got {self.d}")
        if self.tau < 1:
            raise ValueError(f"tau must be >= 1, got {self.tau}")
        if self.s not in (0, 1):
            raise ValueError(f"s must be 0 or 1, got {self.s}")
        if not isinstance(self.decomposer, DecomposerSpec):
            object.__setattr__(self, "decomposer", DecomposerSpec(self.decomposer))
        object.__setattr__(self, "estimator", Estimator(self.estimator))
        t = self.denoise_threshold
        if t is not None and not 0.0 <= t <= 1.0:
            raise ValueError(f"denoise_threshold must lie in [0, 1], got {t}")


class Diagnostics(NamedTuple):
    m: int
    tau_max: int | None
    q_count_profile: np.ndarray


@dataclass(frozen=True, eq=False)
class DecompositionReport:
    config: PipelineConfig
    N: int
    r: int
    components: tuple[TimeSequence, ...]
    energies: np.ndarray
    total_energy: float
    reconstruction: np.ndarray
    residual: float
    diagnostics: Diagnostics
    warnings: tuple[str, ...] = ()

    @property
    def s(self) -> int:
        return self.config.s

    @property
    def r_hat(self) -> int:
        return len(self.components)

    def component_matrix(self) -> np.ndarray:
        """Components as rows of an ``(r_hat, N)`` array."""
        if not self.components:
            return np.empty((0, self.N))
        return np.vstack([c.values for c in self.components])


def delay_warnings(N: int, d: int, tau: int) -> list[str]:
    """Human-readable warnings for a delay outside the recommended range."""
    out = []
    m = m_of(N, d, tau)
    if N > d:
        tm = tau_max(N, d)
        if tau > tm:
            out.append(f"tau > tau_max (tau={tau}, tau_max={tm})")
    if m < d:
        out.append(f"m < d (m={m}, d={d})")
    return out


def _sequential_sum(rows, N: int) -> np.ndarray:
    total = np.zeros(N)
    for row in rows:
        total = total + row
    return total


def run(x: TimeSequence | Sequence[float] | np.ndarray, cfg: PipelineConfig) -> DecompositionReport:
    """Decompose `x` into component sequences.

    Delays beyond ``tau_max`` (or ``m < d``) still run but issue a
    :class:`TauWarning`; the messages are also kept on the report.
    """
    if not isinstance(x, TimeSequence):
        x = TimeSequence(np.asarray(x, dtype=np.float64), cfg.s)
    elif x.s != cfg.s:
        raise ValueError(f"sequence type s={x.s} disagrees with config s={cfg.s}")

    M = embed(x, EmbeddingParams(cfg.d, cfg.tau))
    notes = delay_warnings(x.N, cfg.d, cfg.tau)
    for msg in notes:
        warnings.warn(msg, TauWarning, stacklevel=2)

    group = decompose(M.entries, cfg.decomposer)
    r = group.r
    if cfg.denoise_threshold is not None:
        group = denoise(group, cfg.denoise_threshold)

    comps = tuple(pull_back(z, cfg.tau, cfg.s, cfg.estimator) for z in group.components)
    recon = _sequential_sum((c.values for c in comps), x.N)
    scale = np.linalg.norm(x.values)
    err = np.linalg.norm(x.values - recon)
    residual = float(err / scale) if scale > 0 else float(err)

    tm = tau_max(x.N, cfg.d) if x.N > cfg.d else None
    diag = Diagnostics(M.m, tm, q_counts(cfg.d, M.m, cfg.tau))
    return DecompositionReport(
        config=cfg,
        N=x.N,
        r=r,
        components=comps,
        energies=np.array(group.energies),
        total_energy=group.total_energy,
        reconstruction=recon,
        residual=residual,
        diagnostics=diag,
        warnings=tuple(notes),
    )


class TauRow(NamedTuple):
    tau: int
    m: int
    q_count: int | None  # None when the probe index or the embedding is invalid

    @property
    def valid(self) -> bool:
        return self.q_count is not None


def tau_diagnostics(N: int, d: int, s: int, n_probe: int, tau_range: Sequence[int]) -> list[TauRow]:
    """Copies of ``x[n_probe]`` in the trajectory matrix for each delay."""
    rows = []
    for tau in tau_range:
        m = m_of(N, d, tau)
        count = None
        if m >= 1 and s <= n_probe <= N - 1 + s:
            count = q_bounds(n_probe, tau, s, d, m).count
        rows.append(TauRow(tau, m, count))
    return rows
