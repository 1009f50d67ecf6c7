"""Delay embedding, exact pull-back and mode decomposition of time sequences.

Works for any time delay ``tau >= 1`` and for both 0-based (``s=0``) and
1-based (``s=1``) sequence labels.
"""

__version__ = "0.1.0"

from ._backend import BACKEND
from .decompose import ComponentGroup, Decomposer, DecomposerSpec, decompose, denoise, reconstruct
from .diophantine import DiophParams, RectDomain, SolutionSet, solve, x_bounds
from .embedding import EmbeddingParams, TimeSequence, TrajectoryMatrix, embed, m_of, size_table, tau_max
from .pipeline import DecompositionReport, PipelineConfig, TauWarning, run, tau_diagnostics
from .pullback import Estimator, collect_q_set, dap_reference, pull_back, q_bounds

__all__ = [
    "BACKEND",
    "ComponentGroup",
    "Decomposer",
    "DecomposerSpec",
    "DecompositionReport",
    "DiophParams",
    "EmbeddingParams",
    "Estimator",
    "PipelineConfig",
    "RectDomain",
    "SolutionSet",
    "TauWarning",
    "TimeSequence",
    "TrajectoryMatrix",
    "collect_q_set",
    "dap_reference",
    "decompose",
    "denoise",
    "embed",
    "m_of",
    "pull_back",
    "q_bounds",
    "reconstruct",
    "run",
    "size_table",
    "solve",
    "tau_diagnostics",
    "tau_max",
    "x_bounds",
]
