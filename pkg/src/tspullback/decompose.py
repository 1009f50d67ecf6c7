"""Additive decomposition of a trajectory matrix into rank-one components.

Two decomposers are provided:

``svd``
    ``Z_k = sigma_k u_k v_k^T`` from the thin SVD, energy ``sigma_k**2``.
``cov``
    eigenvectors ``u_k`` of the lag-covariance ``M M^T / m``; each component
    is the projection ``u_k u_k^T M`` and its energy is ``||u_k^T M||**2``.

Both drop components below numerical rank, so a zero matrix gives an empty
group. The sign of every ``u_k`` is fixed so that its largest-magnitude entry
is non-negative.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Iterable, Sequence

import numpy as np

__all__ = [
    "Decomposer",
    "DecomposerSpec",
    "ComponentGroup",
    "decompose",
    "reconstruct",
    "denoise",
]


class Decomposer(str, Enum):
    SVD = "svd"
    COV = "cov"


@dataclass(frozen=True)
class DecomposerSpec:
    kind: Decomposer = Decomposer.SVD
    max_components: int | None = None

    def __post_init__(self) -> None:
        object.__setattr__(self, "kind", Decomposer(self.kind))
        if self.max_components is not None and self.max_components < 1:
            raise ValueError(f"max_components must be >= 1, got {self.max_components}")


@dataclass(frozen=True, eq=False)
class ComponentGroup:
    """Ordered stack of ``d x m`` components with descending energies.

    ``total_energy`` is the squared Frobenius norm of the decomposed matrix;
    it is inherited unchanged by :func:`denoise` so that energy fractions are
    always measured against the original matrix.
    """

    components: np.ndarray  # shape (r, d, m)
    energies: np.ndarray
    total_energy: float

    def __post_init__(self) -> None:
        comps = np.array(self.components, dtype=np.float64)
        energies = np.array(self.energies, dtype=np.float64).reshape(-1)
        if comps.ndim != 3:
            raise ValueError(f"components must be stacked as (r, d, m), got shape {comps.shape}")
        if energies.shape[0] != comps.shape[0]:
            raise ValueError("one energy per component is required")
        if np.any(energies < 0) or np.any(np.diff(energies) > 0):
            raise ValueError("energies must be non-negative and sorted descending")
        comps.setflags(write=False)
        energies.setflags(write=False)
        object.__setattr__(self, "components", comps)
        object.__setattr__(self, "energies", energies)
        object.__setattr__(self, "total_energy", float(self.total_energy))

    @classmethod
    def from_components(cls, components: Iterable[np.ndarray],
                        shape: tuple[int, int] | None = None) -> "ComponentGroup":
        """Build a group from arbitrary matrices, sorted by Frobenius energy."""
        mats = [np.asarray(c, dtype=np.float64) for c in components]
        shapes = {z.shape for z in mats}
        if shape is not None:
            shapes.add(tuple(shape))
        if len(shapes) > 1:
            raise ValueError(f"components disagree in shape: {sorted(shapes)}")
        if not shapes:
            raise ValueError("an empty group needs an explicit shape")
        (shp,) = shapes
        if len(shp) != 2:
            raise ValueError(f"components must be 2-d matrices, got shape {shp}")
        energies = np.array([np.sum(z * z) for z in mats])
        order = np.argsort(-energies, kind="stable")
        stack = np.empty((len(mats),) + shp)
        for k, idx in enumerate(order):
            stack[k] = mats[idx]
        total = float(np.sum(sum(mats, np.zeros(shp)) ** 2))
        return cls(stack, energies[order], total)

    @property
    def r(self) -> int:
        return self.components.shape[0]

    @property
    def shape(self) -> tuple[int, int]:
        return self.components.shape[1:]

    def __len__(self) -> int:
        return self.r

    def __iter__(self):
        return iter(self.components)

    def __getitem__(self, k):
        return self.components[k]


def _fix_sign(u: np.ndarray, v: np.ndarray) -> None:
    # flip pairs in place so argmax |u_k| is non-negative
    idx = np.argmax(np.abs(u), axis=0)
    flip = u[idx, np.arange(u.shape[1])] < 0
    u[:, flip] *= -1
    v[flip, :] *= -1


def _svd_components(M: np.ndarray):
    U, S, Vt = np.linalg.svd(M, full_matrices=False)
    if S.size == 0 or S[0] == 0.0:
        return np.empty((0,) + M.shape), np.empty(0)
    tol = max(M.shape) * np.finfo(np.float64).eps * S[0]
    r = int(np.count_nonzero(S > tol))
    U, S, Vt = U[:, :r].copy(), S[:r], Vt[:r].copy()
    _fix_sign(U, Vt)
    comps = (U.T[:, :, None] * S[:, None, None]) * Vt[:, None, :]
    return comps, S ** 2


def _cov_components(M: np.ndarray):
    d, m = M.shape
    C = (M @ M.T) / m
    _, U = np.linalg.eigh(C)
    # project onto the full orthonormal eigenbasis; sum_k u_k u_k^T = I
    W = U.T @ M  # row k is u_k^T M
    energies = np.einsum("ij,ij->i", W, W)
    order = np.argsort(-energies, kind="stable")
    U, W, energies = U[:, order].copy(), W[order].copy(), energies[order]
    if energies.size == 0 or energies[0] == 0.0:
        return np.empty((0, d, m)), np.empty(0)
    tol = max(d, m) * np.finfo(np.float64).eps * np.sqrt(energies[0])
    r = int(np.count_nonzero(np.sqrt(energies) > tol))
    U, W, energies = U[:, :r], W[:r], energies[:r]
    _fix_sign(U, W)
    comps = U.T[:, :, None] * W[:, None, :]
    return comps, energies


def decompose(m, spec: DecomposerSpec | str = DecomposerSpec()) -> ComponentGroup:
    """Split a trajectory matrix into a :class:`ComponentGroup`.

    ``np.linalg.LinAlgError`` from a non-converging SVD/eigensolver is
    propagated unchanged.
    """
    if not isinstance(spec, DecomposerSpec):
        spec = DecomposerSpec(spec)
    M = np.asarray(m, dtype=np.float64)
    if M.ndim != 2 or min(M.shape) < 1:
        raise ValueError(f"expected a non-empty 2-d matrix, got shape {M.shape}")
    if spec.kind is Decomposer.SVD:
        comps, energies = _svd_components(M)
    else:
        comps, energies = _cov_components(M)
    if spec.max_components is not None:
        comps, energies = comps[:spec.max_components], energies[:spec.max_components]
    return ComponentGroup(comps, energies, float(np.sum(M * M)))


def reconstruct(g: ComponentGroup | Sequence[np.ndarray],
                shape: tuple[int, int] | None = None) -> np.ndarray:
    """Elementwise sum of the components, accumulated in group order."""
    if not isinstance(g, ComponentGroup):
        g = ComponentGroup.from_components(g, shape)
    out = np.zeros(g.shape)
    for z in g.components:
        out = out + z
    return out


def denoise(g: ComponentGroup, threshold: float) -> ComponentGroup:
    """Keep the shortest leading run of components reaching `threshold` of the energy.

    ``threshold >= 1`` returns the group unchanged and ``threshold == 0``
    keeps nothing. If the retained components never reach the threshold
    (possible once a group has been truncated), all of them are kept.
    """
    if not 0.0 <= threshold <= 1.0:
        raise ValueError(f"threshold must lie in [0, 1], got {threshold}")
    if threshold >= 1.0:
        return g
    if threshold <= 0.0 or g.r == 0:
        keep = 0
    else:
        cum = np.cumsum(g.energies)
        hit = np.nonzero(cum >= threshold * g.total_energy)[0]
        keep = int(hit[0]) + 1 if hit.size else g.r
    if keep == g.r:
        return g
    return ComponentGroup(g.components[:keep], g.energies[:keep], g.total_energy)
