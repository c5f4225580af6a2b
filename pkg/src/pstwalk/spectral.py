"""Symmetric eigendecomposition and continuous-time walk evaluation.

The walk on a graph with adjacency A is U(t) = exp(-itA); all evolution and
fidelity values are computed through the spectral resolution of A, never by
generic matrix exponentials.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import List, Optional, Tuple

import numpy as np

from .errors import (
    AmbiguousDegeneracyError,
    DegenerateEigenvalueError,
    InvalidArgumentError,
    NotConnectedError,
    NumericFailureError,
)
from .graphs import Graph, is_connected

__all__ = [
    "EigenDecomposition",
    "SpectralProjectors",
    "eigendecompose",
    "evolve",
    "propagator",
    "fidelity",
    "spectral_projectors",
    "spectrum",
    "is_integral",
    "perron_vector",
    "default_group_tol",
]

RECON_TOL = 1e-10
ORTHO_TOL = 1e-10


@dataclass(frozen=True)
class EigenDecomposition:
    """Eigenvalues sorted descending; vectors[:, k] belongs to values[k]."""

    values: np.ndarray
    vectors: np.ndarray

    @property
    def n(self) -> int:
        return self.values.shape[0]


@dataclass(frozen=True)
class SpectralProjectors:
    """Eigenspace projectors after clustering nearly equal eigenvalues."""

    values: Tuple[float, ...]          # one representative per cluster, descending
    projectors: Tuple[np.ndarray, ...]
    group_tol: float

    def __len__(self) -> int:
        return len(self.values)


def eigendecompose(g: Graph) -> EigenDecomposition:
    """Dense symmetric eigensolve, validated against the residual contract."""
    w, v = np.linalg.eigh(g.adj)
    w = w[::-1].copy()
    v = v[:, ::-1].copy()
    n = g.n
    amax = max(1.0, float(np.max(np.abs(g.adj))))
    recon = v @ np.diag(w) @ v.T
    if np.max(np.abs(recon - g.adj)) > RECON_TOL * n * amax:
        raise NumericFailureError("eigendecomposition residual out of tolerance")
    if np.max(np.abs(v.T @ v - np.eye(n))) > ORTHO_TOL * max(1, n):
        raise NumericFailureError("eigenvector orthonormality out of tolerance")
    w.setflags(write=False)
    v.setflags(write=False)
    return EigenDecomposition(w, v)


def evolve(decomp: EigenDecomposition, t: float, src: int) -> np.ndarray:
    """State exp(-itA)|src> as a complex amplitude vector."""
    coeff = np.exp(-1j * t * decomp.values) * decomp.vectors[src, :]
    return decomp.vectors @ coeff


def propagator(decomp: EigenDecomposition, t: float) -> np.ndarray:
    """Full unitary exp(-itA)."""
    phase = np.exp(-1j * t * decomp.values)
    return (decomp.vectors * phase) @ decomp.vectors.T


def fidelity(decomp: EigenDecomposition, a: int, b: int, t) -> complex:
    """Transfer amplitude <b| exp(-itA) |a>.

    `t` may be a scalar (returns complex) or an array (returns a complex array).
    """
    w_ab = decomp.vectors[b, :] * decomp.vectors[a, :]
    t_arr = np.asarray(t, dtype=float)
    if t_arr.ndim == 0:
        return complex(np.dot(w_ab, np.exp(-1j * float(t_arr) * decomp.values)))
    return w_ab @ np.exp(-1j * np.outer(decomp.values, t_arr))


def default_group_tol(decomp: EigenDecomposition) -> float:
    return 1e-8 * max(1.0, float(np.max(np.abs(decomp.values))))


def spectral_projectors(decomp: EigenDecomposition, group_tol: Optional[float] = None) -> SpectralProjectors:
    """Cluster eigenvalues by single linkage and form one projector per cluster.

    A cluster whose diameter exceeds 10x the grouping tolerance is rejected:
    that means the tolerance sits inside a continuum of eigenvalues and any
    grouping would be arbitrary.
    """
    if group_tol is None:
        group_tol = default_group_tol(decomp)
    if group_tol <= 0:
        raise InvalidArgumentError("group_tol must be positive")
    w, v = decomp.values, decomp.vectors
    groups: List[List[int]] = [[0]]
    for k in range(1, len(w)):
        if w[k - 1] - w[k] <= group_tol:
            groups[-1].append(k)
        else:
            groups.append([k])
    reps = []
    projs = []
    for idx in groups:
        diam = float(w[idx[0]] - w[idx[-1]])
        if diam > 10.0 * group_tol:
            raise AmbiguousDegeneracyError(
                f"eigenvalue cluster around {w[idx[0]]:.6g} has diameter {diam:.3g} "
                f"> 10*group_tol ({10 * group_tol:.3g})"
            )
        block = v[:, idx]
        reps.append(float(np.mean(w[idx])))
        p = block @ block.T
        p.setflags(write=False)
        projs.append(p)
    return SpectralProjectors(tuple(reps), tuple(projs), group_tol)


def spectrum(g: Graph) -> np.ndarray:
    """Eigenvalues of the adjacency matrix, sorted descending."""
    return eigendecompose(g).values


def is_integral(g: Graph, tol: float = 1e-8) -> bool:
    w = spectrum(g)
    return bool(np.all(np.abs(w - np.round(w)) <= tol))


def perron_vector(g: Graph) -> Tuple[float, np.ndarray]:
    """Top eigenvalue and its positive unit eigenvector.

    Requires a connected graph with nonnegative weights and a numerically
    simple top eigenvalue.
    """
    if np.any(g.adj < 0):
        raise InvalidArgumentError("perron_vector needs nonnegative weights")
    if not is_connected(g):
        raise NotConnectedError("perron_vector needs a connected graph")
    decomp = eigendecompose(g)
    lam0 = float(decomp.values[0])
    if g.n > 1 and decomp.values[0] - decomp.values[1] <= 1e-10:
        raise DegenerateEigenvalueError("top eigenvalue is not numerically simple")
    x0 = decomp.vectors[:, 0].copy()
    k = int(np.argmax(np.abs(x0)))
    if x0[k] < 0:
        x0 = -x0
    return lam0, x0
