"""Time meshes on [0, T] and their shape statistics.

A mesh is just a strictly increasing array of nodes starting at zero.  The
constructors cover the grids used in practice: the graded family
t_k = T*(k/N)**r that concentrates nodes near the initial time, the uniform
special case r = 1, an oscillatory stress-test mesh built from sine-modulated
steps, and arbitrary user-supplied nodes.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

__all__ = [
    "Mesh",
    "MeshStats",
    "graded_mesh",
    "uniform_mesh",
    "sin_mesh",
    "custom_mesh",
    "mesh_stats",
    "critical_exponent",
]


@dataclass
class Mesh:
    """Strictly increasing time nodes t_0 = 0 < t_1 < ... < t_N.

    ``steps`` holds tau_k = t_k - t_{k-1} for k = 1..N.  Both arrays are
    marked read-only after validation; treat a mesh as immutable.
    """

    nodes: np.ndarray
    steps: np.ndarray = field(init=False, repr=False)

    def __post_init__(self):
        nodes = np.asarray(self.nodes, dtype=float)
        if nodes.ndim != 1:
            raise ValueError(f"nodes must be one-dimensional, got shape {nodes.shape}")
        if nodes.size < 2:
            raise ValueError("a mesh needs at least two nodes (N >= 1)")
        if nodes[0] != 0.0:
            raise ValueError(f"the first node must be exactly 0, got t_0={nodes[0]!r}")
        steps = np.diff(nodes)
        bad = np.nonzero(steps <= 0.0)[0]
        if bad.size:
            k = int(bad[0]) + 1
            raise ValueError(
                f"nodes must increase strictly; first violation at index {k} "
                f"(t_{k-1}={nodes[k-1]!r}, t_{k}={nodes[k]!r})"
            )
        nodes.flags.writeable = False
        steps.flags.writeable = False
        self.nodes = nodes
        self.steps = steps

    @property
    def count(self) -> int:
        """Number of steps N."""
        return self.nodes.size - 1

    @property
    def horizon(self) -> float:
        """Final time T."""
        return float(self.nodes[-1])


@dataclass(frozen=True)
class MeshStats:
    rho: float
    tau_max: float
    tau_min: float


def graded_mesh(T: float, N: int, r: float) -> Mesh:
    """Graded mesh t_k = T*(k/N)**r.

    The nodes come straight from the closed formula (no step accumulation),
    so t_0 = 0 and t_N = T hold exactly.  Grading exponents below 1 would
    cluster nodes at the wrong end and are rejected.
    """
    if not T > 0.0:
        raise ValueError(f"horizon T must be positive, got T={T!r}")
    if N < 1:
        raise ValueError(f"step count N must be >= 1, got N={N!r}")
    if r < 1.0:
        raise ValueError(f"grading exponent must satisfy r >= 1, got r={r!r}")
    k = np.arange(N + 1, dtype=float)
    return Mesh(T * (k / N) ** r)


def uniform_mesh(T: float, N: int) -> Mesh:
    """Uniform mesh with step T/N (the r = 1 graded mesh)."""
    return graded_mesh(T, N, 1.0)


def sin_mesh(n: int) -> Mesh:
    """Oscillatory nonuniform mesh with steps 0.4*sin(3*k*pi/n) + 0.41.

    Every step lies in [0.01, 0.81] and adjacent ratios swing through
    several decades of variation, which makes this a good adversarial grid
    for kernel and bound checks.  The horizon is whatever the steps sum to.
    """
    if n < 1:
        raise ValueError(f"step count n must be >= 1, got n={n!r}")
    k = np.arange(1, n + 1, dtype=float)
    steps = 0.4 * np.sin(3.0 * k * np.pi / n) + 0.41
    nodes = np.concatenate(([0.0], np.cumsum(steps)))
    return Mesh(nodes)


def custom_mesh(nodes) -> Mesh:
    """Mesh from user-supplied nodes; validation reports the first bad index."""
    return Mesh(np.asarray(nodes, dtype=float))


def mesh_stats(mesh: Mesh) -> MeshStats:
    """Largest adjacent step ratio rho and the extreme step sizes.

    rho = max_k tau_{k+1}/tau_k over k = 1..N-1; a single-step mesh has
    rho = 1 by convention.
    """
    steps = mesh.steps
    if steps.size == 1:
        rho = 1.0
    else:
        rho = float(np.max(steps[1:] / steps[:-1]))
    return MeshStats(rho=rho, tau_max=float(steps.max()), tau_min=float(steps.min()))


def critical_exponent(alpha: float, beta: float) -> float:
    """Grading threshold r* = (2 - alpha)/(1 + beta - alpha).

    For solutions behaving like t**beta near the origin, grading at or above
    r* is what lets the scheme reach its full order away from t = 0.
    """
    if not 0.0 < alpha < 1.0:
        raise ValueError(f"alpha must lie in (0, 1), got alpha={alpha!r}")
    if not 0.0 < beta <= 2.0:
        raise ValueError(f"beta must lie in (0, 2], got beta={beta!r}")
    return (2.0 - alpha) / (1.0 + beta - alpha)
