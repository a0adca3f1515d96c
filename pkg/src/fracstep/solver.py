"""Implicit L1 stepping for manufactured Caputo test problems.

Two problems share the same manufactured solution in time, u ~ omega_{1+beta},
whose regularity at t = 0 is controlled by beta alone:

* a scalar growing problem  D_t^alpha u = kappa*u + f(t), u(0) = 0, which
  isolates the temporal error, and
* a 1-D reaction-diffusion problem  D_t^alpha u - u_xx = kappa*u + f(x, t) on
  [-pi, pi] with homogeneous Dirichlet data and exact solution
  sin(x)*omega_{1+beta}(t), discretized by centered differences in space.

Both advance by the implicit step

    (a^{(n)}_0 - kappa + spatial part) U^n
        = f(t_n) + a^{(n)}_0 U^{n-1} - sum_{k<n} a^{(n)}_{n-k} (U^k - U^{k-1}),

with history accumulated as a dense dot product per level (O(N^2) overall,
which is cheap at table scale).  ``truncation_bound`` evaluates the a-priori
interpolation-error envelope used by the pointwise-in-time analysis.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.linalg import solve_banded

from .exceptions import StepSizeError
from .kernels import l1_row
from .meshes import Mesh
from .special import gamma, omega

__all__ = [
    "OdeProblem",
    "PdeProblem",
    "Trajectory",
    "solve_ode",
    "solve_pde",
    "truncation_bound",
]


def _check_orders(alpha: float, beta: float):
    if not 0.0 < alpha < 1.0:
        raise ValueError(f"alpha must lie in (0, 1), got alpha={alpha!r}")
    if not (0.0 < beta <= 2.0) or beta == 1.0:
        raise ValueError(
            f"beta must lie in (0, 1) or (1, 2] (second derivative of the exact "
            f"solution degenerates at beta = 1), got beta={beta!r}"
        )


@dataclass
class OdeProblem:
    """Scalar growing problem with exact solution omega_{1+beta}(t)."""

    alpha: float
    beta: float
    kappa: float
    mesh: Mesh

    def __post_init__(self):
        _check_orders(self.alpha, self.beta)

    def exact(self, t):
        return omega(1.0 + self.beta, t)

    def source(self, t):
        # singular at t = 0 when beta < alpha; only ever evaluated at t >= t_1
        return omega(1.0 + self.beta - self.alpha, t) - self.kappa * omega(1.0 + self.beta, t)


@dataclass
class PdeProblem:
    """Reaction-diffusion on [-pi, pi], exact solution sin(x)*omega_{1+beta}(t)."""

    alpha: float
    beta: float
    kappa: float
    mesh: Mesh
    m_intervals: int = 1024

    def __post_init__(self):
        _check_orders(self.alpha, self.beta)
        if self.m_intervals < 2:
            raise ValueError(f"need at least 2 space intervals, got {self.m_intervals!r}")

    @property
    def h(self) -> float:
        return 2.0 * np.pi / self.m_intervals

    @property
    def x_interior(self) -> np.ndarray:
        return -np.pi + self.h * np.arange(1, self.m_intervals)

    def exact(self, x, t):
        return np.sin(x) * omega(1.0 + self.beta, t)

    def source(self, x, t):
        amp = omega(1.0 + self.beta - self.alpha, t) + (1.0 - self.kappa) * omega(1.0 + self.beta, t)
        return np.sin(x) * amp


@dataclass
class Trajectory:
    """Per-level numerical values and errors; index 0 is the initial datum."""

    values: np.ndarray
    errors: np.ndarray

    def __post_init__(self):
        if len(self.values) != len(self.errors):
            raise ValueError("values and errors must cover the same levels")


def solve_ode(problem: OdeProblem) -> Trajectory:
    """March the scalar problem; errors[n] = |exact(t_n) - U^n|."""
    mesh = problem.mesh
    big_n = mesh.count
    u = np.zeros(big_n + 1)
    du = np.zeros(big_n)
    errors = np.zeros(big_n + 1)
    for n in range(1, big_n + 1):
        a_rev = l1_row(mesh, problem.alpha, n).coeffs[::-1]
        a0 = a_rev[n - 1]
        if a0 <= problem.kappa:
            raise StepSizeError(
                f"implicit step unsolvable at level {n}: leading weight {a0:.6g} "
                f"<= kappa {problem.kappa:.6g}; refine the mesh",
                level=n,
            )
        hist = a_rev[: n - 1] @ du[: n - 1]
        u[n] = (problem.source(mesh.nodes[n]) + a0 * u[n - 1] - hist) / (a0 - problem.kappa)
        du[n - 1] = u[n] - u[n - 1]
        errors[n] = abs(problem.exact(mesh.nodes[n]) - u[n])
    return Trajectory(values=u, errors=errors)


def solve_pde(problem: PdeProblem) -> Trajectory:
    """March the fully discrete problem; errors[n] is the discrete L2 norm
    sqrt(h * sum_i (exact(x_i, t_n) - U^n_i)^2) over interior nodes."""
    mesh = problem.mesh
    big_n = mesh.count
    m = problem.m_intervals
    h = problem.h
    x = problem.x_interior
    sin_x = np.sin(x)

    u = np.zeros((big_n + 1, m - 1))
    du = np.zeros((big_n, m - 1))
    errors = np.zeros(big_n + 1)

    off = -1.0 / h ** 2
    ab = np.zeros((3, m - 1))
    ab[0, 1:] = off
    ab[2, :-1] = off

    for n in range(1, big_n + 1):
        a_rev = l1_row(mesh, problem.alpha, n).coeffs[::-1]
        a0 = a_rev[n - 1]
        diag = a0 + 2.0 / h ** 2 - problem.kappa
        if diag <= 0.0:
            raise np.linalg.LinAlgError(
                f"tridiagonal system lost diagonal dominance at level {n} "
                f"(diagonal {diag:.6g})"
            )
        hist = a_rev[: n - 1] @ du[: n - 1]
        rhs = problem.source(x, mesh.nodes[n]) + a0 * u[n - 1] - hist
        ab[1, :] = diag
        u[n] = solve_banded((1, 1), ab, rhs)
        du[n - 1] = u[n] - u[n - 1]
        diff = sin_x * omega(1.0 + problem.beta, mesh.nodes[n]) - u[n]
        errors[n] = np.sqrt(h * np.sum(diff ** 2))
    return Trajectory(values=u, errors=errors)


def _panel_moment(a: float, b: float, beta: float) -> float:
    """Exact integral of (t - a) * t**(beta - 2) over [a, b]."""
    if a == 0.0:
        # the (t - a) factor collapses; plain power rule
        return b ** beta / beta
    upper = b ** beta / beta - a * b ** (beta - 1.0) / (beta - 1.0)
    lower = a ** beta / beta - a * a ** (beta - 1.0) / (beta - 1.0)
    return upper - lower


def truncation_bound(problem, n: int) -> float:
    """Interpolation-error envelope at level n for the manufactured solution.

    |T^n| <= a^{(n)}_0 G^n + sum_{k=1..n-1} (a^{(n)}_{n-k-1} - a^{(n)}_{n-k}) G^k
    with G^k = 2 * integral over [t_{k-1}, t_k] of (t - t_{k-1}) |u''(t)| dt and
    u'' = omega_{beta-1}, so |u''(t)| = |beta*(beta-1)|/Gamma(beta+1) * t**(beta-2)
    and each G^k has a closed form (finite for every beta > 0; identically zero
    at beta = 2 apart from the constant, where G^k = tau_k**2).
    """
    mesh = problem.mesh
    beta = problem.beta
    if not 1 <= n <= mesh.count:
        raise ValueError(f"level n must lie in 1..{mesh.count}, got n={n!r}")
    c_abs = abs(beta * (beta - 1.0)) / gamma(beta + 1.0)
    if c_abs == 0.0:
        return 0.0
    t = mesh.nodes
    g = np.array([2.0 * c_abs * _panel_moment(t[k - 1], t[k], beta) for k in range(1, n + 1)])
    coeffs = l1_row(mesh, problem.alpha, n).coeffs  # age order
    a_rev = coeffs[::-1]  # a_rev[k-1] = a^{(n)}_{n-k}
    total = coeffs[0] * g[n - 1]
    if n > 1:
        # forward difference in k: a_{n-k-1} - a_{n-k}, k = 1..n-1
        total += np.sum((a_rev[1:n] - a_rev[: n - 1]) * g[: n - 1])
    return float(total)
