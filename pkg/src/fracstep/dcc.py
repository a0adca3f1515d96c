"""Complementary kernels: the triangular inverse of the discrete Caputo operator.

Writing the discrete derivative as a lower-triangular operator acting on
backward increments, there is a complementary family p^{(n)}_{n-j} with

    sum_{j=k..n} p^{(n)}_{n-j} * a^{(j)}_{j-k} = 1   for every 1 <= k <= n,

which plays the role the Riemann-Liouville integral kernel plays in the
continuous setting.  This module computes the family by backward recurrence,
checks the defining identity, and compares against the integral surrogate

    ptilde^{(n)}_{n-k} = integral of omega_alpha(t_n - s) over [t_{k-1}, t_k],

which bounds p from above on meshes where the rows decay monotonically.
``crt_constant`` evaluates the worst-case quotient between the recurrence's
building blocks and their continuous counterparts, whose small-step limit is
(rho + 1)/2 in terms of the adjacent-step ratio rho.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.integrate import quad

from .exceptions import DegenerateKernelError, PrecisionError
from .kernels import KernelRow, Scheme, kernel_row
from .meshes import Mesh, mesh_stats
from .special import gamma, omega

__all__ = [
    "DccKernels",
    "CrtBound",
    "kernel_triangle",
    "surrogate_row",
    "dcc_row",
    "verify_matrix_identity",
    "dcc_bound_check",
    "crt_constant",
]


@dataclass
class DccKernels:
    """Complementary weights at one level, age-indexed like KernelRow.

    ``p[j]`` is p^{(n)}_j, ``p_tilde[j]`` the integral surrogate, and
    ``q = p/p_tilde`` the quotient that the elementwise comparison claim
    would keep at or below one (it does not stay there; see dcc_bound_check).
    """

    level: int
    p: np.ndarray
    p_tilde: np.ndarray
    q: np.ndarray


@dataclass(frozen=True)
class CrtBound:
    """Worst quotient between discrete and continuous kernel differences."""

    c_r_tau: float
    rho: float
    tau: float

    def __post_init__(self):
        if not self.c_r_tau > 0.0:
            raise ValueError(f"quotient bound must be positive, got {self.c_r_tau!r}")

    @property
    def reference(self) -> float:
        """Small-step limit (rho + 1)/2 of the quotient."""
        return 0.5 * (self.rho + 1.0)


def kernel_triangle(mesh: Mesh, alpha: float, n: int, scheme: Scheme = Scheme("l1")):
    """Rows for every level 1..n, the input both the solver and audit share."""
    return [kernel_row(mesh, alpha, j, scheme) for j in range(1, n + 1)]


def surrogate_row(mesh: Mesh, alpha: float, n: int) -> np.ndarray:
    """Integral surrogate weights at level n, age order.

    Exact antiderivative: the panel integral of omega_alpha(t_n - s) telescopes
    to [(t_n - t_{k-1})**alpha - (t_n - t_k)**alpha]/Gamma(1+alpha), so the
    whole row sums to t_n**alpha/Gamma(1+alpha).
    """
    if not 0.0 < alpha < 1.0:
        raise ValueError(f"alpha must lie in (0, 1), got alpha={alpha!r}")
    if not 1 <= n <= mesh.count:
        raise ValueError(f"level n must lie in 1..{mesh.count}, got n={n!r}")
    t = mesh.nodes
    tn = t[n]
    vals = ((tn - t[:n]) ** alpha - (tn - t[1 : n + 1]) ** alpha) / gamma(1.0 + alpha)
    return vals[::-1].copy()


def _row_matrix(rows: list[KernelRow]) -> np.ndarray:
    """Stack age-ordered rows into a padded square array A[j-1, i] = a^{(j)}_i."""
    n = len(rows)
    a = np.zeros((n, n))
    for j, row in enumerate(rows, start=1):
        if row.level != j:
            raise ValueError(f"rows must cover levels 1..{n} in order; slot {j} holds level {row.level}")
        a[j - 1, :j] = row.coeffs
    return a


def dcc_row(mesh: Mesh, alpha: float, rows: list[KernelRow]) -> DccKernels:
    """Complementary weights at level n = len(rows) by the backward recurrence.

    p^{(n)}_0 = 1/a^{(n)}_0, and for k = n-1 down to 1

        p^{(n)}_{n-k} = (1/a^{(k)}_0) * sum_{j=k+1..n} p^{(n)}_{n-j}
                        * (a^{(j)}_{j-k-1} - a^{(j)}_{j-k}).

    Each pass divides by the diagonal weight of level k, not level n; with
    monotone rows every factor is nonnegative, which is the positivity
    mechanism behind the p <= ptilde comparison.
    """
    n = len(rows)
    if n < 1:
        raise ValueError("need at least the level-1 row")
    a = _row_matrix(rows)
    diag = a[:, 0].copy()
    bad = np.nonzero(diag <= 0.0)[0]
    if bad.size:
        raise DegenerateKernelError(
            f"row at level {bad[0] + 1} has nonpositive leading weight {diag[bad[0]]!r}"
        )

    p = np.zeros(n)
    p[0] = 1.0 / diag[n - 1]
    for k in range(n - 1, 0, -1):
        jj = np.arange(k, n)  # row indices for levels k+1..n
        diff = a[jj, jj - k] - a[jj, jj - k + 1]
        p[n - k] = (p[: n - k][::-1] @ diff) / diag[k - 1]

    p_tilde = surrogate_row(mesh, alpha, n)
    return DccKernels(level=n, p=p, p_tilde=p_tilde, q=p / p_tilde)


def verify_matrix_identity(mesh: Mesh, alpha: float, rows: list[KernelRow]) -> float:
    """Max over k of |sum_{j=k..n} p^{(n)}_{n-j} a^{(j)}_{j-k} - 1|."""
    n = len(rows)
    dcc = dcc_row(mesh, alpha, rows)
    a = _row_matrix(rows)
    worst = 0.0
    for k in range(1, n + 1):
        jj = np.arange(k - 1, n)  # levels k..n
        total = dcc.p[: n - k + 1][::-1] @ a[jj, jj - k + 1]
        worst = max(worst, abs(total - 1.0))
    return worst


def dcc_bound_check(dcc: DccKernels, slack: float = 1e-13) -> tuple[bool, float]:
    """Elementwise p <= ptilde with absolute slack; returns (ok, min(ptilde - p))."""
    margin = float(np.min(dcc.p_tilde - dcc.p))
    return margin >= -slack, margin


def crt_constant(mesh: Mesh, alpha: float, n: int, k: int,
                 scheme: Scheme = Scheme("l1")) -> CrtBound:
    """Worst quotient of discrete kernel differences over their exact analogues.

    For each j in [k+1, n] the numerator is ptilde^{(n)}_{n-j} times the
    forward difference a^{(j)}_{j-k-1} - a^{(j)}_{j-k}; the denominator is the
    exact counterpart

        -integral over [t_{j-1}, t_j] of omega_alpha(t_n - t)
            * [omega_{1-alpha}(t - t_{k-1}) - omega_{1-alpha}(t - t_k)] dt,

    where the bracket is already the closed form of the inner panel integral,
    leaving one adaptive quadrature per j (endpoint singularities only, which
    the extrapolating quadrature resolves).
    """
    if not 1 <= k < n:
        raise ValueError(f"need 1 <= k < n, got k={k!r}, n={n!r}")
    if n > mesh.count:
        raise ValueError(f"level n must lie in 1..{mesh.count}, got n={n!r}")
    t = mesh.nodes
    tn = t[n]
    p_tilde = surrogate_row(mesh, alpha, n)
    rows = {j: kernel_row(mesh, alpha, j, scheme) for j in range(k + 1, n + 1)}

    worst = -np.inf
    for j in range(k + 1, n + 1):
        coeffs = rows[j].coeffs
        numer = p_tilde[n - j] * (coeffs[j - k - 1] - coeffs[j - k])

        def integrand(s: float) -> float:
            return omega(alpha, tn - s) * (
                omega(1.0 - alpha, s - t[k - 1]) - omega(1.0 - alpha, s - t[k])
            )

        val, err, info, *msg = quad(
            integrand, t[j - 1], t[j], epsabs=1e-10, epsrel=1e-10, limit=200,
            full_output=True,
        )
        if msg or err > 1e-8:
            raise PrecisionError(
                f"panel quadrature did not converge on [t_{j - 1}, t_{j}] "
                f"(estimated error {err:.2e})",
                last_term=err,
            )
        denom = -val
        if denom <= 0.0:
            raise PrecisionError(
                f"panel integral on [t_{j - 1}, t_{j}] lost its sign, got {val!r}",
                last_term=val,
            )
        worst = max(worst, numer / denom)

    stats = mesh_stats(mesh)
    return CrtBound(c_r_tau=float(worst), rho=stats.rho, tau=stats.tau_max)
