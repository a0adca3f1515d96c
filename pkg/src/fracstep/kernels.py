"""Discrete-convolution kernel rows for Caputo derivatives on nonuniform meshes.

The discrete Caputo derivative at level n is the weighted sum of backward
increments

    D_tau^alpha u^n = sum_{k=1..n} a^{(n)}_{n-k} * (u^k - u^{k-1}),

and a "row" collects the weights a^{(n)}_j, j = 0..n-1, with j = 0 the most
recent one.  Two constructions are provided:

* ``l1_row``: piecewise-linear interpolation collocated at t_n.  Each weight
  is the step average of omega_{1-alpha}(t_n - s) over [t_{k-1}, t_k], which
  has the closed form
  [(t_n - t_{k-1})**(1-alpha) - (t_n - t_k)**(1-alpha)] / (tau_k*Gamma(2-alpha)).

* ``l21sigma_row``: piecewise-quadratic reconstruction collocated at the
  shifted point t_{n-sigma} = t_n - sigma*tau_n.  The row combines a step
  average of omega_{1-alpha}(t_{n-sigma} - s) with first-moment corrections
  weighted by adjacent step ratios; both integrals are evaluated through the
  exact antiderivatives omega_{2-alpha} and omega_{3-alpha}, so there is no
  quadrature anywhere in this module.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .meshes import Mesh
from .special import gamma, omega

__all__ = [
    "Scheme",
    "KernelRow",
    "l1_row",
    "l21sigma_row",
    "l21sigma_parts",
    "kernel_row",
    "is_monotone",
]

_TAGS = ("l1", "l21sigma")


@dataclass(frozen=True)
class Scheme:
    """Kernel construction tag plus the collocation shift for l21sigma."""

    tag: str
    sigma: float | None = None

    def __post_init__(self):
        if self.tag not in _TAGS:
            raise ValueError(f"unknown scheme tag {self.tag!r}, expected one of {_TAGS}")
        if self.tag == "l1" and self.sigma is not None:
            raise ValueError("the l1 scheme takes no sigma")


@dataclass
class KernelRow:
    """Weights a^{(n)}_j for one time level, indexed by age j = n - k."""

    level: int
    alpha: float
    coeffs: np.ndarray

    def __post_init__(self):
        self.coeffs = np.asarray(self.coeffs, dtype=float)
        if self.coeffs.shape != (self.level,):
            raise ValueError(
                f"row at level {self.level} must have exactly {self.level} weights, "
                f"got shape {self.coeffs.shape}"
            )


def _check_level(mesh: Mesh, alpha: float, n: int):
    if not 0.0 < alpha < 1.0:
        raise ValueError(f"alpha must lie in (0, 1), got alpha={alpha!r}")
    if not 1 <= n <= mesh.count:
        raise ValueError(f"level n must lie in 1..{mesh.count}, got n={n!r}")


def l1_row(mesh: Mesh, alpha: float, n: int) -> KernelRow:
    """L1 weights at level n, from the closed-form step averages."""
    _check_level(mesh, alpha, n)
    t = mesh.nodes
    tn = t[n]
    g = gamma(2.0 - alpha)
    # k-order values for k = 1..n, then flip to age order
    vals = ((tn - t[:n]) ** (1.0 - alpha) - (tn - t[1 : n + 1]) ** (1.0 - alpha)) / (
        mesh.steps[:n] * g
    )
    return KernelRow(level=n, alpha=alpha, coeffs=vals[::-1].copy())


def l21sigma_parts(mesh: Mesh, alpha: float, sigma: float, n: int):
    """Step-average and first-moment pieces of the shifted quadratic row.

    Returns ``(a_part, b_part)`` in k-order: ``a_part[k-1]`` is the average of
    omega_{1-alpha}(t_{n-sigma} - s) over [t_{k-1}, min(t_k, t_{n-sigma})]
    divided by tau_k, and ``b_part[k-1]`` is the moment integral against
    (s - t_{k-1/2}) scaled by 2/(tau_k*(tau_k + tau_{k+1})).  The moment piece
    exists for k = 1..n-1 only; its last entry is zero by convention.
    """
    _check_level(mesh, alpha, n)
    if not 0.0 < sigma <= 1.0:
        raise ValueError(f"sigma must lie in (0, 1], got sigma={sigma!r}")
    t = mesh.nodes
    tau = mesh.steps
    c = t[n] - sigma * tau[n - 1]  # collocation point t_{n-sigma}

    upper = np.minimum(t[1 : n + 1], c)
    a_part = (omega(2.0 - alpha, c - t[:n]) - omega(2.0 - alpha, c - upper)) / tau[:n]

    b_part = np.zeros(n)
    if n > 1:
        k = np.arange(1, n)  # moment pieces stop one short of the diagonal
        lo = t[k - 1]
        hi = t[k]
        mid = 0.5 * (lo + hi)
        d2 = omega(2.0 - alpha, c - lo) - omega(2.0 - alpha, c - hi)
        d3 = omega(3.0 - alpha, c - lo) - omega(3.0 - alpha, c - hi)
        moment = (c - mid) * d2 - (1.0 - alpha) * d3
        b_part[: n - 1] = 2.0 * moment / (tau[k - 1] * (tau[k - 1] + tau[k]))
    return a_part, b_part


def l21sigma_row(mesh: Mesh, alpha: float, n: int, sigma: float | None = None) -> KernelRow:
    """Shifted quadratic-reconstruction weights at level n.

    ``sigma`` defaults to 1 - alpha/2.  The k-th weight combines the step
    average with the moment pieces of panels k and k-1, the older one entering
    through the adjacent step ratio tau_{k-1}/tau_k (zero for k = 1, where
    there is no older panel).  That ratio is what the quadratic reconstruction
    demands: the interpolant on panel k-1 couples the increment over panel k
    with weight tau_{k-1}/tau_k, and with it the row reproduces quadratics
    exactly at sigma = alpha/2 on any admissible mesh.
    """
    if sigma is None:
        sigma = 1.0 - 0.5 * alpha
    a_part, b_part = l21sigma_parts(mesh, alpha, sigma, n)
    tau = mesh.steps
    ratio = np.zeros(n)
    if n > 1:
        ratio[1:] = tau[: n - 1] / tau[1:n]
    older = np.concatenate(([0.0], b_part[: n - 1]))  # moment piece of panel k-1
    vals = a_part + ratio * older - b_part
    return KernelRow(level=n, alpha=alpha, coeffs=vals[::-1].copy())


def kernel_row(mesh: Mesh, alpha: float, n: int, scheme: Scheme) -> KernelRow:
    """Dispatch on the scheme tag."""
    if scheme.tag == "l1":
        return l1_row(mesh, alpha, n)
    return l21sigma_row(mesh, alpha, n, scheme.sigma)


def is_monotone(row: KernelRow) -> tuple[bool, int | None]:
    """Whether the weights decrease strictly with age.

    Returns ``(True, None)`` if a_0 > a_1 > ... > a_{n-1}, else ``(False, j)``
    with the smallest age index j at which the decrease fails.
    """
    c = row.coeffs
    bad = np.nonzero(np.diff(c) >= 0.0)[0]
    if bad.size:
        return False, int(bad[0]) + 1
    return True, None
