"""Energy-inequality algebra: the matrix M(d) and its monotonicity criterion.

For a positive sequence d_1..d_n, let L be the all-ones lower-triangular
matrix and D = diag(d).  Then M(d) = L D + D L^T - D has entries
M_ij = d_min(i,j), and two exact facts drive the discrete energy argument:

* det M(d) = prod_k (d_k - d_{k-1}) with d_0 = 0, so
* M(d) is positive definite exactly when d is strictly increasing.

Applied with d_j = a^{(n)}_{n-j} (the kernel row read oldest first), positive
definiteness of M is the statement that testing the discrete derivative
against u^n dominates half the discrete derivative of ||u||^2, which is the
inequality the stability analysis runs on.  ``energy_residual`` evaluates
that gap both as the quadratic form and directly from the inner products.
"""

from __future__ import annotations

import numpy as np

from .kernels import KernelRow

__all__ = [
    "build_m",
    "det_identity_check",
    "positivity_iff_monotone",
    "energy_residual",
]

_TIE_TOL = 1e-12


def _check_d(d) -> np.ndarray:
    d = np.asarray(d, dtype=float)
    if d.ndim != 1 or d.size < 1:
        raise ValueError(f"need a 1-D sequence with at least one entry, got shape {d.shape}")
    if np.any(d <= 0.0):
        bad = int(np.nonzero(d <= 0.0)[0][0])
        raise ValueError(f"entries must be positive; d[{bad}] = {d[bad]!r}")
    return d


def build_m(d) -> np.ndarray:
    """Symmetric matrix with entries d_min(i,j)."""
    d = _check_d(d)
    idx = np.arange(d.size)
    return d[np.minimum.outer(idx, idx)]


def _lu_det(m: np.ndarray) -> np.longdouble:
    """Determinant by partially pivoted LU, accumulated in longdouble.

    Element growth on these index-min matrices eats up to six digits when d
    spans several decades, which is exactly the regime the identity check
    runs in, and LAPACK's double-precision determinant then lands right at
    the 1e-10 residual target.  Eliminating in 80-bit arithmetic (plain
    double on platforms whose longdouble is no wider) buys the headroom back.
    """
    a = m.astype(np.longdouble, copy=True)
    n = a.shape[0]
    det = np.longdouble(1.0)
    for k in range(n):
        piv = k + int(np.argmax(np.abs(a[k:, k])))
        if piv != k:
            a[[k, piv]] = a[[piv, k]]
            det = -det
        pivot = a[k, k]
        if pivot == 0.0:
            return np.longdouble(0.0)
        det *= pivot
        if k + 1 < n:
            a[k + 1 :, k + 1 :] -= np.outer(a[k + 1 :, k] / pivot, a[k, k + 1 :])
    return det


def det_identity_check(d) -> float:
    """|det M(d) - prod(d_k - d_{k-1})| / max(1, |prod|), LU determinant."""
    d = _check_d(d)
    det = _lu_det(build_m(d))
    gaps = np.diff(np.concatenate(([0.0], d))).astype(np.longdouble)
    prod = np.prod(gaps)
    return float(abs(det - prod) / max(np.longdouble(1.0), abs(prod)))


def positivity_iff_monotone(d) -> tuple[bool, bool]:
    """(is positive definite, is strictly increasing), decided independently.

    Definiteness comes from an unpivoted symmetric factorization with pivot
    tolerance 1e-12 * max|M|; monotonicity from a direct scan with the same
    relative tie tolerance (ties count as non-increasing, matching the
    determinant identity which then vanishes numerically).
    """
    d = _check_d(d)
    m = build_m(d).copy()
    n = d.size
    pivot_tol = _TIE_TOL * float(np.max(np.abs(m)))
    is_pd = True
    for k in range(n):
        if m[k, k] <= pivot_tol:
            is_pd = False
            break
        row = m[k, k + 1 :] / m[k, k]
        m[k + 1 :, k + 1 :] -= np.outer(m[k + 1 :, k], row)

    gaps = np.diff(np.concatenate(([0.0], d)))
    is_increasing = bool(np.all(gaps > _TIE_TOL * float(np.max(d))))
    return is_pd, is_increasing


def energy_residual(row: KernelRow, v) -> tuple[float, float]:
    """Gap between (D_tau^alpha u^n, u^n) and half the discrete derivative of
    ||u||^2, for the history u accumulated from increments v.

    Returns ``(quad_form, direct)``: the quadratic form (1/2) v^T M(a_seq) v
    with a_seq the kernel row oldest-first, and the same gap assembled from
    the definitions.  The two agree to rounding; the quadratic form is what
    the monotonicity criterion certifies nonnegative.
    """
    v = np.asarray(v, dtype=float)
    n = row.level
    if v.shape != (n,):
        raise ValueError(f"increment vector must have shape ({n},), got {v.shape}")
    a_seq = row.coeffs[::-1]  # a_seq[j-1] = a^{(n)}_{n-j}, increasing iff row monotone

    m = build_m(a_seq)
    quad_form = 0.5 * float(v @ m @ v)

    u = np.concatenate(([0.0], np.cumsum(v)))  # u^0 = 0
    d_alpha = float(a_seq @ v)
    half_norm_drv = 0.5 * float(a_seq @ (u[1:] ** 2 - u[:-1] ** 2))
    direct = d_alpha * u[-1] - half_norm_drv
    return quad_form, direct
