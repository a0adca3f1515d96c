import numpy as np
import pytest

from fracstep import (
    OdeProblem,
    PdeProblem,
    StepSizeError,
    Trajectory,
    gamma,
    graded_mesh,
    omega,
    solve_ode,
    solve_pde,
    truncation_bound,
    uniform_mesh,
)


def test_order_validation():
    mesh = uniform_mesh(1.0, 4)
    OdeProblem(0.5, 0.3, 1.0, mesh)
    OdeProblem(0.5, 2.0, 1.0, mesh)
    for bad_beta in (0.0, 1.0, 2.5):
        with pytest.raises(ValueError):
            OdeProblem(0.5, bad_beta, 1.0, mesh)
    with pytest.raises(ValueError):
        OdeProblem(1.0, 0.3, 1.0, mesh)
    with pytest.raises(ValueError):
        PdeProblem(0.5, 0.3, 1.0, mesh, m_intervals=1)


def test_manufactured_data():
    mesh = uniform_mesh(1.0, 4)
    prob = OdeProblem(0.6, 0.3, 1.0, mesh)
    t = 0.7
    assert prob.exact(t) == pytest.approx(t ** 0.3 / gamma(1.3), rel=1e-14)
    # source = D^alpha exact - kappa * exact, with D^alpha omega_{1+b} = omega_{1+b-a}
    assert prob.source(t) == pytest.approx(
        omega(0.7, t) - omega(1.3, t), rel=1e-13
    )
    pde = PdeProblem(0.6, 0.3, 1.0, mesh, m_intervals=8)
    assert pde.h == pytest.approx(2 * np.pi / 8)
    assert pde.x_interior.shape == (7,)
    x = pde.x_interior
    # kappa = 1 cancels the reaction term in the source
    assert np.allclose(pde.source(x, t), np.sin(x) * omega(0.7, t))


def test_ode_error_profile():
    mesh = graded_mesh(1.0, 64, 2.0)
    traj = solve_ode(OdeProblem(0.6, 0.3, 1.0, mesh))
    assert traj.errors[0] == 0.0
    assert np.all(traj.errors[1:] > 0)
    assert traj.values.shape == (65,)
    # end error is what the bundled r=2, N=64 study cell froze, and it is the
    # gap between the final value and omega_{1.3}(1) = 1/Gamma(1.3)
    assert traj.errors[-1] == pytest.approx(2.831e-2, rel=5e-3)
    assert abs(traj.values[-1] - 1.0 / gamma(1.3)) == pytest.approx(traj.errors[-1], rel=1e-12)


def test_ode_convergence_order_end_level():
    errs = {}
    for n in (64, 128, 256):
        mesh = graded_mesh(1.0, n, 2.0)
        errs[n] = solve_ode(OdeProblem(0.6, 0.3, 1.0, mesh)).errors[-1]
    order = np.log2(errs[64] / errs[128])
    # critical grading: approaching 1.4 from below (printed sequence
    # 1.235/1.254/1.269 on the bundled ladder)
    assert 1.15 < order < 1.45
    assert errs[256] < errs[128] < errs[64]


def test_ode_first_level_order():
    # begin-region order r*beta = 0.6 at the critical grading
    errs = {}
    for n in (128, 256):
        mesh = graded_mesh(1.0, n, 2.0)
        errs[n] = solve_ode(OdeProblem(0.6, 0.3, 1.0, mesh)).errors[1]
    order = np.log2(errs[128] / errs[256])
    assert 0.55 < order < 0.65


def test_ode_step_size_guard():
    mesh = uniform_mesh(1.0, 2)
    with pytest.raises(StepSizeError) as exc:
        solve_ode(OdeProblem(0.5, 0.3, 2.0, mesh))
    assert exc.value.level == 1


def test_pde_error_profile_and_convergence():
    errs = {}
    for n in (16, 32, 64):
        mesh = graded_mesh(1.0, n, 2.0)
        traj = solve_pde(PdeProblem(0.6, 0.3, 1.0, mesh, m_intervals=128))
        assert traj.errors[0] == 0.0
        assert traj.values.shape == (n + 1, 127)
        errs[n] = traj.errors[-1]
    assert errs[64] < errs[32] < errs[16]
    order = np.log2(errs[32] / errs[64])
    assert 1.0 < order < 1.5


def test_pde_degenerate_diagonal():
    mesh = uniform_mesh(1.0, 2)
    prob = PdeProblem(0.5, 0.3, 1e9, mesh, m_intervals=8)
    with pytest.raises(np.linalg.LinAlgError):
        solve_pde(prob)


def test_trajectory_validation():
    with pytest.raises(ValueError):
        Trajectory(values=np.zeros(3), errors=np.zeros(2))


def test_truncation_bound_quadratic_case():
    # beta = 2: u'' is constant, G^k = tau_k^2 exactly, so the bound equals
    # a_0 tau_n^2 + sum (a_{n-k-1} - a_{n-k}) tau_k^2
    mesh = graded_mesh(1.0, 12, 1.7)
    prob = OdeProblem(0.4, 2.0, 1.0, mesh)
    n = 9
    from fracstep import l1_row

    coeffs = l1_row(mesh, 0.4, n).coeffs
    a_rev = coeffs[::-1]
    tau = mesh.steps
    expected = coeffs[0] * tau[n - 1] ** 2 + float(
        np.sum((a_rev[1:n] - a_rev[: n - 1]) * tau[: n - 1] ** 2)
    )
    assert truncation_bound(prob, n) == pytest.approx(expected, rel=1e-13)


def test_truncation_bound_singular_panel():
    # beta < 1 makes u'' nonintegrable at 0 in the naive sense, but the
    # (t - t_{k-1}) moment keeps every panel finite, including the first
    mesh = graded_mesh(1.0, 16, 2.0)
    prob = OdeProblem(0.6, 0.3, 1.0, mesh)
    vals = [truncation_bound(prob, n) for n in (1, 2, 8, 16)]
    assert all(np.isfinite(v) and v > 0 for v in vals)


def test_truncation_bound_shrinks_with_refinement():
    prob_coarse = OdeProblem(0.6, 0.3, 1.0, graded_mesh(1.0, 32, 2.0))
    prob_fine = OdeProblem(0.6, 0.3, 1.0, graded_mesh(1.0, 64, 2.0))
    assert truncation_bound(prob_fine, 64) < truncation_bound(prob_coarse, 32)


def test_truncation_bound_level_validation():
    prob = OdeProblem(0.6, 0.3, 1.0, uniform_mesh(1.0, 4))
    with pytest.raises(ValueError):
        truncation_bound(prob, 0)
    with pytest.raises(ValueError):
        truncation_bound(prob, 5)
