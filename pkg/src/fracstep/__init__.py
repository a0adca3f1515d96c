"""Nonuniform-mesh time stepping for Caputo fractional problems.

The package is organized around one identity: the implicit stepping operator
built from discrete-convolution kernel rows has a complementary triangular
inverse whose weights are dominated by an explicit integral surrogate.  That
comparison yields a fractional Gronwall bound, which in turn yields pointwise
error estimates on graded meshes; the harness reproduces the associated
convergence studies end to end.
"""

from .exceptions import (
    DegenerateKernelError,
    PrecisionError,
    SingularityError,
    StepSizeError,
)
from .meshes import (
    Mesh,
    MeshStats,
    critical_exponent,
    custom_mesh,
    graded_mesh,
    mesh_stats,
    sin_mesh,
    uniform_mesh,
)
from .special import MittagLefflerParams, gamma, mittag_leffler, omega
from .kernels import KernelRow, Scheme, is_monotone, kernel_row, l1_row, l21sigma_row
from .dcc import (
    CrtBound,
    DccKernels,
    crt_constant,
    dcc_bound_check,
    dcc_row,
    kernel_triangle,
    surrogate_row,
    verify_matrix_identity,
)
from .gronwall import GronwallInput, equality_sequence, gronwall_bound
from .solver import (
    OdeProblem,
    PdeProblem,
    Trajectory,
    solve_ode,
    solve_pde,
    truncation_bound,
)
from .analysis import (
    DcsCase,
    DcsReport,
    dcs_bound,
    dcs_sum,
    doubling_scan,
    observed_order,
)
from .quadform import (
    build_m,
    det_identity_check,
    energy_residual,
    positivity_iff_monotone,
)
from .harness import (
    REFERENCE_TABLES,
    ConvergenceReport,
    SweepConfig,
    TableResult,
    figure_data,
    run_sweep,
    run_table,
    table_config,
)

__version__ = "0.1.0"

__all__ = [
    "SingularityError", "DegenerateKernelError", "PrecisionError", "StepSizeError",
    "Mesh", "MeshStats", "graded_mesh", "uniform_mesh", "sin_mesh", "custom_mesh",
    "mesh_stats", "critical_exponent",
    "gamma", "omega", "mittag_leffler", "MittagLefflerParams",
    "Scheme", "KernelRow", "l1_row", "l21sigma_row", "kernel_row", "is_monotone",
    "DccKernels", "CrtBound", "kernel_triangle", "surrogate_row", "dcc_row",
    "verify_matrix_identity", "dcc_bound_check", "crt_constant",
    "GronwallInput", "gronwall_bound", "equality_sequence",
    "OdeProblem", "PdeProblem", "Trajectory", "solve_ode", "solve_pde",
    "truncation_bound",
    "DcsCase", "DcsReport", "dcs_sum", "dcs_bound", "doubling_scan", "observed_order",
    "build_m", "det_identity_check", "positivity_iff_monotone", "energy_residual",
    "SweepConfig", "ConvergenceReport", "TableResult", "REFERENCE_TABLES",
    "run_sweep", "run_table", "table_config", "figure_data",
    "__version__",
]
