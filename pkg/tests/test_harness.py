import json

import numpy as np
import pytest

from fracstep import uniform_mesh
from fracstep.harness import (
    REFERENCE_TABLES,
    SweepConfig,
    _theoretical_order,
    config_from_dict,
    figure_data,
    report_csv,
    report_json,
    run_sweep,
    run_table,
    table_config,
)


def test_theoretical_orders():
    # (alpha, beta) = (0.6, 0.3): begin = 0.3*r, end caps at 1.4, critical
    # grading r = 2 gets the log marker
    assert _theoretical_order(0.6, 0.3, 1.0, "begin") == "0.300"
    assert _theoretical_order(0.6, 0.3, 2.0, "begin") == "0.600"
    assert _theoretical_order(0.6, 0.3, 2.5, "begin") == "0.750"
    assert _theoretical_order(0.6, 0.3, 1.0, "end") == "0.700"
    assert _theoretical_order(0.6, 0.3, 2.0, "end") == "1.400-"
    assert _theoretical_order(0.6, 0.3, 3.0, "end") == "1.400"
    assert _theoretical_order(0.6, 0.3, 1.0, "max") == "0.300"


def test_sweep_config_validation():
    with pytest.raises(ValueError, match="double"):
        SweepConfig(problem="ode", alpha=0.6, beta=0.3, kappa=1.0,
                    r_list=(1.0,), n_list=(8, 24))
    with pytest.raises(ValueError):
        SweepConfig(problem="dae", alpha=0.6, beta=0.3, kappa=1.0,
                    r_list=(1.0,), n_list=(8, 16))
    with pytest.raises(ValueError):
        SweepConfig(problem="ode", alpha=0.6, beta=0.3, kappa=1.0,
                    r_list=(), n_list=(8, 16))
    with pytest.raises(ValueError):
        SweepConfig(problem="ode", alpha=0.6, beta=0.3, kappa=1.0,
                    r_list=(1.0,), n_list=(8, 16), report_level="middle")


def test_reference_tables_structure():
    assert sorted(REFERENCE_TABLES) == [1, 2, 3, 4]
    for which, ref in REFERENCE_TABLES.items():
        assert ref.which == which
        n_r = len(ref.config.r_list)
        n_n = len(ref.config.n_list)
        assert len(ref.errors) == n_r and len(ref.orders) == n_r
        assert all(len(e) == n_n for e in ref.errors)
        assert all(len(o) == n_n - 1 for o in ref.orders)
        assert len(ref.theo) == n_r
    assert REFERENCE_TABLES[1].config.problem == "ode"
    assert REFERENCE_TABLES[3].config.problem == "pde"
    assert REFERENCE_TABLES[3].config.r_list == (1.0, 2.0, 2.5)
    assert REFERENCE_TABLES[2].config.r_list == (1.0, 2.0, 3.0)


def test_table_config_lookup():
    assert table_config(2).report_level == "end"
    with pytest.raises(ValueError):
        table_config(5)


def test_run_sweep_small_ode():
    config = SweepConfig(problem="ode", alpha=0.6, beta=0.3, kappa=1.0,
                         r_list=(1.0, 2.0), n_list=(16, 32, 64))
    report = run_sweep(config)
    assert len(report.rows) == 6
    assert report.rows[0].order is None
    for row in report.rows:
        assert row.error > 0
        if row.order is not None:
            assert np.isfinite(row.order) and row.order > 0
    assert report.theo == ("0.700", "1.400-")
    # rows are ordered r-major, N-minor
    assert [row.n for row in report.rows] == [16, 32, 64, 16, 32, 64]


def test_run_sweep_deterministic_output():
    config = SweepConfig(problem="pde", alpha=0.6, beta=0.3, kappa=1.0,
                         r_list=(2.0,), n_list=(8, 16), m_intervals=64)
    a = report_csv(run_sweep(config))
    b = report_csv(run_sweep(config))
    assert a == b
    assert a.startswith("r,N,error,order\n")
    assert a.endswith("\n")


def test_report_csv_formatting():
    config = SweepConfig(problem="ode", alpha=0.6, beta=0.3, kappa=1.0,
                         r_list=(1.0,), n_list=(8, 16))
    csv = report_csv(run_sweep(config))
    lines = csv.strip().split("\n")
    assert len(lines) == 3
    first = lines[1].split(",")
    assert first[0] == "1" and first[1] == "8"
    assert "e-" in first[2] or "e+" in first[2]
    assert first[3] == ""  # no order at the first N


def test_report_json_round_trip():
    config = SweepConfig(problem="ode", alpha=0.6, beta=0.3, kappa=1.0,
                         r_list=(1.0,), n_list=(8, 16))
    report = run_sweep(config)
    payload = json.loads(report_json(report))
    assert payload["config"]["alpha"] == 0.6
    assert len(payload["rows"]) == 2
    assert payload["theo"] == ["0.700"]
    assert report_json(report) == report_json(run_sweep(config))


def test_run_table_ode_end():
    result = run_table(2)
    assert result.passed, f"order gaps {result.order_gaps}"
    assert max(result.order_gaps) <= 0.05
    assert max(result.error_reldevs) < 0.05


def test_figure_data_columns():
    mesh = uniform_mesh(1.0, 32)
    data = figure_data(mesh, 0.2, 32)
    assert data.shape == (32, 4)
    assert np.array_equal(data[:, 0], np.arange(1, 33))
    assert np.allclose(data[:, 3], data[:, 1] / data[:, 2])
    # k column runs oldest (k=1) to newest (k=n): the k=n-1 entry carries the
    # age-1 ratio, which on a uniform mesh at alpha=0.2 is about 1.4889
    assert data[-2, 3] == pytest.approx(1.488933037942208, rel=1e-10)
    assert np.all(data[:, 1] > 0) and np.all(data[:, 2] > 0)


def test_config_from_dict():
    data = {"problem": "ode", "alpha": 0.6, "beta": 0.3, "kappa": 1.0,
            "r_list": [1.0], "n_list": [8, 16]}
    config = config_from_dict(data)
    assert config.t_final == 1.0 and config.report_level == "end"
    with pytest.raises(ValueError, match="unknown"):
        config_from_dict({**data, "gamma": 2.0})
    with pytest.raises(ValueError, match="missing"):
        config_from_dict({"problem": "ode"})
