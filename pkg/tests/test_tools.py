import math

import pytest

from bergman_geometry.core import ExperimentConfig
from bergman_geometry.tools import (
    check_grassmann,
    compute_representative_coordinates,
    estimate_distance,
    evaluate_kernel,
    evaluate_metric,
    locate_zeros,
    reproduce_table,
)
from bergman_geometry.tools.grassmann_tool import CAUCHY_BINET_TOL, INVERSE_TOL, PULLBACK_TOL


@pytest.mark.slow
def test_grassmann_batch():
    result = check_grassmann(100, seed=0)
    assert result["success"] and not result["partial"]
    assert result["worst"]["inverse_identity"] <= INVERSE_TOL
    assert result["worst"]["cauchy_binet"] <= CAUCHY_BINET_TOL
    assert result["worst"]["fs_pullback"] <= PULLBACK_TOL


def test_kernel_tool_annulus():
    result = evaluate_kernel("annulus", ["0.5,0"], ["-0.3,0.4"], r=0.2, orders=(2, 1))
    assert result["success"]
    assert len(result["jet_tables"][0]) == 3 and len(result["jet_tables"][0][0]) == 2
    assert result["tail_bound"] <= 1e-14
    assert 0.0 < result["skwarczynski_bound"] <= math.pi / 2


def test_kernel_tool_coordinate_count():
    result = evaluate_kernel("product", ["0.5,0"], ["0.5,0"], factors="disk,disk")
    assert not result["success"]
    assert result["error_type"] == "ValueError"
    assert "suggestion" not in result


def test_metric_tool_reports_domain_errors():
    result = evaluate_metric("annulus", ["0.1,0"], r=0.2)
    assert not result["success"]
    assert result["error_type"] == "NotInDomain"
    assert result["suggestion"]
    assert result["domain"] == "annulus"


def test_distance_tool_tilde():
    result = estimate_distance("annulus", ["0.5,0"], ["0,0.5"], r=0.2, metric="tilde", nodes=12)
    assert result["success"]
    assert result["lower"] <= result["upper"] <= result["seed_upper"]


def test_repcoord_tool_at_kernel_zero():
    result = compute_representative_coordinates("disk", ["0,0"], ["0.3,0.2"])
    assert result["success"]
    assert result["jac_det"][0] > 0.0


def test_locate_zeros_on_thin_annulus():
    result = locate_zeros(1e-12, epsilon=0.3)
    assert result["success"] and not result["partial"]
    assert result["kernel_zero"]["s"] == pytest.approx(0.96346, abs=1e-4)
    roots = result["defect_roots"]["roots"]
    assert len(roots) == 1
    assert roots[0][1] < 0.0
    assert roots[0] == pytest.approx(result["defect_roots"]["limit"], abs=1e-7)


def test_reproduce_tool_unknown_sweep(tmp_path):
    result = reproduce_table("thm6", ExperimentConfig(), str(tmp_path / "x.csv"))
    assert not result["success"]
    assert "thm6" in result["error"]


def test_locate_zeros_reports_empty_root_square():
    result = locate_zeros(1e-12, epsilon=0.05)
    assert result["success"] and result["partial"]
    assert "error" not in result["kernel_zero"]
    block = result["defect_roots"]
    assert block["roots"] == []
    assert "note" in block
    assert abs(complex(*block["limit"]) - 1.0) > 0.05
