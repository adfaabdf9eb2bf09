import json

import pandas as pd
import pytest

from bergman_geometry.core import ExperimentRow, IoFailure
from bergman_geometry.infra import emit_report, rows_to_frame


@pytest.fixture
def rows():
    radii = (1e-4, 1e-6, 1e-8, 1e-10, 1e-12)
    excess = (0.4, 0.3, 0.2, 0.15, 0.123456789012345)
    return [
        ExperimentRow("thm4", r, lower_bound=1.5707963267948966, excess=e, smallness_ok=False, wall_time=0.5)
        for r, e in zip(radii, excess)
    ]


def test_frame_drops_timing(rows):
    assert "wall_time" not in rows_to_frame(rows).columns
    assert "wall_time" in rows_to_frame(rows, include_timing=True).columns
    assert list(rows_to_frame(rows).columns[:3]) == ["theorem", "r", "z0"]


def test_csv_report(rows, tmp_path):
    path = str(tmp_path / "thm4.csv")
    assert emit_report(rows, "csv", path) == [path]
    lines = open(path).read().splitlines()
    assert len(lines) == 6
    frame = pd.read_csv(path)
    assert frame["r"].tolist() == [1e-4, 1e-6, 1e-8, 1e-10, 1e-12]
    assert frame["excess"].iloc[-1] == 0.123456789012345
    assert frame["lower_bound"].iloc[0] == pytest.approx(1.5707963267948966, rel=1e-14)


def test_json_report(rows, tmp_path):
    path = str(tmp_path / "out" / "thm4.json")
    emit_report(rows, "json", path, include_timing=True)
    with open(path) as handle:
        records = json.load(handle)
    assert len(records) == 5
    assert records[0]["theorem"] == "thm4"
    assert records[0]["wall_time"] == 0.5
    assert records[0]["z0"] is None


def test_report_bytes_are_deterministic(rows, tmp_path):
    first = tmp_path / "a.csv"
    second = tmp_path / "b.csv"
    written_first = emit_report(rows, "csv", str(first), plot=True)
    written_second = emit_report(rows, "csv", str(second), plot=True)
    assert first.read_bytes() == second.read_bytes()
    assert written_first[1].endswith("a.svg")
    assert open(written_first[1], "rb").read() == open(written_second[1], "rb").read()


def test_plot_needs_successful_rows(rows, tmp_path):
    for row in rows:
        row.status = "failed"
    with pytest.raises(ValueError):
        emit_report(rows, "csv", str(tmp_path / "thm4.csv"), plot=True)


def test_bad_arguments(rows, tmp_path):
    with pytest.raises(ValueError):
        emit_report([], "csv", str(tmp_path / "empty.csv"))
    with pytest.raises(ValueError):
        emit_report(rows, "xlsx", str(tmp_path / "thm4.xlsx"))


def test_unwritable_path(rows, tmp_path):
    blocker = tmp_path / "blocker"
    blocker.write_text("not a directory")
    with pytest.raises(IoFailure):
        emit_report(rows, "csv", str(blocker / "thm4.csv"))
