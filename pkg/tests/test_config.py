import pytest

from bergman_geometry.infra import (
    BERGMAN_NODES,
    DEFAULT_R_GRID,
    DOMAIN_KIND_MAPPING,
    load_config_file,
)


def test_defaults():
    assert DEFAULT_R_GRID == (1e-4, 1e-6, 1e-8, 1e-10, 1e-12)
    assert isinstance(BERGMAN_NODES, int) and BERGMAN_NODES >= 3
    assert DOMAIN_KIND_MAPPING["unit_disk"] == "disk"


def test_load_config_file(tmp_path):
    path = tmp_path / "run.env"
    path.write_text(
        "BERGMAN_R_GRID=1e-8,1e-10\n"
        "epsilon=0.04\n"
        "FORMAT=JSON\n"
        "PLOT=yes\n"
        "TOL_ABS=1e-13\n"
        "WORKERS=2\n"
        "OPTIMIZE=false\n"
    )
    settings = load_config_file(str(path))
    assert settings == {
        "r_grid": (1e-8, 1e-10),
        "epsilon": 0.04,
        "output_format": "json",
        "plot": True,
        "tol_abs": 1e-13,
        "workers": 2,
        "optimize": False,
    }


def test_unknown_key(tmp_path):
    path = tmp_path / "run.env"
    path.write_text("EPSILION=0.04\n")
    with pytest.raises(ValueError, match="EPSILION"):
        load_config_file(str(path))


def test_bad_value(tmp_path):
    path = tmp_path / "run.env"
    path.write_text("NODES=many\n")
    with pytest.raises(ValueError, match="NODES"):
        load_config_file(str(path))


def test_missing_file(tmp_path):
    with pytest.raises(FileNotFoundError):
        load_config_file(str(tmp_path / "absent.env"))
