import math

import numpy as np
import pytest

from bergman_geometry.core import (
    MatrixSample,
    TooLarge,
    cauchy_binet_check,
    fs_pullback_fd_check,
    grassmann_inverse_identity,
    plucker_distance,
    random_sample,
)


def test_matrix_sample_guards():
    with pytest.raises(ValueError):
        MatrixSample(np.zeros(3))
    with pytest.raises(ValueError):
        MatrixSample(np.zeros((3, 2)))
    with pytest.raises(ValueError):
        MatrixSample(np.full((1, 2), 11.0))
    with pytest.raises(TooLarge):
        MatrixSample(np.zeros((2, 13)))


def test_random_sample_is_reproducible():
    first = random_sample(3, 7, 1)
    second = random_sample(3, 7, 1)
    np.testing.assert_array_equal(first.Z, second.Z)
    assert first.shape == (3, 7)
    assert first.seed == 1


def test_inverse_identity():
    assert grassmann_inverse_identity(np.zeros((2, 4))) == 0.0
    assert grassmann_inverse_identity(random_sample(3, 7, 1)) <= 1e-12
    stressed = np.zeros((2, 3), dtype=complex)
    stressed[0, 0] = 10.0
    stressed[1, 2] = 0.5j
    assert grassmann_inverse_identity(stressed) <= 1e-10


def test_cauchy_binet():
    det_side, minor_side, residual = cauchy_binet_check(np.zeros((2, 3)))
    assert det_side == pytest.approx(1.0) and minor_side == pytest.approx(1.0)
    assert residual == pytest.approx(0.0, abs=1e-15)

    a = 0.6 - 0.8j
    det_side, minor_side, _ = cauchy_binet_check(np.array([[a]]))
    assert det_side == pytest.approx(1.0 + abs(a) ** 2, rel=1e-14)
    assert minor_side == pytest.approx(1.0 + abs(a) ** 2, rel=1e-14)

    assert cauchy_binet_check(random_sample(3, 6, 2))[2] <= 1e-10


def test_cauchy_binet_size_cap():
    with pytest.raises(TooLarge):
        cauchy_binet_check(random_sample(5, 6, 0))
    with pytest.raises(TooLarge):
        cauchy_binet_check(random_sample(2, 10, 0))


def test_pullback_at_origin():
    e = np.zeros((2, 3), dtype=complex)
    e[1, 2] = 1.0
    assert fs_pullback_fd_check(np.zeros((2, 3)), e, e) <= 1e-6


def test_pullback_random_directions():
    sample = random_sample(2, 5, 3)
    rng = np.random.default_rng(3)
    e = rng.standard_normal((2, 5)) + 1j * rng.standard_normal((2, 5))
    f = rng.standard_normal((2, 5)) + 1j * rng.standard_normal((2, 5))
    assert fs_pullback_fd_check(sample, e, f, h=1e-4) <= 1e-5
    # the mismatch is normalised, so scaling a direction leaves it small
    assert fs_pullback_fd_check(sample, 2.0 * e, f, h=1e-4) <= 1e-5


def test_pullback_step_range():
    z = np.zeros((1, 2))
    with pytest.raises(ValueError):
        fs_pullback_fd_check(z, z, z, h=1e-2)
    with pytest.raises(ValueError):
        fs_pullback_fd_check(z, np.zeros((1, 3)), z)


def test_plucker_distance_routes_agree():
    a = random_sample(2, 4, 5)
    b = random_sample(2, 4, 6)
    angle_minors, angle_det, cos_gap = plucker_distance(a, b)
    assert cos_gap <= 1e-12
    assert angle_minors == pytest.approx(angle_det, abs=1e-10)
    assert 0.0 < angle_det <= math.pi / 2


def test_plucker_distance_line():
    a = 0.75
    angle, _, _ = plucker_distance(np.zeros((1, 1)), np.array([[a]]))
    assert angle == pytest.approx(math.acos(1.0 / math.sqrt(1.0 + a * a)), rel=1e-12)
    with pytest.raises(ValueError):
        plucker_distance(np.zeros((1, 2)), np.zeros((1, 3)))
