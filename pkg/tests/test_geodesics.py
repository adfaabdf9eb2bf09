import math

import numpy as np
import pytest

from bergman_geometry.core import (
    CircularArc,
    DistanceOptions,
    DomainSpec,
    LinearSegment,
    ParamPath,
    comparison_path_thm4,
    comparison_path_thm5,
    distance,
    gamma1_length_limit,
    kernel_zero_bisection,
    path_length,
    segment_lengths,
    skwarczynski_bound,
)

FAST = DistanceOptions(nodes=24)


def test_same_point_is_zero(annulus):
    result = distance(annulus, 0.5j, 0.5j)
    assert result.lower == 0.0 and result.upper == 0.0


def test_disk_distance(disk):
    result = distance(disk, 0.0, 0.5, options=FAST)
    exact = math.sqrt(2.0) * math.atanh(0.5)
    assert result.lower == pytest.approx(math.acos(0.75), rel=1e-12)
    assert result.upper == pytest.approx(exact, abs=1e-3)
    assert result.lower <= exact <= result.upper + 1e-9
    assert result.upper <= result.seed_upper


def test_distance_is_symmetric(annulus):
    z, w = 0.5 + 0.1j, -0.2 + 0.45j
    forward = distance(annulus, z, w, options=FAST)
    backward = distance(annulus, w, z, options=FAST)
    assert forward.upper == backward.upper
    assert forward.lower == backward.lower
    np.testing.assert_allclose(forward.path.start, [z], atol=1e-12)
    np.testing.assert_allclose(backward.path.start, [w], atol=1e-12)


def test_distance_rejects_unknown_metric(annulus):
    with pytest.raises(ValueError):
        distance(annulus, 0.5, 0.6, "kahler")


def test_options_need_nodes():
    with pytest.raises(ValueError):
        DistanceOptions(nodes=2)


def test_extra_seed_must_join(annulus):
    stray = ParamPath.of(LinearSegment(0.3, 0.4))
    with pytest.raises(ValueError):
        distance(annulus, 0.5, 0.6j, options=DistanceOptions(nodes=8, extra_seeds=(stray,)))


@pytest.mark.slow
def test_sandwich_on_annulus(annulus, annulus_points):
    starts = annulus_points(0.2, 100, low=0.3, high=0.9)
    ends = annulus_points(0.2, 100, low=0.3, high=0.9)
    for z, w in zip(starts, ends):
        result = distance(annulus, z, w, options=FAST)
        assert result.lower <= result.upper + 1e-9
        assert result.upper <= result.seed_upper


@pytest.mark.slow
def test_tilde_sandwich_on_annulus(annulus, annulus_points):
    starts = annulus_points(0.2, 100, low=0.3, high=0.9)
    ends = annulus_points(0.2, 100, low=0.3, high=0.9)
    for z, w in zip(starts, ends):
        result = distance(annulus, z, w, "tilde", options=FAST)
        assert result.lower <= result.upper + 1e-9


@pytest.mark.slow
def test_symmetry_on_random_pairs(annulus, annulus_points):
    starts = annulus_points(0.2, 20, low=0.3, high=0.9)
    ends = annulus_points(0.2, 20, low=0.3, high=0.9)
    for z, w in zip(starts, ends):
        forward = distance(annulus, z, w, options=FAST)
        backward = distance(annulus, w, z, options=FAST)
        assert abs(forward.upper - backward.upper) <= 1e-6
        assert abs(forward.lower - backward.lower) <= 1e-6


@pytest.mark.slow
def test_triangle_inequality_on_upper_bounds(annulus, annulus_points):
    a_pts = annulus_points(0.2, 50, low=0.3, high=0.9)
    b_pts = annulus_points(0.2, 50, low=0.3, high=0.9)
    c_pts = annulus_points(0.2, 50, low=0.3, high=0.9)
    for a, b, c in zip(a_pts, b_pts, c_pts):
        ab = distance(annulus, a, b, options=FAST).upper
        bc = distance(annulus, b, c, options=FAST).upper
        ac = distance(annulus, a, c, options=FAST).upper
        assert ac <= ab + bc + 5e-3


@pytest.mark.slow
def test_doubling_nodes_never_lengthens(annulus, annulus_points):
    starts = annulus_points(0.2, 5, low=0.3, high=0.9)
    ends = annulus_points(0.2, 5, low=0.3, high=0.9)
    for z, w in zip(starts, ends):
        coarse = distance(annulus, z, w, options=DistanceOptions(nodes=16)).upper
        fine = distance(annulus, z, w, options=DistanceOptions(nodes=32)).upper
        assert fine <= coarse + 1e-9


def test_restart_seed_is_reproducible(annulus):
    plain = distance(annulus, 0.5, -0.4 + 0.5j, options=FAST)
    options = DistanceOptions(nodes=24, restart_seed=7)
    first = distance(annulus, 0.5, -0.4 + 0.5j, options=options)
    second = distance(annulus, 0.5, -0.4 + 0.5j, options=options)
    assert first.upper == second.upper
    assert first.upper <= plain.upper
    assert first.iterations >= plain.iterations


@pytest.mark.slow
def test_optimizer_straightens_a_detour(disk):
    detour = ParamPath.of(LinearSegment(0.0, 0.3j), LinearSegment(0.3j, 0.5))
    result = distance(disk, 0.0, 0.5, options=DistanceOptions(nodes=24, extra_seeds=(detour,)))
    assert result.upper < path_length(disk, detour)
    assert result.upper == pytest.approx(math.sqrt(2.0) * math.atanh(0.5), abs=1e-3)


def test_thm4_path_structure():
    r = 1e-8
    domain = DomainSpec.annulus(r)
    rho = 1.0 / math.sqrt(abs(domain.log_r2))
    path = comparison_path_thm4(r, 0.95)
    assert len(path.segments) == 2
    np.testing.assert_allclose(path.start, [-rho / 0.95], rtol=1e-15)
    np.testing.assert_allclose(path.end, [rho], rtol=1e-15)
    arc = path.segments[1]
    assert isinstance(arc, CircularArc) and arc.radius == pytest.approx(rho)


def test_thm4_path_degenerate_first_segment():
    r = 1e-12
    domain = DomainSpec.annulus(r)
    first, second = segment_lengths(domain, comparison_path_thm4(r, 1.0))
    assert first == 0.0
    assert second > math.pi / 2


def test_thm4_first_segment_is_short():
    r = 1e-12
    domain = DomainSpec.annulus(r)
    first, second = segment_lengths(domain, comparison_path_thm4(r, 1.05))
    assert first <= 0.1
    assert first + second - math.pi / 2 <= 0.2


def test_thm5_path_structure():
    r = 1e-8
    domain = DomainSpec.annulus(r)
    rho = (2.0 * abs(domain.log_r2)) ** -0.25
    xi = 1.0 - 0.1j
    path = comparison_path_thm5(r, xi)
    np.testing.assert_allclose(path.start, [1j * rho / xi], rtol=1e-15)
    np.testing.assert_allclose(path.end, [rho], atol=1e-15)
    first, second = segment_lengths(domain, path, "tilde")
    assert first > 0.0 and second > 0.0


def test_gamma1_limit():
    assert gamma1_length_limit(1.0) == 0.0
    assert gamma1_length_limit(0.9) == pytest.approx(math.pi / 4 - math.atan(0.9), rel=1e-12)


def test_lower_bound_is_half_pi_at_a_kernel_zero():
    r = 1e-12
    domain = DomainSpec.annulus(r)
    report = kernel_zero_bisection(r)
    z0 = 1.0 / math.sqrt(abs(domain.log_r2))
    assert skwarczynski_bound(domain, z0, report.location) == pytest.approx(math.pi / 2, abs=1e-10)
