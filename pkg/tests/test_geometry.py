import math

import numpy as np
import pytest

from bergman_geometry.core import (
    DomainSpec,
    NotInDomain,
    SamplingBox,
    bergman_metric,
    bergman_profile,
    curvature_profile,
    eval_kernel_jet,
    guaranteed_radii,
    metric_weights,
    ricci_ratio_min,
    ricci_tensor,
    skwarczynski_bound,
    tilde_bound,
    tilde_from_jets,
    tilde_metric,
    tilde_profile_direct,
    vector_length,
)


def test_disk_metric_and_curvature(disk):
    z = 0.3 - 0.4j
    x = abs(z) ** 2
    sample = ricci_tensor(disk, z)
    assert sample.T[0, 0].real == pytest.approx(2.0 / (1.0 - x) ** 2, rel=1e-13)
    assert sample.Ric[0, 0].real == pytest.approx(-sample.T[0, 0].real, rel=1e-12)
    assert sample.Ttilde[0, 0].real == pytest.approx(3.0 * sample.T[0, 0].real, rel=1e-12)
    assert sample.g == pytest.approx(sample.T[0, 0].real, rel=1e-13)


def test_disk_tilde_routes(disk):
    jet = eval_kernel_jet(disk, 0.0, 0.0, (2, 2))
    assert tilde_from_jets(jet) == pytest.approx(6.0, rel=1e-13)
    x = np.array([0.0, 0.25, 0.5])
    np.testing.assert_allclose(tilde_profile_direct(disk, x), 6.0 / (1.0 - x) ** 2, rtol=1e-12)


def test_annulus_tilde_routes_agree(annulus, annulus_points):
    for z in annulus_points(0.2, 8, high=0.9):
        assembled = tilde_metric(annulus, z).Ttilde[0, 0].real
        direct = tilde_from_jets(eval_kernel_jet(annulus, z, z, (2, 2)))
        radial = tilde_profile_direct(annulus, np.array([abs(z) ** 2]))[0]
        assert direct == pytest.approx(assembled, rel=1e-7)
        assert radial == pytest.approx(assembled, rel=1e-7)


def test_metric_is_rotation_invariant(annulus):
    z = 0.45 + 0.1j
    rotated = z * np.exp(1.3j)
    assert bergman_metric(annulus, rotated).g == pytest.approx(bergman_metric(annulus, z).g, rel=1e-12)
    assert ricci_tensor(annulus, rotated).Ric[0, 0].real == pytest.approx(
        ricci_tensor(annulus, z).Ric[0, 0].real, rel=1e-12
    )


def test_metric_weights_match_pointwise(annulus, annulus_points):
    points = annulus_points(0.2, 6)
    weights, _ = metric_weights(annulus, points[:, None])
    for z, w in zip(points, weights[:, 0]):
        assert w == pytest.approx(bergman_metric(annulus, z).T[0, 0].real, rel=1e-10)
    tilde, _ = metric_weights(annulus, points[:, None], "tilde")
    for z, w in zip(points, tilde[:, 0]):
        assert w == pytest.approx(tilde_metric(annulus, z).Ttilde[0, 0].real, rel=1e-7)


@pytest.mark.parametrize("kind", ["bergman", "tilde"])
def test_metric_weight_gradient(annulus, kind):
    x = np.array([0.1, 0.3, 0.6])
    h = 1e-6
    points = np.sqrt(x)[:, None]
    _, slopes = metric_weights(annulus, points, kind, gradient=True)
    plus, _ = metric_weights(annulus, np.sqrt(x + h)[:, None], kind)
    minus, _ = metric_weights(annulus, np.sqrt(x - h)[:, None], kind)
    np.testing.assert_allclose(slopes, (plus - minus) / (2 * h), rtol=1e-5, atol=1e-6 * np.max(np.abs(slopes)))


def test_metric_weights_reject_outside_points(annulus):
    with pytest.raises(NotInDomain):
        metric_weights(annulus, np.array([[0.1]]))
    with pytest.raises(ValueError):
        metric_weights(annulus, np.array([[0.5]]), "kahler")


def test_curvature_profile_disk(disk):
    x = np.array([0.1, 0.7])
    metric, lam, _, _ = curvature_profile(disk, x)
    np.testing.assert_allclose(metric, 2.0 / (1.0 - x) ** 2, rtol=1e-12)
    np.testing.assert_allclose(lam, 2.0 / (1.0 - x) ** 2, rtol=1e-12)
    np.testing.assert_allclose(bergman_profile(disk, x)[0], metric, rtol=1e-14)


def test_thin_annulus_limiting_densities():
    r = 1e-8
    domain = DomainSpec.annulus(r)
    a = 1.0 / abs(domain.log_r2)
    x = np.array([0.05, 0.2, 0.5])

    g = a * (1 - x) ** 2 + x
    dg = -2 * a * (1 - x) + 1
    expected_t = (dg + 2 * a * x) / g - x * dg ** 2 / g ** 2 + 2 / (1 - x) ** 2
    metric, _ = bergman_profile(domain, x)
    np.testing.assert_allclose(metric, expected_t, rtol=1e-9)

    # a[(1-x)^4 + 6x(1-x)^3 + 6x^2(1-x)^2] + 2x^2 expanded
    h = a * (1 + 2 * x - 6 * x ** 2 + 2 * x ** 3 + x ** 4) + 2 * x ** 2
    dh = a * (2 - 12 * x + 6 * x ** 2 + 4 * x ** 3) + 4 * x
    ddh = a * (-12 + 12 * x + 12 * x ** 2) + 4
    expected_tilde = (dh + x * ddh) / h - x * dh ** 2 / h ** 2 + 6 / (1 - x) ** 2
    np.testing.assert_allclose(tilde_profile_direct(domain, x), expected_tilde, rtol=1e-8)


def test_vector_length(disk, annulus):
    sample = bergman_metric(disk, 0.0)
    assert vector_length(sample, [1.0]) == pytest.approx(math.sqrt(2.0), rel=1e-14)
    assert vector_length(sample, [0.0]) == 0.0
    moved = bergman_metric(annulus, 0.5j)
    assert vector_length(moved, [-3.0j]) == pytest.approx(3.0 * vector_length(moved, [1.0]), rel=1e-13)
    with pytest.raises(ValueError):
        vector_length(sample, [1.0], "tilde")


def test_product_metric_is_block_diagonal(annulus, disk):
    product = DomainSpec.product(annulus, disk)
    sample = tilde_metric(product, (0.5, 0.3j))
    assert abs(sample.T[0, 1]) == pytest.approx(0.0, abs=1e-12)
    assert sample.T[0, 0].real == pytest.approx(bergman_metric(annulus, 0.5).T[0, 0].real, rel=1e-12)
    assert sample.T[1, 1].real == pytest.approx(bergman_metric(disk, 0.3j).T[0, 0].real, rel=1e-12)
    # dimension 2: tilde = 3T - Ric
    expected = 3.0 * sample.T - sample.Ric
    np.testing.assert_allclose(sample.Ttilde, expected, rtol=1e-12)


def test_skwarczynski_bound_disk(disk):
    assert skwarczynski_bound(disk, 0.0, 0.5) == pytest.approx(math.acos(0.75), rel=1e-13)
    assert skwarczynski_bound(disk, 0.3j, 0.3j) == pytest.approx(0.0, abs=1e-7)
    for t in (0.1, 0.5, 0.9):
        assert skwarczynski_bound(disk, 0.0, t) <= math.sqrt(2.0) * math.atanh(t)


def test_arccos_bounds_are_symmetric(annulus):
    z, w = 0.4 + 0.2j, -0.3 + 0.5j
    assert skwarczynski_bound(annulus, z, w) == pytest.approx(skwarczynski_bound(annulus, w, z), rel=1e-13)
    assert tilde_bound(annulus, z, w) == pytest.approx(tilde_bound(annulus, w, z), rel=1e-12)
    assert 0.0 < tilde_bound(annulus, z, w) <= math.pi / 2


def test_cauchy_schwarz_on_samples(annulus, annulus_points):
    for z, w in zip(annulus_points(0.2, 15), annulus_points(0.2, 15)):
        cross = abs(eval_kernel_jet(annulus, z, w, (0, 0)).value)
        kzz = eval_kernel_jet(annulus, z, z, (0, 0)).value.real
        kww = eval_kernel_jet(annulus, w, w, (0, 0)).value.real
        assert cross ** 2 <= kzz * kww * (1.0 + 1e-12)


def test_ricci_ratio_and_radii_disk(disk):
    box = SamplingBox(-0.5, 0.5, -0.5, 0.5)
    assert ricci_ratio_min(disk, box, (3, 3)) == pytest.approx(-1.0, rel=1e-10)
    kernel_radius, immersion_radius = guaranteed_radii(disk, box, (3, 3))
    assert kernel_radius == pytest.approx(math.pi / 2)
    assert immersion_radius == pytest.approx(math.pi / (2.0 * math.sqrt(3.0)), rel=1e-10)


def test_ricci_ratio_refinement(annulus):
    box = SamplingBox(0.3, 0.7, 0.1, 0.4)
    coarse = ricci_ratio_min(annulus, box, (3, 3))
    fine = ricci_ratio_min(annulus, box, (5, 5))
    assert fine <= coarse + 1e-12


def test_ricci_ratio_rejects_box_outside(annulus):
    with pytest.raises(NotInDomain):
        ricci_ratio_min(annulus, SamplingBox(-0.1, 0.1, -0.1, 0.1), (3, 3))
