import math

import numpy as np
import pytest

from bergman_geometry.core import (
    DomainSpec,
    NearSingularLocus,
    SeriesTruncationFailure,
    Truncation,
    check_smallness,
    eval_kernel_jet,
    laurent_kernel_oracle,
    series_derivatives,
    sign_bracket_bounds,
)


def test_disk_kernel_at_origin(disk):
    assert eval_kernel_jet(disk, 0.0, 0.0, (0, 0)).value == pytest.approx(1.0 / math.pi, rel=1e-15)


def test_disk_profile_derivatives(disk):
    t = np.array([0.3 + 0.2j, -0.5j, 0.0])
    derivs, cert = series_derivatives(disk, t, 3)
    for m in range(4):
        expected = math.factorial(m + 1) / (math.pi * (1.0 - t) ** (m + 2))
        np.testing.assert_allclose(derivs[m], expected, rtol=1e-14)
    assert cert.tail_bound == 0.0


@pytest.mark.parametrize("r", [0.1, 0.5])
def test_image_series_matches_laurent_sum(r, annulus_points):
    domain = DomainSpec.annulus(r)
    zs = annulus_points(r, 20)
    zetas = annulus_points(r, 20)
    for z, zeta in zip(zs, zetas):
        series = eval_kernel_jet(domain, z, zeta, (0, 0)).value
        oracle = laurent_kernel_oracle(r, z, zeta)
        scale = math.sqrt(
            eval_kernel_jet(domain, z, z, (0, 0)).value.real
            * eval_kernel_jet(domain, zeta, zeta, (0, 0)).value.real
        )
        assert abs(series - oracle) <= 1e-10 * scale


def test_jets_match_finite_differences(annulus_points):
    domain = DomainSpec.annulus(0.3)
    h = 1e-5
    zs = annulus_points(0.3, 50, low=0.5, high=0.85)
    zetas = annulus_points(0.3, 50, low=0.5, high=0.85)

    def at(zz, ww):
        return eval_kernel_jet(domain, zz, ww, (2, 2)).tables[0]

    for z, zeta in zip(zs, zetas):
        table = at(z, zeta)
        scale = np.max(np.abs(table))
        # z side: holomorphic, so a real step gives d/dz
        dz = (at(z + h, zeta) - at(z - h, zeta)) / (2 * h)
        # conj(zeta) side: a real step in zeta is a real step in conj(zeta)
        dw = (at(z, zeta + h) - at(z, zeta - h)) / (2 * h)
        assert np.max(np.abs(dz[:2, :] - table[1:, :])) <= 1e-5 * scale
        assert np.max(np.abs(dw[:, :2] - table[:, 1:])) <= 1e-5 * scale


def test_hermitian_symmetry(annulus, annulus_points):
    zs = annulus_points(0.2, 200)
    zetas = annulus_points(0.2, 200)
    for z, zeta in zip(zs, zetas):
        forward = eval_kernel_jet(annulus, z, zeta, (0, 0)).value
        backward = eval_kernel_jet(annulus, zeta, z, (0, 0)).value
        assert abs(forward - backward.conjugate()) <= 1e-12 * (1.0 + abs(forward))


def test_tail_bound_within_tolerance(thin_annulus):
    jet = eval_kernel_jet(thin_annulus, 0.2, -0.3j, (2, 2))
    assert 0.0 <= jet.tail_bound <= Truncation().tol_abs
    assert jet.certificates[0].terms_used >= 1


def test_product_kernel_factorises(annulus, disk):
    product = DomainSpec.product(annulus, disk)
    z, zeta = (0.5, 0.3j), (-0.4j, 0.1)
    jet = eval_kernel_jet(product, z, zeta, (1, 1))
    first = eval_kernel_jet(annulus, z[0], zeta[0], (1, 1))
    second = eval_kernel_jet(disk, z[1], zeta[1], (1, 1))
    assert jet.value == pytest.approx(first.value * second.value, rel=1e-14)
    assert jet.unit(0, 1) == pytest.approx(first[1, 0] * second[0, 1], rel=1e-14)


def test_jet_entry_outside_order(annulus):
    jet = eval_kernel_jet(annulus, 0.5, 0.5, (1, 0))
    with pytest.raises(ValueError):
        jet[0, 1]
    with pytest.raises(ValueError):
        eval_kernel_jet(annulus, 0.5, 0.5, (3, 0))


def test_near_boundary_raises(disk):
    z = math.sqrt(1.0 - 5e-10)
    with pytest.raises(NearSingularLocus):
        eval_kernel_jet(disk, z, z, (0, 0))


def test_truncation_failure():
    domain = DomainSpec.annulus(0.9)
    with pytest.raises(SeriesTruncationFailure):
        eval_kernel_jet(domain, 0.95, 0.95, (0, 0), Truncation(max_terms=1))


def test_smallness_conditions():
    assert check_smallness(1e-100, 0.05).all_hold
    report = check_smallness(1e-8, 0.05)
    assert not report.eq1
    assert report.eq2 and report.eq3
    with pytest.raises(ValueError):
        check_smallness(1.5, 0.05)


def test_smallness_at_moderate_radius():
    report = check_smallness(1e-3, 0.05)
    assert (report.eq1, report.eq2, report.eq3) == (False, True, True)
    assert not report.all_hold
    report = check_smallness(0.5, 0.05)
    assert not (report.eq1 or report.eq2 or report.eq3)


def test_sign_bracket_bounds():
    upper, lower = sign_bracket_bounds(0.05)
    assert upper < 0.0 < lower
