import logging
import math

import numpy as np
import pytest
from scipy.integrate import trapezoid

from wellcs.core.exceptions import DomainError
from wellcs.domain.value_objects import GCS, SpaceGrid, ValidityThresholds
from wellcs.services import approx
from wellcs.services.dynamics import density
from wellcs.services.states import build_gcs


def test_packet_parameters_at_start(params, figure1_spec):
    pkt = approx.packet(params, figure1_spec, 0.0)
    assert pkt.X == pytest.approx(params.length / 2.0)
    assert pkt.P == pytest.approx(501.0)
    assert pkt.tau == pytest.approx(0.02)
    assert pkt.sigma == pytest.approx(5.0)
    assert pkt.s == pytest.approx(0.1)


def test_packet_spreads_after_decay_time(params, figure1_spec):
    early = approx.packet(params, figure1_spec, 0.0)
    late = approx.packet(params, figure1_spec, 0.02)
    assert late.s == pytest.approx(early.s * math.sqrt(2.0))
    assert late.X == pytest.approx(params.length / 2.0 + 501.0 * 0.02)


def test_gaussian_density_is_normalized(params, figure1_spec, fine_grid):
    rho = approx.approx_density(approx.packet(params, figure1_spec, 0.0), fine_grid)
    assert trapezoid(rho, fine_grid.points) == pytest.approx(1.0, abs=1e-10)


def test_quadrature_momentum_equals_packet_momentum(params, figure1_spec):
    grid = SpaceGrid(params=params, count=20001)
    pkt = approx.packet(params, figure1_spec, 0.002)
    psi = approx.approx_wavefunction(pkt, grid)
    dpsi = approx.approx_wavefunction_gradient(pkt, grid)
    mean_x, mean_p = approx.quadrature_moments(psi, dpsi, grid)
    assert mean_p == pytest.approx(pkt.P, rel=1e-6)
    assert mean_x == pytest.approx(pkt.X, abs=1e-3)


def test_f_integral_closed_form_matches_quadrature():
    X, s, alpha, beta = math.pi / 2.0, 0.1, 2.0, 5.0
    quadrature = approx.f_integral_quadrature(X, s, alpha, beta)
    assert abs(approx.f_integral(X, s, alpha, beta) - quadrature) < 1e-10
    assert abs(approx.f_integral_exact(X, s, alpha, beta) - quadrature) < 1e-10


def test_exact_f_integral_holds_near_a_wall():
    X, s, alpha, beta = 0.2, 0.1, 2.0, 40.0
    quadrature = approx.f_integral_quadrature(X, s, alpha, beta)
    assert abs(approx.f_integral_exact(X, s, alpha, beta) - quadrature) < 1e-10


def test_f_integral_rejects_non_positive_width():
    with pytest.raises(DomainError):
        approx.f_integral(1.0, 0.0, 2.0, 1.0)


def test_cosine_coefficients_against_quadrature(params):
    L = params.length
    wide = approx.pi_expansion_coeffs(L / 2.0, 0.1 * L, 0.0, 50, params)
    assert wide.corrected_discrepancy < 1e-8
    assert wide.discrepancy < 1e-6
    narrow = approx.pi_expansion_coeffs(L / 2.0, 0.1, 0.0, 50, params)
    assert narrow.discrepancy < 1e-8


def test_cosine_series_rebuilds_the_gaussian(params):
    L = params.length
    grid = SpaceGrid(params=params, count=1001)
    report = approx.pi_expansion_coeffs(L / 2.0, 0.1, 0.0, 100, params)
    rebuilt = approx.cosine_series_sum(report.erf_corrected, grid)
    np.testing.assert_allclose(rebuilt, approx.gaussian_pi(L / 2.0, 0.1, 0.0, grid.points), atol=1e-9)


def test_fourier_P0_matches_packet_density_far_from_walls(params, figure1_spec):
    grid = SpaceGrid(params=params, count=2001)
    pkt = approx.packet(params, figure1_spec, 0.0)
    np.testing.assert_allclose(
        approx.fourier_P0(figure1_spec, params, 0.0, grid),
        approx.approx_density(pkt, grid),
        atol=1e-9,
    )


def test_short_fourier_series_logs_a_warning(params, figure1_spec, caplog):
    grid = SpaceGrid(params=params, count=101)
    with caplog.at_level(logging.WARNING, logger="wellcs.services.approx"):
        approx.fourier_P0(figure1_spec, params, 0.0, grid, j_max=3)
    assert any("truncated" in record.getMessage() for record in caplog.records)


def test_corrected_density_is_symmetric_for_centred_packet(params, figure1_spec):
    grid = SpaceGrid(params=params, count=2001)
    for t in (0.0, math.pi / 501.0):
        rho = approx.corrected_density(figure1_spec, params, t, grid)
        np.testing.assert_allclose(rho, rho[::-1], atol=1e-3)


def test_right_border_correction_mirrors_the_left_one(params, figure1_spec):
    L = params.length
    grid = SpaceGrid(params=params, count=2001)
    t = (L / 2.0 - 0.2) / 501.0
    pkt = approx.packet(params, figure1_spec, t)
    assert pkt.X == pytest.approx(L - 0.2)
    mirrored = pkt.model_copy(update={"X": L - pkt.X})
    right = approx.border_correction_right(pkt, figure1_spec, grid)
    left = approx.border_correction_left(mirrored, figure1_spec, grid)
    assert np.max(np.abs(right)) > 0.1
    assert np.max(np.abs(right[grid.points < L / 2.0])) < 1e-12
    np.testing.assert_allclose(right, left[::-1], atol=1e-9)


def test_right_border_correction_is_strongest_on_wall_arrival(params, figure1_spec):
    grid = SpaceGrid(params=params, count=2001)
    arrival = approx.packet(params, figure1_spec, math.pi / 1002.0)
    assert arrival.X == pytest.approx(params.length)
    peak = np.max(np.abs(approx.border_correction_right(arrival, figure1_spec, grid)))
    assert peak == pytest.approx(np.max(approx.approx_density(arrival, grid)), rel=1e-3)


def test_left_border_series_tracks_its_closed_form(params):
    spec = GCS(n0=50.0, sigma0=5.0, phi0=0.0)
    grid = SpaceGrid(params=params, count=4001)
    pkt = approx.packet(params, spec, 0.0)
    series = approx.fourier_Pl(spec, params, 0.0, grid)
    closed = approx.border_correction_left(pkt, spec, grid)
    near_wall = grid.points < 0.4
    a, b = series[near_wall], closed[near_wall]
    similarity = abs(np.dot(a, b)) / (np.linalg.norm(a) * np.linalg.norm(b))
    assert similarity > 0.5


def test_validity_for_first_figure(params, figure1_spec):
    check = approx.check_validity(figure1_spec, params, 0.002)
    assert check.all_pass
    assert check.summary() == "pass"
    assert approx.check_validity(figure1_spec, params, 0.0).tau_over_t == math.inf


def test_validity_fails_for_wide_distribution(params, figure2_spec):
    check = approx.check_validity(figure2_spec, params, 0.0)
    assert not check.n0_much_larger_than_sigma0
    assert check.summary() == "fail"
    relaxed = approx.check_validity(figure2_spec, params, 0.0, ValidityThresholds(n0_over_sigma0=5.0))
    assert relaxed.n0_much_larger_than_sigma0


def test_first_sine_integral_is_negligible(params, figure1_spec):
    coefficient = approx.appendix2_bn(figure1_spec, params, 0.0, 500)
    assert coefficient.negligible_ratio < 1e-6
    assert coefficient.error < 1e-6 * abs(coefficient.approx)


def test_sine_expansion_is_normalized_and_gaussian(params, figure1_spec):
    expansion = approx.sine_expansion(figure1_spec, params, 0.0, 450, 550)
    assert expansion.parseval == pytest.approx(1.0, abs=1e-6)
    np.testing.assert_allclose(np.abs(expansion.coefficients), np.abs(expansion.identified), rtol=1e-10)
    ratio = expansion.coefficients / expansion.identified
    np.testing.assert_allclose(ratio, ratio[0], atol=1e-10)


def test_sine_expansion_moduli_follow_gaussian_state(params, figure1_spec):
    expansion = approx.sine_expansion(figure1_spec, params, 0.0, 450, 550)
    v = build_gcs(figure1_spec)
    exact = v.restricted(450, 550)
    np.testing.assert_allclose(np.abs(expansion.coefficients), np.abs(exact), atol=1e-8)


def test_distances(params):
    grid = SpaceGrid(params=params, count=501)
    a = np.sin(grid.points) * np.exp(1j * grid.points)
    assert approx.l1_distance(np.abs(a), np.abs(a), grid) == 0.0
    assert approx.linf_distance(a, a) == 0.0
    assert approx.aligned_l2_distance(a, a * np.exp(0.7j), grid) < 1e-12


def test_moment_matched_density_uses_state_moments(params, figure2_spec):
    v = build_gcs(figure2_spec)
    grid = SpaceGrid(params=params, count=4001)
    rho = approx.moment_matched_density(v, grid, 0.0)
    assert grid.points[np.argmax(rho)] == pytest.approx(params.length / 2.0, abs=2 * grid.spacing)
    assert trapezoid(rho, grid.points) == pytest.approx(1.0, abs=1e-6)


def test_fourier_P0_carries_unit_mass(params, figure1_spec):
    grid = SpaceGrid(params=params, count=2001)
    for t in (0.0, 0.002, 0.013):
        rho = approx.fourier_P0(figure1_spec, params, t, grid)
        assert trapezoid(rho, grid.points) == pytest.approx(1.0, abs=1e-12)


def test_wavefunction_modulus_is_the_gaussian_density(params, figure1_spec, fine_grid):
    pkt = approx.packet(params, figure1_spec, 0.002)
    psi = approx.approx_wavefunction(pkt, fine_grid)
    np.testing.assert_allclose(np.abs(psi) ** 2, approx.approx_density(pkt, fine_grid), rtol=1e-12, atol=1e-14)


def test_cosine_coefficients_break_down_next_to_a_wall(params):
    L = params.length
    mid = approx.pi_expansion_coeffs(L / 2.0, 0.1, 0.0, 20, params)
    edge = approx.pi_expansion_coeffs(0.2, 0.1, 0.0, 20, params)
    assert edge.discrepancy > 1e-4
    assert edge.discrepancy > 1e3 * mid.discrepancy
    assert edge.corrected_discrepancy < 1e-8


def test_constant_coefficient_tends_to_two_over_length(params):
    L = params.length
    gaps = [abs(approx.pi_expansion_coeffs(L / 2.0, s, 0.0, 0, params).quadrature[0] - 2.0 / L) for s in (0.6, 0.05)]
    assert gaps[1] < gaps[0]
    assert gaps[1] < 1e-10


def test_f_integral_without_carrier_is_the_gaussian_mass():
    X, s, alpha = math.pi / 2.0, 0.1, 2.0
    mass = math.sqrt(math.pi * alpha) * s
    assert approx.f_integral(X, s, alpha, 0.0) == pytest.approx(mass, rel=1e-12)
    assert approx.f_integral_exact(X, s, alpha, 0.0) == pytest.approx(mass, rel=1e-12)
    assert approx.f_integral_quadrature(X, s, alpha, 0.0) == pytest.approx(mass, rel=1e-10)


@pytest.mark.parametrize("func", [approx.f_integral, approx.f_integral_exact, approx.f_integral_quadrature])
def test_f_integral_modulus_is_even_in_beta(func):
    X, s, alpha = 1.0, 0.15, 2.0
    for beta in (0.5, 7.0, 30.0):
        assert abs(func(X, s, alpha, -beta)) == pytest.approx(abs(func(X, s, alpha, beta)), rel=1e-12)


def test_sine_coefficients_peak_on_the_packet_mode(params, figure1_spec):
    n = np.arange(490, 511)
    coefficients = [approx.appendix2_bn(figure1_spec, params, 0.0, int(k)) for k in n]
    assert n[np.argmax([abs(c.approx) for c in coefficients])] + 1 == 501
    assert n[np.argmax([abs(c.quadrature) for c in coefficients])] + 1 == 501


def test_left_border_series_oscillates_with_period_length_over_n0(params):
    spec = GCS(n0=50.0, sigma0=5.0, phi0=0.0)
    grid = SpaceGrid(params=params, count=20001)
    series = approx.fourier_Pl(spec, params, 0.0, grid)
    near_wall = grid.points < 0.2
    x, values = grid.points[near_wall], series[near_wall]
    crossings = x[1:][np.sign(values[1:]) != np.sign(values[:-1])]
    assert len(crossings) >= 5
    assert np.mean(np.diff(crossings)) == pytest.approx(params.length / (2.0 * spec.n0), rel=0.02)


def test_left_border_series_tracks_the_exact_residual(params):
    spec = GCS(n0=50.0, sigma0=5.0, phi0=0.0)
    grid = SpaceGrid(params=params, count=4001)
    residual = density(build_gcs(spec), grid, 0.0) - approx.fourier_P0(spec, params, 0.0, grid)
    series = approx.fourier_Pl(spec, params, 0.0, grid)
    near_wall = grid.points < 0.4
    a, b = residual[near_wall], series[near_wall]
    similarity = np.dot(a, b) / (np.linalg.norm(a) * np.linalg.norm(b))
    assert similarity > 0.5


def test_validity_fails_at_decay_time_and_next_to_the_wall(params, figure1_spec):
    at_tau = approx.check_validity(figure1_spec, params, 0.02)
    assert at_tau.tau_over_t == pytest.approx(1.0)
    assert not at_tau.t_much_smaller_than_tau
    assert at_tau.summary() == "fail"
    hugging = approx.check_validity(GCS(n0=500.0, sigma0=5.0, phi0=0.01), params, 0.0)
    assert not hugging.x_much_larger_than_s
    assert hugging.wall_gap_much_larger_than_s
