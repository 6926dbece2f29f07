import mpmath
import numpy as np
import pytest
from scipy.integrate import simpson, trapezoid

from wellcs.core.exceptions import DomainError, ResolutionError
from wellcs.domain.value_objects import SpaceGrid, Spectrum, WellParams
from wellcs.services.well_core import (
    check_su11,
    eigenbasis,
    eigenfunction,
    finite_difference_derivative,
    ladder_matrices,
    position_realization_check,
)


def test_eigenfunction_vanishes_on_walls(params):
    for n in (0, 1, 7, 500):
        assert eigenfunction(params, n, 0.0) == 0.0
        assert eigenfunction(params, n, params.length) == 0.0


def test_eigenfunctions_are_orthonormal(params):
    x = np.linspace(0.0, params.length, 4001)
    basis = eigenbasis(params, 0, 9, x)
    gram = np.array([[simpson(basis[:, i] * basis[:, j], x=x) for j in range(10)] for i in range(10)])
    np.testing.assert_allclose(gram, np.eye(10), atol=1e-8)


def test_eigenbasis_matches_eigenfunction(params):
    x = np.linspace(0.0, params.length, 101)
    basis = eigenbasis(params, 3, 6, x)
    for k, n in enumerate(range(3, 7)):
        np.testing.assert_allclose(basis[:, k], eigenfunction(params, n, x), atol=1e-15)


def test_eigenfunction_rejects_bad_input(params):
    with pytest.raises(DomainError):
        eigenfunction(params, -1, 0.5)
    with pytest.raises(DomainError):
        eigenfunction(params, 0, params.length + 0.1)


def test_ladder_factorizes_shifted_spectrum():
    ops = ladder_matrices(50)
    n = np.arange(50)
    np.testing.assert_allclose(np.diag(ops.a, k=1).real, np.sqrt(Spectrum.shifted(n[1:])), rtol=1e-15)
    product = ops.a_dagger @ ops.a
    np.testing.assert_allclose(product, np.diag(Spectrum.shifted(n).astype(float)), rtol=1e-14, atol=1e-13)
    np.testing.assert_array_equal(ops.number.diagonal().real, n)


def test_su11_commutators_hold_on_interior_block():
    report = check_su11(50)
    assert report.passed
    assert report.max_residual <= 1e-12


def test_su11_rejects_tiny_dimension():
    with pytest.raises(DomainError):
        check_su11(3)


def test_finite_difference_order_improves_accuracy():
    x = np.linspace(0.0, np.pi, 2001)
    h = x[1] - x[0]
    values = np.sin(3.0 * x)
    exact = 3.0 * np.cos(3.0 * x)
    second = np.max(np.abs(finite_difference_derivative(values, h, order=2) - exact))
    fourth = np.max(np.abs(finite_difference_derivative(values, h, order=4) - exact))
    assert fourth < 1e-8
    assert fourth < second


def test_finite_difference_rejects_unknown_order():
    with pytest.raises(DomainError):
        finite_difference_derivative(np.zeros(10), 0.1, order=3)


def test_position_realization_converges_under_refinement(params):
    coarse = position_realization_check(params, 6, SpaceGrid(params=params, count=1025))
    fine = position_realization_check(params, 6, SpaceGrid(params=params, count=2049))
    assert coarse.residuals[0] == 0.0
    assert fine.max_residual < coarse.max_residual / 8.0
    assert fine.max_residual < 1e-6


def test_position_realization_requires_resolution(params):
    with pytest.raises(ResolutionError):
        position_realization_check(params, 6, SpaceGrid(params=params, count=50))


def test_realization_holds_for_other_well_widths():
    params = WellParams(mass=2.0, length=1.5, hbar=0.5)
    report = position_realization_check(params, 5, SpaceGrid(params=params, count=2049))
    assert report.max_residual < 1e-6


def test_eigenfunction_matches_fifty_digit_sine(params):
    mpmath.mp.dps = 50
    expected = mpmath.sqrt(2 / mpmath.pi) * mpmath.sin(mpmath.mpf("1.2"))
    assert eigenfunction(params, 3, 0.3) == pytest.approx(float(expected), abs=1e-15)


def test_eigenfunctions_up_to_thirty_are_orthonormal(params):
    grid = SpaceGrid(params=params, count=1001)
    basis = eigenbasis(params, 0, 30, grid.points)
    gram = trapezoid(basis[:, :, None] * basis[:, None, :], grid.points, axis=0)
    np.testing.assert_allclose(gram, np.eye(31), atol=1e-12)
