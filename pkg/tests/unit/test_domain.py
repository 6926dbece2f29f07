import math

import numpy as np
import pytest
from pydantic import TypeAdapter, ValidationError

from wellcs.core.exceptions import ResolutionError
from wellcs.domain.entities import AsymptoticReport, CoefficientVector, ObservableSeries, VerificationCheck
from wellcs.domain.value_objects import (
    GCS,
    GeCS,
    SpaceGrid,
    Spectrum,
    StateSpec,
    TimeGrid,
    ValidityThresholds,
    WellParams,
)


def test_default_well_units():
    params = WellParams()
    assert params.length == pytest.approx(math.pi)
    assert params.omega == pytest.approx(0.5)
    assert params.alpha == pytest.approx(1.0)


def test_spectrum():
    spectrum = WellParams().spectrum
    assert spectrum.energy(0) == pytest.approx(0.5)
    n = np.arange(6)
    np.testing.assert_allclose(spectrum.shifted_energy(n), spectrum.energy(n) - spectrum.energy(0))
    assert Spectrum.shifted(3) == 15


def test_well_params_are_validated():
    with pytest.raises(ValidationError):
        WellParams(mass=0.0)
    with pytest.raises(ValidationError):
        WellParams(length=-1.0)


def test_state_specs_are_validated():
    with pytest.raises(ValidationError):
        GCS(n0=10.0, sigma0=0.0)
    with pytest.raises(ValidationError):
        GeCS(z0=-2.0)


def test_state_spec_union_dispatches_on_kind():
    adapter = TypeAdapter(StateSpec)
    assert isinstance(adapter.validate_python({"kind": "gecs", "z0": 4.0}), GeCS)
    spec = adapter.validate_python({"kind": "gcs", "n0": 50, "sigma0": 5})
    assert isinstance(spec, GCS) and spec.phi0 == 0.0
    with pytest.raises(ValidationError):
        adapter.validate_python({"kind": "squeezed", "z0": 4.0})


def test_time_grid():
    grid = TimeGrid(start=0.5, step=0.25, count=3)
    np.testing.assert_allclose(grid.times, [0.5, 0.75, 1.0])
    assert not grid.times.flags.writeable
    with pytest.raises(ValidationError):
        TimeGrid(step=0.1, count=0)


def test_space_grid(params):
    grid = SpaceGrid(params=params, count=801)
    assert grid.count == 801
    assert grid.points[0] == 0.0 and grid.points[-1] == pytest.approx(params.length)
    assert grid.points_per_half_wave(99) == pytest.approx(8.0)
    grid.require_resolution(99, 8)
    with pytest.raises(ResolutionError):
        grid.require_resolution(99, 9)


def test_coefficient_vector_window():
    v = CoefficientVector(n_min=3, amplitudes=[1.0, 2.0j, 3.0])
    assert v.n_max == 5
    np.testing.assert_array_equal(v.indices, [3, 4, 5])
    np.testing.assert_array_equal(v.restricted(2, 4), [0.0, 1.0, 2.0j])
    np.testing.assert_array_equal(v.restricted(7, 8), [0.0, 0.0])
    assert v.norm() == pytest.approx(math.sqrt(14.0))


def test_coefficient_vector_is_read_only():
    v = CoefficientVector(n_min=0, amplitudes=[1.0, 0.0])
    with pytest.raises(ValueError):
        v.amplitudes[0] = 2.0


def test_coefficient_vector_rejects_bad_amplitudes():
    with pytest.raises(ValidationError):
        CoefficientVector(n_min=0, amplitudes=[])
    with pytest.raises(ValidationError):
        CoefficientVector(n_min=0, amplitudes=[1.0, float("nan")])
    with pytest.raises(ValidationError):
        CoefficientVector(n_min=-1, amplitudes=[1.0])


def test_observable_series_lengths_must_agree():
    with pytest.raises(ValidationError):
        ObservableSeries(
            times=np.zeros(3),
            mean_x=np.zeros(3),
            mean_p=np.zeros(3),
            delta_x=np.zeros(3),
            delta_p=np.zeros(3),
            heisenberg=np.zeros(2),
        )


def test_observable_series_frame_columns():
    zeros = np.zeros(2)
    series = ObservableSeries(
        times=zeros, mean_x=zeros, mean_p=zeros, delta_x=zeros, delta_p=zeros, heisenberg=zeros
    )
    assert list(series.to_frame().columns) == ["t", "mean_x", "mean_p", "delta_x", "delta_p", "heisenberg"]
    assert len(series) == 2


def test_verification_check_treats_nan_as_failure():
    assert VerificationCheck(check="a", value=1e-13, tolerance=1e-12).passed
    assert not VerificationCheck(check="b", value=float("nan"), tolerance=1.0).passed


def test_asymptotic_report_fills_relative_error():
    report = AsymptoticReport(argument=2.0, exact=4.0, asymptotic=3.0)
    assert report.relative_error == pytest.approx(0.25)


@pytest.mark.parametrize(
    "model,fields",
    [
        (WellParams, {"colour": "blue"}),
        (GCS, {"n0": 50.0, "sigma0": 5.0, "sigma": 3.0}),
        (GeCS, {"z0": 4.0, "n0": 3.0}),
        (TimeGrid, {"step": 0.1, "count": 2, "stop": 1.0}),
        (ValidityThresholds, {"sigma": 2.0}),
    ],
)
def test_unknown_fields_are_rejected(model, fields):
    with pytest.raises(ValidationError):
        model(**fields)


def test_coefficient_vector_with_new_amplitudes_drops_spec():
    spec = GCS(n0=1.0, sigma0=1.0)
    v = CoefficientVector(n_min=0, amplitudes=[0.6, 0.8], spec=spec)
    moved = v.with_amplitudes([0.8, 0.6])
    assert v.spec == spec
    assert moved.spec is None
    assert moved.n_min == 0


def _series(mean_x, length):
    values = np.asarray(mean_x, dtype=float)
    ones = np.ones_like(values)
    return ObservableSeries(
        times=np.arange(values.size, dtype=float),
        mean_x=values,
        mean_p=ones,
        delta_x=ones,
        delta_p=ones,
        heisenberg=ones,
        length=length,
    )


def test_observable_series_mean_position_stays_in_the_well():
    assert len(_series([0.0, math.pi / 2.0, math.pi], math.pi)) == 3
    with pytest.raises(ValidationError):
        _series([1.0, -0.1], math.pi)
    with pytest.raises(ValidationError):
        _series([1.0, 3.2], math.pi)
    assert len(_series([1.0, 3.2], None)) == 2
    assert "length" not in _series([1.0], math.pi).to_frame().columns
