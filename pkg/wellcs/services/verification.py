"""Invariant suites behind the verify verb.

Every check reports a non-negative deviation next to the bound it must stay
under, so one table can hold algebraic identities, quadrature oracles and
physical floors alike.
"""
import logging
import math
from typing import Callable, List, Union

import numpy as np
from scipy.integrate import simpson

from wellcs.core.config import settings
from wellcs.domain.entities import VerificationCheck
from wellcs.domain.value_objects import GCS, GeCS, SpaceGrid, Spectrum, TimeGrid, WellParams
from wellcs.services import approx, specfun
from wellcs.services.dynamics import (
    OPERATOR_KINDS,
    evolve,
    expectation,
    observables,
    observables_at,
    operator_block,
    quadrature_mean_position,
)
from wellcs.services.equivalence import equivalence_report, map_parameters
from wellcs.services.states import build_gcs, build_state
from wellcs.services.well_core import check_su11, ladder_matrices, position_realization_check

logger = logging.getLogger(__name__)

ALGEBRA_DIM = 50
MATRIX_ELEMENT_MAX_N = 25
QUADRATURE_POINTS = 20001
REALIZATION_DIM = 20
REALIZATION_POINTS = 4097
SYMMETRY_SAMPLES = 8


def matrix_elements_by_quadrature(
    params: WellParams,
    n_max: int,
    kind: str,
    points: int = QUADRATURE_POINTS,
) -> np.ndarray:
    """Simpson-rule oracle for the x, x2, p and p2 blocks on 0 .. n_max."""
    L, hbar = params.length, params.hbar
    x = np.linspace(0.0, L, points)
    k = (np.arange(n_max + 1) + 1.0) * params.alpha
    psi = math.sqrt(2.0 / L) * np.sin(np.outer(x, k))
    dpsi = math.sqrt(2.0 / L) * np.cos(np.outer(x, k)) * k

    if kind == "x":
        left, right, factor = psi * x[:, None], psi, 1.0
    elif kind == "x2":
        left, right, factor = psi * (x**2)[:, None], psi, 1.0
    elif kind == "p":
        left, right, factor = psi, dpsi, -1j * hbar
    else:
        left, right, factor = dpsi, dpsi, hbar**2 + 0j

    columns = [simpson(left * right[:, [m]], x=x, axis=0) for m in range(n_max + 1)]
    return factor * np.array(columns).T


def _ladder_factorization() -> float:
    ops = ladder_matrices(ALGEBRA_DIM)
    expected = np.diag(Spectrum.shifted(np.arange(ALGEBRA_DIM)).astype(float))
    deviation = np.abs(ops.a_dagger @ ops.a - expected) / np.maximum(1.0, expected.diagonal())[None, :]
    return float(np.max(deviation))


def _matrix_elements(params: WellParams) -> float:
    worst = 0.0
    for kind in OPERATOR_KINDS:
        closed = operator_block(params, 0, MATRIX_ELEMENT_MAX_N, kind)
        oracle = matrix_elements_by_quadrature(params, MATRIX_ELEMENT_MAX_N, kind)
        worst = max(worst, float(np.max(np.abs(closed - oracle))))
    return worst


def _evolution_norm(state: Union[GCS, GeCS], params: WellParams, times: TimeGrid, rel_tail_tol: float) -> float:
    v = build_state(state, rel_tail_tol)
    t_end = float(times.times[-1])
    return abs(evolve(v, t_end, params).norm() ** 2 - v.norm() ** 2)


def _heisenberg_floor(
    state: Union[GCS, GeCS],
    params: WellParams,
    times: TimeGrid,
    rel_tail_tol: float,
    hermiticity_tol: float,
    threads: int,
) -> float:
    v = build_state(state, rel_tail_tol)
    series = observables(v, times, params, threads, hermiticity_tol)
    return max(0.0, 0.5 - float(series.heisenberg.min()))


def _time_symmetry(spec: GCS, params: WellParams, times: TimeGrid, rel_tail_tol: float) -> float:
    """<x>(t) against <x>(-t) for the phi0 = 0 member of the family."""
    v = build_gcs(GCS(n0=spec.n0, sigma0=spec.sigma0, phi0=0.0), rel_tail_tol)
    t = times.times[:SYMMETRY_SAMPLES]
    series = observables_at(v, np.concatenate([t, -t]), params, allow_backward=True)
    return float(np.max(np.abs(series.mean_x[: t.size] - series.mean_x[t.size :])))


def _position_cross_check(
    state: Union[GCS, GeCS],
    grid: SpaceGrid,
    t: float,
    rel_tail_tol: float,
) -> float:
    v = build_state(state, rel_tail_tol)
    block = operator_block(grid.params, v.n_min, v.n_max, "x")
    return abs(expectation(v, block, t, grid.params).real - quadrature_mean_position(v, grid, t))


def _bessel_crossover() -> float:
    worst = 0.0
    for x in (30.0, 35.0, 40.0):
        series = specfun.bessel_I2_scaled_series(x)
        worst = max(worst, abs(specfun.bessel_I2_scaled_asymptotic(x) - series) / series)
    return worst


def _f_integral(params: WellParams) -> float:
    L = params.length
    closed = approx.f_integral(L / 2.0, 0.1, 2.0, 5.0, L)
    return abs(closed - approx.f_integral_quadrature(L / 2.0, 0.1, 2.0, 5.0, L))


def _sine_first_integral(spec: GCS, params: WellParams) -> float:
    return approx.appendix2_bn(spec, params, 0.0, int(round(spec.n0))).negligible_ratio


def run_verification(
    params: WellParams,
    state: Union[GCS, GeCS],
    times: TimeGrid,
    grid: SpaceGrid,
    rel_tail_tol: float = settings.REL_TAIL_TOL,
    hermiticity_tol: float = settings.HERMITICITY_TOL,
    threads: int = settings.DEFAULT_THREADS,
) -> List[VerificationCheck]:
    spec = map_parameters(state.z0, state.phi0) if isinstance(state, GeCS) else state
    L = params.length
    realization_grid = SpaceGrid(params=params, count=REALIZATION_POINTS)

    suite: List[tuple] = [
        ("ladder_factorization", _ladder_factorization, 1e-14),
        ("su11_commutators", lambda: check_su11(ALGEBRA_DIM).max_residual, 1e-12),
        ("matrix_elements_vs_quadrature", lambda: _matrix_elements(params), 1e-9),
        (
            "position_realization",
            lambda: position_realization_check(params, REALIZATION_DIM, realization_grid).max_residual,
            1e-6,
        ),
        ("evolution_norm", lambda: _evolution_norm(state, params, times, rel_tail_tol), 1e-14),
        ("gcs_normalization", lambda: abs(build_gcs(spec, rel_tail_tol).norm() ** 2 - 1.0), 1e-12),
        (
            "heisenberg_floor",
            lambda: _heisenberg_floor(state, params, times, rel_tail_tol, hermiticity_tol, threads),
            1e-9,
        ),
        ("time_symmetry_mean_x", lambda: _time_symmetry(spec, params, times, rel_tail_tol), 1e-8),
        ("mean_x_vs_quadrature", lambda: _position_cross_check(state, grid, times.start, rel_tail_tol), 1e-6),
        ("bessel_crossover", _bessel_crossover, 1e-10),
        (
            "bessel_series_normalization",
            lambda: abs(specfun.log_bessel_I2(50.0) - specfun.log_bessel_I2_series(25.0)),
            1e-10,
        ),
        ("coth_bernoulli_x1", lambda: specfun.bernoulli_coth_check(1.0, 40), 1e-10),
        ("euler_maclaurin_z0_4", lambda: specfun.euler_maclaurin_gaussian(4.0, 4).relative_error, 1e-5),
        ("equivalence_infidelity_z0_100", lambda: 1.0 - equivalence_report(100.0).fidelity, 1e-2),
        ("f_integral_vs_quadrature", lambda: _f_integral(params), 1e-10),
        (
            "pi_coefficients_corrected",
            lambda: approx.pi_expansion_coeffs(L / 2.0, 0.1 * L, 0.0, 50, params).corrected_discrepancy,
            1e-8,
        ),
        (
            "pi_coefficients_simplified",
            lambda: approx.pi_expansion_coeffs(L / 2.0, 0.1, 0.0, 50, params).discrepancy,
            1e-8,
        ),
        ("sine_first_integral_ratio", lambda: _sine_first_integral(spec, params), 1e-6),
    ]

    # Checks run one after another; the thread count only reaches the observables sweep.
    results = [_run_check(name, check, tolerance) for name, check, tolerance in suite]
    failed = [row.check for row in results if not row.passed]
    logger.info("Verification suite finished", extra={"checks": len(results), "failed": failed})
    return results


def _run_check(name: str, check: Callable[[], float], tolerance: float) -> VerificationCheck:
    value = float(check())
    row = VerificationCheck(check=name, value=value, tolerance=tolerance)
    if not row.passed:
        logger.warning("Verification check failed", extra=row.model_dump())
    return row

