"""Eigenbasis, spectrum and truncated ladder operators of the infinite square well."""
import logging
from typing import Union

import numpy as np
from scipy.integrate import trapezoid

from wellcs.core.config import settings
from wellcs.core.exceptions import DomainError
from wellcs.domain.entities import LadderMatrices, RealizationReport, Su11Report
from wellcs.domain.value_objects import SpaceGrid, Spectrum, WellParams

logger = logging.getLogger(__name__)

# Central-difference weights for the first derivative, offsets -k..k.
_CENTRAL_WEIGHTS = {
    2: np.array([-1 / 2, 0.0, 1 / 2]),
    4: np.array([1 / 12, -2 / 3, 0.0, 2 / 3, -1 / 12]),
    6: np.array([-1 / 60, 3 / 20, -3 / 4, 0.0, 3 / 4, -3 / 20, 1 / 60]),
    8: np.array([1 / 280, -4 / 105, 1 / 5, -4 / 5, 0.0, 4 / 5, -1 / 5, 4 / 105, -1 / 280]),
}


def eigenfunction(params: WellParams, n: int, x: Union[float, np.ndarray]) -> Union[float, np.ndarray]:
    """sqrt(2/L) sin((n+1) pi x / L), exactly zero on the walls."""
    if n < 0:
        raise DomainError(f"Quantum number must be non-negative, got {n}")
    xs = np.asarray(x, dtype=float)
    L = params.length
    if np.any(xs < 0.0) or np.any(xs > L):
        raise DomainError(f"Position outside [0, {L}]")

    values = np.sqrt(2.0 / L) * np.sin((n + 1) * np.pi * xs / L)
    values = np.where((xs == 0.0) | (xs == L), 0.0, values)
    return float(values) if values.ndim == 0 else values


def eigenbasis(params: WellParams, n_min: int, n_max: int, x: np.ndarray) -> np.ndarray:
    """Matrix B[i, k] = psi_{n_min+k}(x_i) with rows on the walls set to zero."""
    L = params.length
    modes = np.arange(n_min, n_max + 1) + 1
    basis = np.sqrt(2.0 / L) * np.sin(np.outer(x, modes) * (np.pi / L))
    basis[(x == 0.0) | (x == L), :] = 0.0
    return basis


def ladder_matrices(dim: int) -> LadderMatrices:
    """a[n-1, n] = sqrt(n(n+2)); a_dagger its conjugate transpose; N = diag(n)."""
    if dim < 2:
        raise DomainError(f"Ladder matrices need dim >= 2, got {dim}")

    n = np.arange(1, dim)
    a = np.diag(np.sqrt(Spectrum.shifted(n).astype(float)), k=1).astype(np.complex128)
    number = np.diag(np.arange(dim, dtype=float)).astype(np.complex128)
    return LadderMatrices(dimension=dim, a=a, a_dagger=a.conj().T.copy(), number=number)


def _commutator(x: np.ndarray, y: np.ndarray) -> np.ndarray:
    return x @ y - y @ x


def check_su11(dim: int, tolerance: float = 1e-12) -> Su11Report:
    """Residuals of [a,N]=a, [a+,N]=-a+, [a,a+]=2(N+3/2) away from the truncation edge."""
    if dim < 4:
        raise DomainError(f"su(1,1) check needs dim >= 4, got {dim}")

    ops = ladder_matrices(dim)
    a, ad, N = ops.a, ops.a_dagger, ops.number
    identity = np.eye(dim)
    interior = slice(0, dim - 1)

    residuals = [
        _commutator(a, N) - a,
        _commutator(ad, N) + ad,
        _commutator(a, ad) - 2.0 * (N + 1.5 * identity),
    ]
    lowering, raising, closure = (float(np.max(np.abs(r[interior, interior]))) for r in residuals)

    report = Su11Report(
        dimension=dim,
        tolerance=tolerance,
        lowering_residual=lowering,
        raising_residual=raising,
        closure_residual=closure,
    )
    if not report.passed:
        logger.warning("su(1,1) residual above tolerance", extra=report.model_dump())
    return report


def finite_difference_derivative(values: np.ndarray, spacing: float, order: int = 4) -> np.ndarray:
    """Central-difference derivative of a function vanishing on both walls.

    Ghost points come from odd reflection about each wall, which is exact for
    every eigenfunction and keeps the stencil order up to the boundary.
    """
    if order not in _CENTRAL_WEIGHTS:
        raise DomainError(f"Unsupported finite-difference order {order}")

    weights = _CENTRAL_WEIGHTS[order]
    half = len(weights) // 2
    padded = np.pad(values, half, mode="reflect", reflect_type="odd")
    derivative = np.zeros_like(values)
    for offset, weight in zip(range(-half, half + 1), weights):
        if weight != 0.0:
            derivative = derivative + weight * padded[half + offset : half + offset + len(values)]
    return derivative / spacing


def apply_position_realization(params: WellParams, n: int, grid: SpaceGrid, fd_order: int = 4) -> np.ndarray:
    """[cos(ax) - i sin(ax)/(hbar a) p (N+1)^-1] sqrt(E(N)) acting on psi_n, sampled on the grid."""
    x = grid.points
    alpha = params.alpha
    hbar = params.hbar

    # (N+1)^-1 sqrt(E(N)) is diagonal on psi_n; p = -i hbar d/dx acts next.
    psi = eigenfunction(params, n, x)
    scaled = np.sqrt(float(Spectrum.shifted(n))) / (n + 1) * psi
    p_scaled = -1j * hbar * finite_difference_derivative(scaled, grid.spacing, fd_order)

    lowered = np.cos(alpha * x) * np.sqrt(float(Spectrum.shifted(n))) * psi
    return lowered - 1j * np.sin(alpha * x) / (hbar * alpha) * p_scaled


def position_realization_check(
    params: WellParams,
    dim: int,
    grid: SpaceGrid,
    fd_order: int = settings.FD_ORDER,
) -> RealizationReport:
    """L2 residual of the differential realization of a against sqrt(E(n)) psi_{n-1}, n < dim."""
    if dim < 3:
        raise DomainError(f"Position realization check needs dim >= 3, got {dim}")
    grid.require_resolution(dim - 1, settings.REALIZATION_POINTS_PER_HALF_WAVE)

    x = grid.points
    residuals = []
    for n in range(0, dim):
        applied = apply_position_realization(params, n, grid, fd_order)
        expected = np.sqrt(float(Spectrum.shifted(n))) * eigenfunction(params, n - 1, x) if n > 0 else np.zeros_like(x)
        residuals.append(float(np.sqrt(trapezoid(np.abs(applied - expected) ** 2, x))))

    report = RealizationReport(dimension=dim, grid_points=grid.count, fd_order=fd_order, residuals=residuals)
    logger.info(
        "Position realization checked",
        extra={"dimension": dim, "grid_points": grid.count, "max_residual": report.max_residual},
    )
    return report
