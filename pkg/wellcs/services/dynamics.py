"""Exact time evolution, wavefunctions and observables from truncated eigenseries."""
import logging
import math
from concurrent.futures import ThreadPoolExecutor
from typing import Callable, List, Optional, TypeVar

import numpy as np
from scipy.integrate import simpson

from wellcs.core.config import settings
from wellcs.core.exceptions import DomainError, HermiticityError, NumericalContractError
from wellcs.domain.entities import CoefficientVector, ObservableSeries
from wellcs.domain.value_objects import GCS, SpaceGrid, Spectrum, TimeGrid, WellParams
from wellcs.services import specfun
from wellcs.services.well_core import eigenbasis

logger = logging.getLogger(__name__)

T = TypeVar("T")

OPERATOR_KINDS = ("x", "x2", "p", "p2")


def chunked_map(func: Callable[[slice], T], size: int, chunk: int, threads: int = 1) -> List[T]:
    """Apply func to consecutive fixed-size slices of range(size), results in slice order.

    Chunk boundaries depend only on size and chunk, so output is identical for
    any thread count.
    """
    slices = [slice(start, min(start + chunk, size)) for start in range(0, size, chunk)]
    if threads <= 1 or len(slices) <= 1:
        return [func(s) for s in slices]
    with ThreadPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(func, slices))


def _phase_factors(params: WellParams, n: np.ndarray, t: float) -> np.ndarray:
    return np.exp(-1j * t * params.spectrum.shifted_energy(n.astype(float)) / params.hbar)


def evolve(
    v: CoefficientVector,
    t: float,
    params: Optional[WellParams] = None,
    allow_backward: bool = False,
) -> CoefficientVector:
    """c_n(t) = c_n exp(-i omega n(n+2) t)."""
    if t < 0.0 and not allow_backward:
        raise DomainError(f"Evolution time must be non-negative, got {t}")
    params = params or WellParams()
    if t == 0.0:
        return v
    return v.with_amplitudes(v.amplitudes * _phase_factors(params, v.indices, t))


def _evolved_columns(v: CoefficientVector, params: WellParams, times: np.ndarray) -> np.ndarray:
    """Matrix C[k, j] = c_{n_min+k}(times[j])."""
    shifted = Spectrum.shifted(v.indices).astype(float)
    return v.amplitudes[:, None] * np.exp(-1j * params.omega * np.outer(shifted, times))


def wavefunction(
    v: CoefficientVector,
    grid: SpaceGrid,
    t: float,
    threads: int = settings.DEFAULT_THREADS,
) -> np.ndarray:
    """Psi(x, t) = sum_n c_n exp(-i omega n(n+2) t) psi_n(x), exactly zero on the walls."""
    grid.require_resolution(v.n_max, settings.MIN_POINTS_PER_HALF_WAVE)
    params = grid.params
    coeffs = evolve(v, t, params).amplitudes
    x = grid.points

    def evaluate(part: slice) -> np.ndarray:
        return eigenbasis(params, v.n_min, v.n_max, x[part]) @ coeffs

    return np.concatenate(chunked_map(evaluate, grid.count, settings.SPACE_CHUNK, threads))


def density(
    v: CoefficientVector,
    grid: SpaceGrid,
    t: float,
    threads: int = settings.DEFAULT_THREADS,
) -> np.ndarray:
    return np.abs(wavefunction(v, grid, t, threads)) ** 2


def phi_kernel(spec: GCS, params: WellParams, n: np.ndarray, n_prime: np.ndarray, t: float) -> np.ndarray:
    """Weight of psi_n psi_n' in the Gaussian-state density.

    exp(-((n-n0)^2 + (n'-n0)^2) / (4 sigma0^2)) cos((n-n') phi0 + omega t (E(n) - E(n'))) / N_G
    """
    n = np.asarray(n, dtype=float)
    n_prime = np.asarray(n_prime, dtype=float)
    n_g = specfun.gaussian_lattice_sum(spec.n0, spec.sigma0)
    gauss = np.exp(-((n - spec.n0) ** 2 + (n_prime - spec.n0) ** 2) / (4.0 * spec.sigma0**2))
    phase = (n - n_prime) * spec.phi0 + params.omega * t * (Spectrum.shifted(n) - Spectrum.shifted(n_prime))
    return gauss * np.cos(phase) / n_g


def density_kernel(
    v: CoefficientVector,
    grid: SpaceGrid,
    t: float,
    threads: int = settings.DEFAULT_THREADS,
) -> np.ndarray:
    """Density as the double sum over n, n' grouped into cosine harmonics.

    psi_n psi_n' = [cos((n'-n) a x) - cos((n+n'+2) a x)] / L, so the sum collapses
    onto difference and sum frequencies. A vector still carrying its Gaussian
    spec (not yet evolved) uses the closed-form kernel; any other vector uses
    Re(conj(c_n(t)) c_n'(t)).
    """
    grid.require_resolution(v.n_max, settings.MIN_POINTS_PER_HALF_WAVE)
    params = grid.params
    n = v.indices
    nn, mm = np.meshgrid(n, n, indexing="ij")

    if isinstance(v.spec, GCS):
        weights = phi_kernel(v.spec, params, nn, mm, t)
    else:
        c = evolve(v, t, params).amplitudes
        weights = np.real(np.conj(c)[:, None] * c[None, :])

    size = v.size
    diff = np.bincount(np.abs(mm - nn).ravel(), weights=weights.ravel(), minlength=size)
    total = np.bincount((nn + mm + 2).ravel(), weights=weights.ravel())
    diff_freq = np.arange(diff.size)
    total_freq = np.arange(total.size)
    alpha = params.alpha
    x = grid.points

    def evaluate(part: slice) -> np.ndarray:
        xs = x[part]
        difference = np.cos(np.outer(xs, diff_freq) * alpha) @ diff
        return (difference - np.cos(np.outer(xs, total_freq) * alpha) @ total) / params.length

    rho = np.concatenate(chunked_map(evaluate, grid.count, settings.SPACE_CHUNK, threads))
    rho[(x == 0.0) | (x == params.length)] = 0.0
    return rho


def _primed(n: int, m: int) -> tuple:
    if n < 0 or m < 0:
        raise DomainError(f"Quantum numbers must be non-negative, got ({n}, {m})")
    return n + 1, m + 1


def x_matrix_element(params: WellParams, n: int, m: int) -> float:
    a, b = _primed(n, m)
    L = params.length
    if a == b:
        return L / 2.0
    if (a + b) % 2 == 0:
        return 0.0
    return -8.0 * L * a * b / (math.pi**2 * (a * a - b * b) ** 2)


def x2_matrix_element(params: WellParams, n: int, m: int) -> float:
    a, b = _primed(n, m)
    L = params.length
    if a == b:
        return L**2 * (1.0 / 3.0 - 1.0 / (2.0 * math.pi**2 * a * a))
    sign = -1.0 if (a + b) % 2 else 1.0
    return 8.0 * L**2 * a * b * sign / (math.pi**2 * (a * a - b * b) ** 2)


def p_matrix_element(params: WellParams, n: int, m: int) -> complex:
    a, b = _primed(n, m)
    if a == b or (a + b) % 2 == 0:
        return 0j
    return -4j * params.hbar * a * b / (params.length * (a * a - b * b))


def p2_matrix_element(params: WellParams, n: int, m: int) -> float:
    a, b = _primed(n, m)
    if a != b:
        return 0.0
    return (a * math.pi * params.hbar / params.length) ** 2


def operator_block(params: WellParams, n_min: int, n_max: int, kind: str) -> np.ndarray:
    """Dense matrix of x, x2, p or p2 on the window n_min .. n_max."""
    if kind not in OPERATOR_KINDS:
        raise DomainError(f"Unknown operator '{kind}', expected one of {OPERATOR_KINDS}")
    if n_min < 0 or n_max < n_min:
        raise DomainError(f"Invalid window [{n_min}, {n_max}]")

    primed = np.arange(n_min, n_max + 1, dtype=float) + 1.0
    a = primed[:, None]
    b = primed[None, :]
    L, hbar = params.length, params.hbar
    diagonal = np.eye(primed.size, dtype=bool)
    odd = (np.rint(a + b).astype(np.int64) % 2) == 1
    # Unit placeholder on the diagonal; diagonal entries are overwritten below.
    gap = np.where(diagonal, 1.0, a * a - b * b)

    if kind == "x":
        block = np.where(odd, -8.0 * L * a * b / (math.pi**2 * gap**2), 0.0)
        block[diagonal] = L / 2.0
        return block.astype(np.complex128)
    if kind == "x2":
        sign = np.where(odd, -1.0, 1.0)
        block = 8.0 * L**2 * a * b * sign / (math.pi**2 * gap**2)
        block[diagonal] = L**2 * (1.0 / 3.0 - 1.0 / (2.0 * math.pi**2 * primed**2))
        return block.astype(np.complex128)
    if kind == "p":
        block = np.where(odd, -4j * hbar * a * b / (L * gap), 0.0)
        block[diagonal] = 0.0
        return block.astype(np.complex128)
    return np.diag((primed * math.pi * hbar / L) ** 2).astype(np.complex128)


def expectation(
    v: CoefficientVector,
    block: np.ndarray,
    t: float = 0.0,
    params: Optional[WellParams] = None,
) -> complex:
    """<A>(t) = sum_nm conj(c_n(t)) A_nm c_m(t) for a block on the vector's window; any real t."""
    if block.shape != (v.size, v.size):
        raise DomainError(f"Operator block {block.shape} does not match window of size {v.size}")
    c = evolve(v, t, params, allow_backward=True).amplitudes
    return complex(np.vdot(c, block @ c))


def _real_part(values: np.ndarray, name: str, tolerance: float) -> np.ndarray:
    worst = float(np.max(np.abs(values.imag))) if values.size else 0.0
    if worst > tolerance:
        raise HermiticityError(f"<{name}> has imaginary part {worst:.3e}")
    return values.real


def observables_at(
    v: CoefficientVector,
    times: np.ndarray,
    params: Optional[WellParams] = None,
    threads: int = settings.DEFAULT_THREADS,
    allow_backward: bool = False,
    hermiticity_tol: float = settings.HERMITICITY_TOL,
) -> ObservableSeries:
    """Observable series at arbitrary sample times."""
    params = params or WellParams()
    times = np.asarray(times, dtype=float)
    if times.ndim != 1 or times.size == 0:
        raise DomainError("At least one time sample is required")
    if not allow_backward and np.any(times < 0.0):
        raise DomainError("Sample times must be non-negative")

    blocks = {kind: operator_block(params, v.n_min, v.n_max, kind) for kind in OPERATOR_KINDS}

    def evaluate(part: slice) -> dict:
        columns = _evolved_columns(v, params, times[part])
        conj = np.conj(columns)
        return {kind: np.sum(conj * (block @ columns), axis=0) for kind, block in blocks.items()}

    chunks = chunked_map(evaluate, times.size, settings.TIME_CHUNK, threads)
    raw = {kind: np.concatenate([chunk[kind] for chunk in chunks]) for kind in OPERATOR_KINDS}
    values = {kind: _real_part(raw[kind], kind, hermiticity_tol) for kind in OPERATOR_KINDS}

    mean_x, mean_p = values["x"], values["p"]
    delta_x = np.sqrt(np.maximum(values["x2"] - mean_x**2, 0.0))
    delta_p = np.sqrt(np.maximum(values["p2"] - mean_p**2, 0.0))
    heisenberg = delta_x * delta_p / params.hbar

    floor = float(heisenberg.min())
    if floor < 0.5 - 1e-9:
        raise NumericalContractError(f"Uncertainty product {floor:.12f} fell below hbar/2")

    logger.info(
        "Observables computed",
        extra={"samples": int(times.size), "window": v.size, "threads": threads, "min_heisenberg": floor},
    )
    return ObservableSeries(
        times=times,
        mean_x=mean_x,
        mean_p=mean_p,
        delta_x=delta_x,
        delta_p=delta_p,
        heisenberg=heisenberg,
        length=params.length,
    )


def observables(
    v: CoefficientVector,
    tg: TimeGrid,
    params: Optional[WellParams] = None,
    threads: int = settings.DEFAULT_THREADS,
    hermiticity_tol: float = settings.HERMITICITY_TOL,
) -> ObservableSeries:
    return observables_at(v, tg.times, params, threads, hermiticity_tol=hermiticity_tol)


def quadrature_mean_position(v: CoefficientVector, grid: SpaceGrid, t: float) -> float:
    """<x> from Simpson quadrature of x |Psi|^2, the spatial cross-check of the matrix path."""
    rho = density(v, grid, t)
    return float(simpson(grid.points * rho, x=grid.points))
