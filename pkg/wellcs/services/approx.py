"""Closed-form Gaussian-packet approximations and the Fourier machinery behind them."""
import logging
import math
from typing import Callable, Optional, Tuple

import numpy as np
from scipy import special
from scipy.integrate import quad, trapezoid

from wellcs.core.config import settings
from wellcs.core.exceptions import DomainError
from wellcs.domain.entities import (
    CoefficientVector,
    GaussianPacket,
    PiExpansionReport,
    SineCoefficient,
    SineExpansion,
    ValidityCheck,
)
from wellcs.domain.value_objects import GCS, SpaceGrid, ValidityThresholds, WellParams
from wellcs.services.dynamics import chunked_map, observables_at

logger = logging.getLogger(__name__)

_QUAD_OPTIONS = {"epsabs": 1e-14, "epsrel": 1e-12, "limit": 500}


def packet(params: WellParams, spec: GCS, t: float) -> GaussianPacket:
    """Centre, momentum, decay time and widths of the Gaussian packet at time t."""
    P = (spec.n0 + 1.0) * math.pi * params.hbar / params.length
    X = spec.phi0 * params.length / math.pi + P * t / params.mass
    tau = 1.0 / (4.0 * params.omega * spec.sigma0**2)
    sigma = math.sqrt(tau / (4.0 * params.omega * (tau**2 + t**2)))
    s = params.length / (2.0 * math.pi * sigma)
    return GaussianPacket(X=X, P=P, tau=tau, sigma=sigma, s=s, t=t)


def approx_density(pkt: GaussianPacket, grid: SpaceGrid) -> np.ndarray:
    x = grid.points
    return np.exp(-((x - pkt.X) ** 2) / (2.0 * pkt.s**2)) / (math.sqrt(2.0 * math.pi) * pkt.s)


def approx_wavefunction(pkt: GaussianPacket, grid: SpaceGrid) -> np.ndarray:
    """(sqrt(2 pi) s)^(-1/2) exp(-(x-X)^2/(4 s^2) + i P x / hbar)."""
    x = grid.points
    hbar = grid.params.hbar
    amplitude = (math.sqrt(2.0 * math.pi) * pkt.s) ** -0.5
    return amplitude * np.exp(-((x - pkt.X) ** 2) / (4.0 * pkt.s**2) + 1j * pkt.P * x / hbar)


def approx_wavefunction_gradient(pkt: GaussianPacket, grid: SpaceGrid) -> np.ndarray:
    x = grid.points
    psi = approx_wavefunction(pkt, grid)
    return psi * (-(x - pkt.X) / (2.0 * pkt.s**2) + 1j * pkt.P / grid.params.hbar)


def _tail_width(sigma: float) -> int:
    """Smallest j with exp(-j^2 / (8 sigma^2)) below the Fourier tail tolerance."""
    return int(math.ceil(sigma * math.sqrt(8.0 * math.log(1.0 / settings.FOURIER_TAIL_TOL)))) + 1


def _bounce_phase(spec: GCS, params: WellParams, t: float) -> float:
    return spec.phi0 + 2.0 * params.omega * t * (spec.n0 + 1.0)


def _cosine_sum(weights: np.ndarray, freqs: np.ndarray, grid: SpaceGrid, threads: int) -> np.ndarray:
    x = grid.points
    alpha = grid.params.alpha

    def evaluate(part: slice) -> np.ndarray:
        return np.cos(np.outer(x[part], freqs) * alpha) @ weights

    return np.concatenate(chunked_map(evaluate, grid.count, settings.SPACE_CHUNK, threads))


def fourier_P0(
    spec: GCS,
    params: WellParams,
    t: float,
    grid: SpaceGrid,
    j_max: Optional[int] = None,
    threads: int = settings.DEFAULT_THREADS,
) -> np.ndarray:
    """1/L + (2/L) sum_j exp(-j^2/(8 sigma^2)) cos(j pi x / L) cos(j (phi0 + 2 omega t (n0+1)))."""
    sigma = packet(params, spec, t).sigma
    needed = _tail_width(sigma)
    if j_max is None:
        j_max = needed
    elif j_max < needed:
        logger.warning(
            "Fourier series truncated above the tail tolerance",
            extra={"series": "P0", "j_max": j_max, "required": needed, "sigma": sigma},
        )

    j = np.arange(1, j_max + 1, dtype=float)
    weights = np.exp(-(j**2) / (8.0 * sigma**2)) * np.cos(j * _bounce_phase(spec, params, t))
    L = params.length
    return 1.0 / L + (2.0 / L) * _cosine_sum(weights, j, grid, threads)


def fourier_Pl(
    spec: GCS,
    params: WellParams,
    t: float,
    grid: SpaceGrid,
    threads: int = settings.DEFAULT_THREADS,
) -> np.ndarray:
    """Left border correction -exp(-2 sigma^2 theta^2)/L sum_j exp(-(j-2 n0)^2/(8 sigma^2)) cos(j pi x / L).

    theta = phi0 + 2 omega t (n0+1). The series is centred at j = 2 n0 as printed;
    the exact double sum centres it at 2 n0 + 2, which only shifts the carrier
    of the fine oscillations.
    """
    sigma = packet(params, spec, t).sigma
    theta = _bounce_phase(spec, params, t)
    width = _tail_width(sigma)
    centre = 2.0 * spec.n0
    j = np.arange(max(0, int(math.floor(centre)) - width), int(math.ceil(centre)) + width + 1, dtype=float)
    weights = np.exp(-((j - centre) ** 2) / (8.0 * sigma**2))
    prefactor = -math.exp(-2.0 * sigma**2 * theta**2) / params.length
    return prefactor * _cosine_sum(weights, j, grid, threads)


def gaussian_pi(X: float, s: float, gamma: float, x: np.ndarray) -> np.ndarray:
    """exp(-(x-X)^2/(2 s^2)) cos(gamma x) / (sqrt(2 pi) s) on [0, L]."""
    return np.exp(-((x - X) ** 2) / (2.0 * s**2)) * np.cos(gamma * x) / (math.sqrt(2.0 * math.pi) * s)


def border_correction_left(pkt: GaussianPacket, spec: GCS, grid: SpaceGrid) -> np.ndarray:
    """-exp(-X^2/(2 s^2)) Pi(X, s, 2 pi n0 / L; x), the closed form of the left series."""
    gamma = 2.0 * math.pi * spec.n0 / grid.params.length
    return -math.exp(-(pkt.X**2) / (2.0 * pkt.s**2)) * gaussian_pi(pkt.X, pkt.s, gamma, grid.points)


def border_correction_right(pkt: GaussianPacket, spec: GCS, grid: SpaceGrid) -> np.ndarray:
    """-exp(-(L-X)^2/(2 s^2)) Pi(X, s, 2 pi n0 / L; x), the mirror of the left correction."""
    L = grid.params.length
    gamma = 2.0 * math.pi * spec.n0 / L
    return -math.exp(-((L - pkt.X) ** 2) / (2.0 * pkt.s**2)) * gaussian_pi(pkt.X, pkt.s, gamma, grid.points)


def corrected_density(
    spec: GCS,
    params: WellParams,
    t: float,
    grid: SpaceGrid,
    threads: int = settings.DEFAULT_THREADS,
) -> np.ndarray:
    """P0 + Pl + Pr."""
    pkt = packet(params, spec, t)
    return (
        fourier_P0(spec, params, t, grid, threads=threads)
        + fourier_Pl(spec, params, t, grid, threads)
        + border_correction_right(pkt, spec, grid)
    )


def f_integral(X: float, s: float, alpha: float, beta: float, L: float = math.pi) -> complex:
    """Integral of exp(-(x-X)^2/(alpha s^2) + i beta x) over [0, L], simplified closed form.

    Valid when s^2 |beta| is small against (2/alpha) min(X, L-X).
    """
    if s <= 0.0 or alpha <= 0.0:
        raise DomainError(f"f_integral requires s > 0 and alpha > 0, got s={s}, alpha={alpha}")
    root = math.sqrt(alpha) * s
    bracket = special.erf((L - X) / root) + special.erf(X / root)
    carrier = np.exp(1j * beta * X - alpha * beta**2 * s**2 / 4.0)
    return complex(0.5 * math.sqrt(math.pi * alpha) * s * carrier * bracket)


def f_integral_exact(X: float, s: float, alpha: float, beta: float, L: float = math.pi) -> complex:
    """Same integral with complex-argument error functions, no simplification.

    exp(-b^2) erf(u -/+ i b) is evaluated through the Faddeeva function so that
    large b neither overflows nor cancels.
    """
    if s <= 0.0 or alpha <= 0.0:
        raise DomainError(f"f_integral requires s > 0 and alpha > 0, got s={s}, alpha={alpha}")
    root = math.sqrt(alpha) * s
    b = beta * root / 2.0
    u = (L - X) / root
    v = X / root
    upper = math.exp(-b * b) - np.exp(-u * u + 2j * u * b) * special.wofz(b + 1j * u)
    lower = math.exp(-b * b) - np.exp(-v * v - 2j * v * b) * special.wofz(-b + 1j * v)
    return complex(0.5 * math.sqrt(math.pi) * root * np.exp(1j * beta * X) * (upper + lower))


def _oscillatory_integral(envelope: Callable[[float], float], beta: float, a: float, b: float) -> complex:
    """Integral of envelope(x) exp(i beta x) over [a, b]."""
    if beta == 0.0:
        return complex(quad(envelope, a, b, **_QUAD_OPTIONS)[0], 0.0)
    omega = abs(beta)
    real = quad(envelope, a, b, weight="cos", wvar=omega, **_QUAD_OPTIONS)[0]
    imag = quad(envelope, a, b, weight="sin", wvar=omega, **_QUAD_OPTIONS)[0]
    return complex(real, math.copysign(1.0, beta) * imag)


def f_integral_quadrature(X: float, s: float, alpha: float, beta: float, L: float = math.pi) -> complex:
    if s <= 0.0 or alpha <= 0.0:
        raise DomainError(f"f_integral requires s > 0 and alpha > 0, got s={s}, alpha={alpha}")
    return _oscillatory_integral(lambda x: math.exp(-((x - X) ** 2) / (alpha * s * s)), beta, 0.0, L)


def pi_expansion_coeffs(X: float, s: float, gamma: float, j_max: int, params: WellParams) -> PiExpansionReport:
    """Cosine coefficients a_0 .. a_j_max of the even 2L-periodic extension of Pi(X, s, gamma; x)."""
    L = params.length
    if not 0.0 < X < L:
        raise DomainError(f"Packet centre must lie inside (0, {L}), got {X}")
    if s <= 0.0:
        raise DomainError(f"Packet width must be positive, got {s}")

    norm = 1.0 / (math.sqrt(2.0 * math.pi) * s * L)

    def envelope(x: float) -> float:
        return math.exp(-((x - X) ** 2) / (2.0 * s * s)) * math.cos(gamma * x)

    simplified, corrected, quadrature = [], [], []
    for j in range(j_max + 1):
        k = j * math.pi / L
        plus, minus = k + gamma, k - gamma
        simplified.append(
            (
                math.exp(-(plus**2) * s**2 / 2.0) * math.cos(plus * X)
                + math.exp(-(minus**2) * s**2 / 2.0) * math.cos(minus * X)
            )
            / L
        )
        corrected.append(norm * (f_integral_exact(X, s, 2.0, plus, L) + f_integral_exact(X, s, 2.0, minus, L)).real)
        quadrature.append(2.0 / L * _oscillatory_integral(envelope, k, 0.0, L).real / (math.sqrt(2.0 * math.pi) * s))

    report = PiExpansionReport(
        simplified=np.array(simplified),
        erf_corrected=np.array(corrected),
        quadrature=np.array(quadrature),
    )
    logger.debug(
        "Pi expansion coefficients",
        extra={"X": X, "s": s, "gamma": gamma, "j_max": j_max, "discrepancy": report.discrepancy},
    )
    return report


def cosine_series_sum(coeffs: np.ndarray, grid: SpaceGrid) -> np.ndarray:
    """a_0/2 + sum_j a_j cos(j pi x / L)."""
    coeffs = np.asarray(coeffs, dtype=float)
    freqs = np.arange(coeffs.size, dtype=float)
    weights = coeffs.copy()
    weights[0] *= 0.5
    return np.cos(np.outer(grid.points, freqs) * grid.params.alpha) @ weights


def appendix2_bn(spec: GCS, params: WellParams, t: float, n: int) -> SineCoefficient:
    """Sine coefficient of the odd extension of the approximate wavefunction for eigenstate n.

    Mode k = n + 1 pairs sin(k pi x / L) with psi_n. The approximation keeps
    only the second integral; both integrals are also computed by quadrature.
    """
    if n < 0:
        raise DomainError(f"Quantum number must be non-negative, got {n}")
    pkt = packet(params, spec, t)
    L, hbar, s, X = params.length, params.hbar, pkt.s, pkt.X
    k_mode = (n + 1) * math.pi / L
    detuning = pkt.P / hbar - k_mode

    approx = 1j * math.sqrt(math.sqrt(8.0 * math.pi) * s) / L * np.exp(1j * detuning * X - s**2 * detuning**2)

    def envelope(x: float) -> float:
        return math.exp(-((x - X) ** 2) / (4.0 * s * s))

    first = _oscillatory_integral(envelope, pkt.P / hbar + k_mode, 0.0, L)
    second = _oscillatory_integral(envelope, detuning, 0.0, L)
    amplitude = (math.sqrt(2.0 * math.pi) * s) ** -0.5
    quadrature = amplitude / (1j * L) * (first - second)

    return SineCoefficient(
        n=n,
        approx=complex(approx),
        quadrature=complex(quadrature),
        first_integral=abs(first),
        second_integral=abs(second),
    )


def sine_expansion(spec: GCS, params: WellParams, t: float, n_min: int, n_max: int) -> SineExpansion:
    """Approximate b_n re-expressed on the normalized eigenbasis, with the phase-identified weights."""
    if n_min < 0 or n_max < n_min:
        raise DomainError(f"Invalid window [{n_min}, {n_max}]")
    pkt = packet(params, spec, t)
    L, hbar, s, X = params.length, params.hbar, pkt.s, pkt.X
    n = np.arange(n_min, n_max + 1, dtype=float)
    detuning = pkt.P / hbar - (n + 1.0) * math.pi / L

    b = 1j * math.sqrt(math.sqrt(8.0 * math.pi) * s) / L * np.exp(1j * detuning * X - s**2 * detuning**2)
    identified = np.exp(
        -1j * n * spec.phi0
        - 1j * params.omega * t * (n + 1.0) * (spec.n0 + 1.0)
        - (n - spec.n0) ** 2 / (4.0 * pkt.sigma**2)
    ) / math.sqrt(math.sqrt(2.0 * math.pi) * pkt.sigma)

    return SineExpansion(n_min=n_min, coefficients=math.sqrt(L / 2.0) * b, identified=identified)


def check_validity(
    spec: GCS,
    params: WellParams,
    t: float,
    thresholds: Optional[ValidityThresholds] = None,
) -> ValidityCheck:
    """Measure the conditions under which the Gaussian-packet approximation holds."""
    thresholds = thresholds or ValidityThresholds()
    pkt = packet(params, spec, t)

    ratios = {
        "n0_over_sigma0": spec.n0 / spec.sigma0,
        "sigma0": spec.sigma0,
        "x_over_s": pkt.X / pkt.s,
        "wall_gap_over_s": (params.length - pkt.X) / pkt.s,
        "tau_over_t": pkt.tau / t if t > 0.0 else math.inf,
    }
    return ValidityCheck(
        **ratios,
        n0_much_larger_than_sigma0=ratios["n0_over_sigma0"] > thresholds.n0_over_sigma0,
        sigma0_much_larger_than_one=ratios["sigma0"] > thresholds.sigma0,
        x_much_larger_than_s=ratios["x_over_s"] > thresholds.x_over_s,
        wall_gap_much_larger_than_s=ratios["wall_gap_over_s"] > thresholds.wall_gap_over_s,
        t_much_smaller_than_tau=ratios["tau_over_t"] > thresholds.tau_over_t,
    )


def l1_distance(a: np.ndarray, b: np.ndarray, grid: SpaceGrid) -> float:
    return float(trapezoid(np.abs(a - b), grid.points))


def linf_distance(a: np.ndarray, b: np.ndarray) -> float:
    return float(np.max(np.abs(a - b)))


def align_phase(reference: np.ndarray, other: np.ndarray, grid: SpaceGrid) -> np.ndarray:
    """other times the global phase that minimizes its L2 distance to reference."""
    inner = trapezoid(np.conj(other) * reference, grid.points)
    if inner == 0:
        return other
    return other * (inner / abs(inner))


def aligned_l2_distance(a: np.ndarray, b: np.ndarray, grid: SpaceGrid) -> float:
    """min over theta of || a - exp(i theta) b ||_2."""
    aligned = align_phase(a, b, grid)
    return float(math.sqrt(max(trapezoid(np.abs(a - aligned) ** 2, grid.points), 0.0)))


def quadrature_moments(psi: np.ndarray, dpsi: np.ndarray, grid: SpaceGrid) -> Tuple[float, float]:
    """<x> and <p> of a sampled wavefunction by quadrature, normalized on [0, L]."""
    x = grid.points
    norm = trapezoid(np.abs(psi) ** 2, x)
    mean_x = trapezoid(x * np.abs(psi) ** 2, x) / norm
    mean_p = trapezoid(np.conj(psi) * (-1j * grid.params.hbar) * dpsi, x).real / norm
    return float(mean_x), float(mean_p)


def moment_matched_density(v: CoefficientVector, grid: SpaceGrid, t: float) -> np.ndarray:
    """Gaussian with the state's own <x> and dx at time t, as for an oscillator packet."""
    series = observables_at(v, np.array([t]), grid.params)
    centre, width = float(series.mean_x[0]), float(series.delta_x[0])
    x = grid.points
    return np.exp(-((x - centre) ** 2) / (2.0 * width**2)) / (math.sqrt(2.0 * math.pi) * width)
