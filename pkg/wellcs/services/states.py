"""Normalized coefficient vectors for the generalized and Gaussian coherent states."""
import logging
import math
from typing import Union

import numpy as np
from scipy import special

from wellcs.core.config import settings
from wellcs.core.exceptions import DomainError, OverflowGuardError
from wellcs.domain.entities import CoefficientVector
from wellcs.domain.value_objects import GCS, GeCS
from wellcs.services import specfun

logger = logging.getLogger(__name__)

MAX_WINDOW = 50_000_000
GCS_MIN_WIDTHS = 10.0


def _check_tolerance(rel_tail_tol: float) -> None:
    if not 0.0 < rel_tail_tol <= 1e-6:
        raise DomainError(f"rel_tail_tol must lie in (0, 1e-6], got {rel_tail_tol}")


def _phases(n: np.ndarray, phi0: float) -> np.ndarray:
    return np.exp(-1j * n * phi0)


def gecs_log_moduli(z0: float, n: np.ndarray) -> np.ndarray:
    """ln|c_n| = (n+1) ln z0 - [ln I2(2 z0) + ln n! + ln (n+2)!] / 2."""
    n = np.asarray(n, dtype=float)
    log_norm = specfun.log_bessel_I2(2.0 * z0)
    return (n + 1.0) * math.log(z0) - 0.5 * (log_norm + special.gammaln(n + 1.0) + special.gammaln(n + 3.0))


def gecs_series_weights(z0: float, n: np.ndarray) -> np.ndarray:
    """|c_n|^2 normalized by the defining series instead of the Bessel closed form."""
    n = np.asarray(n, dtype=float)
    log_norm = specfun.log_bessel_I2_series(z0)
    log_p = 2.0 * (n + 1.0) * math.log(z0) - special.gammaln(n + 1.0) - special.gammaln(n + 3.0) - log_norm
    return np.exp(log_p)


def build_gecs(spec: GeCS, rel_tail_tol: float = settings.REL_TAIL_TOL) -> CoefficientVector:
    """Generalized coherent state c_n = z0^(n+1) e^(-i n phi0) / sqrt(I2(2 z0) n! (n+2)!)."""
    _check_tolerance(rel_tail_tol)
    z0 = spec.z0

    n_hi = math.ceil(z0 + 40.0 * math.sqrt(z0 + 1.0) + 50.0)
    if not math.isfinite(2.0 * z0) or n_hi > MAX_WINDOW:
        raise OverflowGuardError(f"Generalized coherent state with z0={z0} exceeds the representable window")

    n = np.arange(0, n_hi + 1)
    log_c = gecs_log_moduli(z0, n)
    if not np.all(np.isfinite(log_c)):
        raise OverflowGuardError(f"Log-domain amplitudes overflowed at z0={z0}")

    log_p = 2.0 * log_c
    analytic_mass = float(np.exp(special.logsumexp(log_p)))
    p = np.exp(log_p - log_p.max())
    p /= p.sum()

    above = np.nonzero(p >= rel_tail_tol * p.max())[0]
    lo = max(0, int(above[0]) - 1)
    hi = min(n_hi, int(above[-1]) + 1)
    while 1.0 - p[lo : hi + 1].sum() >= rel_tail_tol and (lo > 0 or hi < n_hi):
        lo = max(0, lo - 1)
        hi = min(n_hi, hi + 1)

    window = n[lo : hi + 1]
    moduli = np.sqrt(p[lo : hi + 1])
    moduli /= np.linalg.norm(moduli)

    logger.debug(
        "Built generalized coherent state",
        extra={"z0": z0, "n_min": lo, "n_max": hi, "analytic_mass": analytic_mass},
    )
    return CoefficientVector(n_min=lo, amplitudes=moduli * _phases(window, spec.phi0), spec=spec)


def _gcs_widths(rel_tail_tol: float) -> float:
    return max(GCS_MIN_WIDTHS, math.sqrt(2.0 * math.log(1.0 / rel_tail_tol)) + 1.0)


def build_gcs(spec: GCS, rel_tail_tol: float = settings.REL_TAIL_TOL) -> CoefficientVector:
    """Gaussian coherent state c_n = exp(-(n-n0)^2/(4 sigma0^2) - i n phi0) / sqrt(N_G)."""
    _check_tolerance(rel_tail_tol)
    n0, sigma0 = spec.n0, spec.sigma0

    k = _gcs_widths(rel_tail_tol)
    lo = max(0, int(math.floor(n0 - k * sigma0)))
    hi = max(lo, int(math.ceil(n0 + k * sigma0)))
    if hi - lo > MAX_WINDOW:
        raise OverflowGuardError(f"Gaussian coherent state window of {hi - lo + 1} terms is too large")

    n = np.arange(lo, hi + 1)
    log_c = -((n - n0) ** 2) / (4.0 * sigma0**2)
    moduli = np.exp(log_c - log_c.max())
    moduli /= np.linalg.norm(moduli)

    n_g = specfun.gaussian_lattice_sum(n0, sigma0)
    logger.debug(
        "Built Gaussian coherent state",
        extra={"n0": n0, "sigma0": sigma0, "n_min": lo, "n_max": hi, "N_G": n_g},
    )
    return CoefficientVector(n_min=lo, amplitudes=moduli * _phases(n, spec.phi0), spec=spec)


def build_state(spec: Union[GeCS, GCS], rel_tail_tol: float = settings.REL_TAIL_TOL) -> CoefficientVector:
    if isinstance(spec, GeCS):
        return build_gecs(spec, rel_tail_tol)
    if isinstance(spec, GCS):
        return build_gcs(spec, rel_tail_tol)
    raise DomainError(f"Unknown state specification: {type(spec).__name__}")


def overlap(a: CoefficientVector, b: CoefficientVector) -> complex:
    """<a|b> over the union of both windows."""
    lo = min(a.n_min, b.n_min)
    hi = max(a.n_max, b.n_max)
    return complex(np.vdot(a.restricted(lo, hi), b.restricted(lo, hi)))
