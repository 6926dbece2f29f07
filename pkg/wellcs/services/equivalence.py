"""Large-z0 equivalence between generalized and Gaussian coherent states."""
import logging
import math

import numpy as np
from scipy import stats

from wellcs.core.config import settings
from wellcs.core.exceptions import DomainError
from wellcs.domain.entities import EquivalenceReport
from wellcs.domain.value_objects import GCS, GeCS
from wellcs.services import specfun
from wellcs.services.states import build_gcs, build_gecs, overlap

logger = logging.getLogger(__name__)

CENTRAL_WIDTHS = 3.0


def _require_above_one(z0: float) -> None:
    if z0 <= 1.0:
        raise DomainError(f"z0 must exceed 1 so that n0 = z0 - 1 is positive, got {z0}")


def map_parameters(z0: float, phi0: float = 0.0) -> GCS:
    """n0 = z0 - 1, sigma0 = sqrt(z0/2)."""
    _require_above_one(z0)
    return GCS(n0=z0 - 1.0, sigma0=math.sqrt(z0 / 2.0), phi0=phi0)


def gaussian_weight_prefactor(z0: float) -> float:
    """exp(2 z0) N_G / (2 pi z0 I2(2 z0)); tends to 1 as z0 grows."""
    _require_above_one(z0)
    n_g = specfun.gaussian_lattice_sum(z0 - 1.0, math.sqrt(z0 / 2.0))
    return n_g / (2.0 * math.pi * z0 * specfun.bessel_I2_scaled(2.0 * z0))


def poisson_gaussian_gap(z0: float) -> float:
    """Total-variation distance between Poisson(z0) in m = n + 1 and the discretized normal law.

    Both laws are restricted to m >= 1 and renormalized.
    """
    _require_above_one(z0)
    m = np.arange(1, int(math.ceil(z0 + 20.0 * math.sqrt(z0) + 20.0)) + 1)
    poisson = stats.poisson.pmf(m, z0)
    gaussian = stats.norm.pdf(m, loc=z0, scale=math.sqrt(z0))
    poisson = poisson / poisson.sum()
    gaussian = gaussian / gaussian.sum()
    return float(0.5 * np.sum(np.abs(poisson - gaussian)))


def equivalence_report(
    z0: float,
    phi0: float = 0.0,
    rel_tail_tol: float = settings.REL_TAIL_TOL,
) -> EquivalenceReport:
    _require_above_one(z0)
    gcs_spec = map_parameters(z0, phi0)
    ge = build_gecs(GeCS(z0=z0, phi0=phi0), rel_tail_tol)
    g = build_gcs(gcs_spec, rel_tail_tol)

    fidelity = abs(overlap(ge, g)) ** 2

    lo, hi = min(ge.n_min, g.n_min), max(ge.n_max, g.n_max)
    n = np.arange(lo, hi + 1, dtype=float)
    p_ge = np.abs(ge.restricted(lo, hi)) ** 2
    p_g = np.abs(g.restricted(lo, hi)) ** 2
    ratio = (n + 1.0) / (n + 2.0)
    prefactor = gaussian_weight_prefactor(z0)
    coeff_l1 = float(np.sum(np.abs(p_ge - p_g * ratio * prefactor)))

    central = (np.abs(n - gcs_spec.n0) <= CENTRAL_WIDTHS * gcs_spec.sigma0) & (p_g > 0.0)
    max_ratio_dev = float(np.max(np.abs(ratio[central] - 1.0)))
    max_weight_ratio_dev = float(np.max(np.abs(p_ge[central] / p_g[central] - 1.0)))

    report = EquivalenceReport(
        z0=z0,
        fidelity=min(fidelity, 1.0),
        coeff_l1=coeff_l1,
        max_ratio_dev=max_ratio_dev,
        max_weight_ratio_dev=max_weight_ratio_dev,
        prefactor=prefactor,
        poisson_gap=poisson_gaussian_gap(z0),
        near_edge=z0 <= settings.EQUIVALENCE_WARN_Z0,
    )
    if report.near_edge:
        logger.warning("z0 close to the validity edge of the parameter map", extra={"z0": z0})
    logger.info("Equivalence report", extra=report.model_dump())
    return report
