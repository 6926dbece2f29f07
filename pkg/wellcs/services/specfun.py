"""Special functions and asymptotic-series tooling for the normalization analysis."""
import logging
import math
from fractions import Fraction
from functools import lru_cache
from typing import List, Union

import numpy as np
from numpy.polynomial import hermite
from scipy import special

from wellcs.core.exceptions import DomainError, OverflowGuardError
from wellcs.domain.entities import AsymptoticReport

logger = logging.getLogger(__name__)

BESSEL_CROSSOVER = 30.0
BERNOULLI_MAX_INDEX = 80
LATTICE_WINDOW_SIGMAS = 10.0
_SERIES_REL_EPS = 1e-17


def bessel_I2_scaled_series(x: float) -> float:
    """exp(-x) * I2(x) by the power series sum_k (x/2)^(2k+2) / (k! (k+2)!)."""
    if x < 0.0:
        raise DomainError(f"bessel_I2_scaled requires x >= 0, got {x}")
    if x == 0.0:
        return 0.0

    q = (x / 2.0) ** 2
    term = q / 2.0
    peak = term
    terms = [term]
    k = 0
    # Positive terms; stop once past the peak and negligible against it.
    while True:
        ratio = q / ((k + 1) * (k + 3))
        term *= ratio
        k += 1
        terms.append(term)
        peak = max(peak, term)
        if ratio < 1.0 and term < _SERIES_REL_EPS * peak:
            break
    return math.fsum(terms) * math.exp(-x)


def bessel_I2_scaled_asymptotic(x: float) -> float:
    """Large-argument expansion exp(-x) I2(x) ~ (2 pi x)^(-1/2) sum_k (-1)^k a_k / x^k."""
    if x <= 0.0:
        raise DomainError(f"Asymptotic branch requires x > 0, got {x}")

    mu = 16.0  # 4 * nu^2 for nu = 2
    terms = [1.0]
    term = 1.0
    k = 1
    while True:
        nxt = -term * (mu - (2 * k - 1) ** 2) / (k * 8.0 * x)
        # Optimal truncation: stop before the terms start to grow.
        if abs(nxt) >= abs(term):
            break
        terms.append(nxt)
        if abs(nxt) < _SERIES_REL_EPS:
            break
        term = nxt
        k += 1
    return math.fsum(terms) / math.sqrt(2.0 * math.pi * x)


def bessel_I2_scaled(x: float) -> float:
    """exp(-x) * I2(x), total on x >= 0; series below the crossover, asymptotics above."""
    if x < 0.0:
        raise DomainError(f"bessel_I2_scaled requires x >= 0, got {x}")
    if x <= BESSEL_CROSSOVER:
        return bessel_I2_scaled_series(x)
    return bessel_I2_scaled_asymptotic(x)


def log_bessel_I2(x: float) -> float:
    """ln I2(x) for x > 0 without forming I2 itself."""
    if x <= 0.0:
        raise DomainError(f"log_bessel_I2 requires x > 0, got {x}")
    return x + math.log(bessel_I2_scaled(x))


def log_bessel_I2_series(z0: float) -> float:
    """ln of sum_{n>=0} z0^(2(n+1)) / (n! (n+2)!), the defining series of I2(2 z0)."""
    if z0 <= 0.0:
        raise DomainError(f"z0 must be positive, got {z0}")
    n_hi = int(math.ceil(z0 + 20.0 * math.sqrt(z0) + 50.0))
    n = np.arange(0, n_hi + 1, dtype=float)
    log_terms = 2.0 * (n + 1.0) * math.log(z0) - special.gammaln(n + 1.0) - special.gammaln(n + 3.0)
    return float(special.logsumexp(log_terms))


def bessel_I2_series_normalization(z0: float) -> float:
    """Normalization of the generalized coherent state as its defining series; equals I2(2 z0)."""
    log_value = log_bessel_I2_series(z0)
    if log_value > math.log(np.finfo(float).max):
        raise OverflowGuardError(f"Series normalization overflows double precision at z0={z0}")
    return math.exp(log_value)


def erf(x: Union[float, complex, np.ndarray]) -> Union[float, complex, np.ndarray]:
    """Error function, real or complex argument."""
    return special.erf(x)


def erf_asymptotic(x: float) -> float:
    """One-term large-argument form 1 - exp(-x^2) / (sqrt(pi) x)."""
    if x <= 0.0:
        raise DomainError(f"erf_asymptotic requires x > 0, got {x}")
    return 1.0 - math.exp(-x * x) / (math.sqrt(math.pi) * x)


@lru_cache(maxsize=None)
def _bernoulli_fractions() -> tuple:
    table = [Fraction(1)]
    for m in range(1, BERNOULLI_MAX_INDEX + 1):
        acc = sum(math.comb(m + 1, k) * table[k] for k in range(m))
        table.append(-acc / (m + 1))
    return tuple(table)


def bernoulli_numbers(k_max: int) -> List[float]:
    """B_0 .. B_k_max (convention B_1 = -1/2)."""
    if k_max < 0 or k_max > BERNOULLI_MAX_INDEX:
        raise DomainError(f"Bernoulli numbers available for 0 <= k <= {BERNOULLI_MAX_INDEX}, got {k_max}")
    return [float(b) for b in _bernoulli_fractions()[: k_max + 1]]


def _even_bernoulli_weight(k: int) -> float:
    """B_2k / (2k)!"""
    return float(_bernoulli_fractions()[2 * k] / math.factorial(2 * k))


def bernoulli_coth_check(x: float, k_max: int) -> float:
    """|coth(x/2)/2 - 1/x - sum_{k<=k_max} B_2k/(2k)! x^(2k-1)| inside 0 < |x| < 2 pi."""
    if not 0.0 < abs(x) < 2.0 * math.pi:
        raise DomainError(f"Bernoulli expansion of coth converges for 0 < |x| < 2 pi, got {x}")
    if k_max < 1 or 2 * k_max > BERNOULLI_MAX_INDEX:
        raise DomainError(f"k_max must lie in [1, {BERNOULLI_MAX_INDEX // 2}], got {k_max}")

    series = math.fsum(_even_bernoulli_weight(k) * x ** (2 * k - 1) for k in range(1, k_max + 1))
    return abs(0.5 / math.tanh(x / 2.0) - 1.0 / x - series)


def boundary_bernoulli_constant(k_max: int) -> float:
    """1/2 - sum_{k<=k_max} B_2k/(2k)! 2^(2k-1); tends to 1 - coth(1)/2."""
    if k_max < 1 or 2 * k_max > BERNOULLI_MAX_INDEX:
        raise DomainError(f"k_max must lie in [1, {BERNOULLI_MAX_INDEX // 2}], got {k_max}")
    return 0.5 - math.fsum(_even_bernoulli_weight(k) * 2.0 ** (2 * k - 1) for k in range(1, k_max + 1))


def gaussian_lattice_sum(mean: float, variance_param: float, shift: int = 0) -> float:
    """sum_{n>=0} exp(-(n + shift - mean)^2 / (2 variance_param^2)).

    The window spans ten widths either side of the centre, where terms fall
    below 1e-21 of the peak, and is clamped at n = 0.
    """
    if variance_param <= 0.0:
        raise DomainError(f"Gaussian width must be positive, got {variance_param}")

    centre = mean - shift
    n_lo = max(0, int(math.floor(centre - LATTICE_WINDOW_SIGMAS * variance_param)))
    n_hi = int(math.ceil(centre + LATTICE_WINDOW_SIGMAS * variance_param))
    if n_hi < n_lo:
        # Entire Gaussian sits left of the clamp; keep the nearest term.
        n_hi = n_lo
    n = np.arange(n_lo, n_hi + 1, dtype=float)
    terms = np.exp(-((n - centre) ** 2) / (2.0 * variance_param**2))
    return math.fsum(terms.tolist())


def euler_maclaurin_N(z0: float) -> AsymptoticReport:
    """Exact Gaussian normalization with n0 = z0 - 1, sigma0^2 = z0/2 against its asymptotic form."""
    if z0 <= 1.0:
        raise DomainError(f"z0 must exceed 1, got {z0}")

    exact = gaussian_lattice_sum(z0 - 1.0, math.sqrt(z0 / 2.0))
    asymptotic = math.sqrt(math.pi * z0) + math.exp(-((1.0 - z0) ** 2) / z0) / (1.0 - math.e**2)
    report = AsymptoticReport(argument=z0, exact=exact, asymptotic=asymptotic)
    logger.debug("Euler-Maclaurin normalization", extra=report.model_dump())
    return report


def euler_maclaurin_gaussian(z0: float, k_max: int) -> AsymptoticReport:
    """Full Euler-Maclaurin evaluation of sum_{n>=0} exp(-(n+1-z0)^2/z0).

    Integral over the half-line, half the boundary value, and the Bernoulli
    corrections with Gaussian derivatives taken from Hermite polynomials.
    """
    if z0 <= 1.0:
        raise DomainError(f"z0 must exceed 1, got {z0}")
    if k_max < 0 or 2 * k_max > BERNOULLI_MAX_INDEX:
        raise DomainError(f"k_max must lie in [0, {BERNOULLI_MAX_INDEX // 2}], got {k_max}")

    root = math.sqrt(z0)
    u0 = (1.0 - z0) / root
    gauss0 = math.exp(-u0 * u0)

    integral = 0.5 * math.sqrt(math.pi * z0) * (1.0 + float(special.erf((z0 - 1.0) / root)))
    corrections = []
    for k in range(1, k_max + 1):
        order = 2 * k - 1
        unit = np.zeros(order + 1)
        unit[order] = 1.0
        # d^m/dx^m exp(-u^2) = (-1)^m z0^(-m/2) H_m(u) exp(-u^2), u = (x - z0 + 1)/sqrt(z0)
        derivative = (-1.0) ** order * root ** (-order) * float(hermite.hermval(u0, unit)) * gauss0
        corrections.append(-_even_bernoulli_weight(k) * derivative)

    asymptotic = math.fsum([integral, 0.5 * gauss0, *corrections])
    exact = gaussian_lattice_sum(z0 - 1.0, math.sqrt(z0 / 2.0))
    return AsymptoticReport(argument=z0, exact=exact, asymptotic=asymptotic)
