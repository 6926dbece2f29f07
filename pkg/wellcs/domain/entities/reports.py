import numpy as np
from pydantic import BaseModel, ConfigDict, Field, model_validator


class AsymptoticReport(BaseModel):
    """Exact value of a quantity next to its asymptotic estimate."""

    model_config = ConfigDict(frozen=True)

    argument: float
    exact: float
    asymptotic: float
    relative_error: float = Field(ge=0.0, default=0.0)

    @model_validator(mode="before")
    @classmethod
    def fill_relative_error(cls, data):
        if isinstance(data, dict) and "relative_error" not in data:
            exact, asymptotic = data["exact"], data["asymptotic"]
            data = dict(data)
            data["relative_error"] = abs(exact - asymptotic) / abs(exact) if exact != 0 else abs(asymptotic)
        return data


class EquivalenceReport(BaseModel):
    model_config = ConfigDict(frozen=True)

    z0: float
    fidelity: float = Field(ge=0.0, le=1.0 + 1e-10)
    coeff_l1: float
    max_ratio_dev: float
    max_weight_ratio_dev: float
    prefactor: float
    poisson_gap: float
    near_edge: bool = False


class ValidityCheck(BaseModel):
    """Measured ratios behind the conditions of the Gaussian-packet approximation."""

    model_config = ConfigDict(frozen=True)

    n0_over_sigma0: float
    sigma0: float
    x_over_s: float
    wall_gap_over_s: float
    tau_over_t: float

    n0_much_larger_than_sigma0: bool
    sigma0_much_larger_than_one: bool
    x_much_larger_than_s: bool
    wall_gap_much_larger_than_s: bool
    t_much_smaller_than_tau: bool

    @property
    def all_pass(self) -> bool:
        return (
            self.n0_much_larger_than_sigma0
            and self.sigma0_much_larger_than_one
            and self.x_much_larger_than_s
            and self.wall_gap_much_larger_than_s
            and self.t_much_smaller_than_tau
        )

    def summary(self) -> str:
        return "pass" if self.all_pass else "fail"


class PiExpansionReport(BaseModel):
    """Cosine coefficients of the even 2L-periodic extension, three ways."""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    simplified: np.ndarray
    erf_corrected: np.ndarray
    quadrature: np.ndarray

    @property
    def discrepancy(self) -> float:
        return float(np.max(np.abs(self.simplified - self.quadrature)))

    @property
    def corrected_discrepancy(self) -> float:
        return float(np.max(np.abs(self.erf_corrected - self.quadrature)))


class SineCoefficient(BaseModel):
    """Sine-series coefficient of the approximate wavefunction for one eigenstate."""

    model_config = ConfigDict(frozen=True)

    n: int
    approx: complex
    quadrature: complex
    first_integral: float
    second_integral: float

    @property
    def negligible_ratio(self) -> float:
        if self.second_integral == 0.0:
            return float("inf") if self.first_integral else 0.0
        return self.first_integral / self.second_integral

    @property
    def error(self) -> float:
        return abs(self.approx - self.quadrature)


class SineExpansion(BaseModel):
    """Approximate wavefunction expanded on the eigenbasis over n_min .. n_max.

    coefficients are sqrt(L/2) b_n (eigenbasis weights); identified are the
    Gaussian-state-like weights obtained by matching phases term by term.
    """

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    n_min: int
    coefficients: np.ndarray
    identified: np.ndarray

    @property
    def parseval(self) -> float:
        return float(np.sum(np.abs(self.coefficients) ** 2))


class VerificationCheck(BaseModel):
    """One row of the verify suite: a measured deviation and the bound it must stay under."""

    model_config = ConfigDict(frozen=True)

    check: str
    value: float
    tolerance: float

    @property
    def passed(self) -> bool:
        return bool(self.value <= self.tolerance)
