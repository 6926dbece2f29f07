import math
from typing import Union

import numpy as np
from pydantic import BaseModel, ConfigDict, PositiveFloat

ArrayLike = Union[int, float, np.ndarray]


class WellParams(BaseModel):
    """Infinite square well of width L for a particle of mass M.

    Defaults are the dimensionless units used throughout the figures:
    M = 1, hbar = 1, L = pi, hence omega = 1/2.
    """

    model_config = ConfigDict(frozen=True, extra="forbid")

    mass: PositiveFloat = 1.0
    length: PositiveFloat = math.pi
    hbar: PositiveFloat = 1.0

    @property
    def omega(self) -> float:
        return math.pi**2 * self.hbar / (2.0 * self.mass * self.length**2)

    @property
    def alpha(self) -> float:
        return math.pi / self.length

    @property
    def spectrum(self) -> "Spectrum":
        return Spectrum(params=self)


class Spectrum(BaseModel):
    """Energies E(n) = hbar*omega*(n+1)^2 and the shifted spectrum n(n+2)."""

    model_config = ConfigDict(frozen=True, extra="forbid")

    params: WellParams

    @staticmethod
    def shifted(n: ArrayLike) -> ArrayLike:
        return n * (n + 2)

    def energy(self, n: ArrayLike) -> ArrayLike:
        p = self.params
        return p.hbar * p.omega * (n + 1) ** 2

    def shifted_energy(self, n: ArrayLike) -> ArrayLike:
        """E(n) - E(0) computed as hbar*omega*n(n+2)."""
        p = self.params
        return p.hbar * p.omega * self.shifted(n)
