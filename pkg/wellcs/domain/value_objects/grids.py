from functools import cached_property

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, NonNegativeFloat, PositiveFloat

from wellcs.core.exceptions import ResolutionError
from wellcs.domain.value_objects.well import WellParams


class SpaceGrid(BaseModel):
    """Uniform sampling of [0, L] including both walls."""

    model_config = ConfigDict(frozen=True, extra="forbid")

    params: WellParams = Field(default_factory=WellParams)
    count: int = Field(ge=2)

    @cached_property
    def points(self) -> np.ndarray:
        x = np.linspace(0.0, self.params.length, self.count)
        x.setflags(write=False)
        return x

    @property
    def spacing(self) -> float:
        return self.params.length / (self.count - 1)

    def points_per_half_wave(self, n: int) -> float:
        """Samples per half-wavelength of the eigenfunction with quantum number n."""
        return (self.count - 1) / (n + 1)

    def require_resolution(self, n: int, points_per_half_wave: int) -> None:
        density = self.points_per_half_wave(n)
        if density < points_per_half_wave:
            raise ResolutionError(
                f"Grid of {self.count} points resolves only {density:.2f} points per "
                f"half-wave at n={n}; need {points_per_half_wave}"
            )


class TimeGrid(BaseModel):
    model_config = ConfigDict(frozen=True, extra="forbid")

    start: NonNegativeFloat = 0.0
    step: PositiveFloat
    count: int = Field(ge=1)

    @cached_property
    def times(self) -> np.ndarray:
        t = self.start + self.step * np.arange(self.count, dtype=float)
        t.setflags(write=False)
        return t
