import numpy as np
from pydantic import BaseModel, ConfigDict, Field


class LadderMatrices(BaseModel):
    """Truncated a, a-dagger and number operator on span{psi_0 .. psi_{D-1}}."""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    dimension: int = Field(ge=2)
    a: np.ndarray
    a_dagger: np.ndarray
    number: np.ndarray


class Su11Report(BaseModel):
    """Largest entries of the three commutator residuals on the interior block."""

    model_config = ConfigDict(frozen=True)

    dimension: int
    tolerance: float
    lowering_residual: float
    raising_residual: float
    closure_residual: float

    @property
    def max_residual(self) -> float:
        return max(self.lowering_residual, self.raising_residual, self.closure_residual)

    @property
    def passed(self) -> bool:
        return self.max_residual <= self.tolerance


class RealizationReport(BaseModel):
    model_config = ConfigDict(frozen=True)

    dimension: int
    grid_points: int
    fd_order: int
    residuals: list[float]

    @property
    def max_residual(self) -> float:
        return max(self.residuals) if self.residuals else 0.0
