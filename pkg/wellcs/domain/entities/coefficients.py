from typing import Optional

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, field_validator

from wellcs.domain.value_objects.state_spec import StateSpec


def _frozen(array: np.ndarray) -> np.ndarray:
    array = np.array(array, copy=True)
    array.setflags(write=False)
    return array


class CoefficientVector(BaseModel):
    """Complex amplitudes c_n for the contiguous window n_min .. n_max."""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    n_min: int = Field(ge=0)
    amplitudes: np.ndarray
    spec: Optional[StateSpec] = None

    @field_validator("amplitudes", mode="before")
    @classmethod
    def validate_amplitudes(cls, v):
        array = np.asarray(v, dtype=np.complex128)
        if array.ndim != 1 or array.size == 0:
            raise ValueError("amplitudes must be a non-empty 1-D array")
        if not np.all(np.isfinite(array)):
            raise ValueError("amplitudes must be finite")
        return _frozen(array)

    @property
    def size(self) -> int:
        return int(self.amplitudes.size)

    @property
    def n_max(self) -> int:
        return self.n_min + self.size - 1

    @property
    def indices(self) -> np.ndarray:
        return np.arange(self.n_min, self.n_max + 1)

    @property
    def probabilities(self) -> np.ndarray:
        return np.abs(self.amplitudes) ** 2

    def norm(self) -> float:
        return float(np.sqrt(np.sum(self.probabilities)))

    def with_amplitudes(self, amplitudes: np.ndarray) -> "CoefficientVector":
        """Same window, new amplitudes; spec describes the old amplitudes only, so it is dropped."""
        return CoefficientVector(n_min=self.n_min, amplitudes=amplitudes)

    def restricted(self, n_lo: int, n_hi: int) -> np.ndarray:
        """Amplitudes on [n_lo, n_hi]; indices outside the window read as zero."""
        out = np.zeros(n_hi - n_lo + 1, dtype=np.complex128)
        lo = max(n_lo, self.n_min)
        hi = min(n_hi, self.n_max)
        if lo <= hi:
            out[lo - n_lo : hi - n_lo + 1] = self.amplitudes[lo - self.n_min : hi - self.n_min + 1]
        return out
