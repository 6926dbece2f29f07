from typing import Optional

import numpy as np
import pandas as pd
from pydantic import BaseModel, ConfigDict, PositiveFloat, model_validator

COLUMNS = ("t", "mean_x", "mean_p", "delta_x", "delta_p", "heisenberg")
POSITION_SLACK = 1e-9


class ObservableSeries(BaseModel):
    """<x>, <p>, their spreads and the product dx*dp (in units of hbar) over time."""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    times: np.ndarray
    mean_x: np.ndarray
    mean_p: np.ndarray
    delta_x: np.ndarray
    delta_p: np.ndarray
    heisenberg: np.ndarray
    length: Optional[PositiveFloat] = None

    @model_validator(mode="after")
    def check_lengths(self):
        lengths = {len(getattr(self, name)) for name in ("times",) + COLUMNS[1:]}
        if len(lengths) != 1:
            raise ValueError("all series must have the same length")
        return self

    @model_validator(mode="after")
    def check_position_inside_well(self):
        if self.length is None or not len(self.mean_x):
            return self
        slack = POSITION_SLACK * self.length
        if np.any(self.mean_x < -slack) or np.any(self.mean_x > self.length + slack):
            raise ValueError(f"<x> leaves [0, {self.length}]")
        return self

    def __len__(self) -> int:
        return len(self.times)

    def to_frame(self) -> pd.DataFrame:
        return pd.DataFrame(
            {
                "t": self.times,
                "mean_x": self.mean_x,
                "mean_p": self.mean_p,
                "delta_x": self.delta_x,
                "delta_p": self.delta_p,
                "heisenberg": self.heisenberg,
            },
            columns=list(COLUMNS),
        )
