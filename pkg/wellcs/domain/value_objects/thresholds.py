from pydantic import BaseModel, ConfigDict, PositiveFloat


class ValidityThresholds(BaseModel):
    """Ratios above which a "much larger than" condition counts as satisfied."""

    model_config = ConfigDict(frozen=True, extra="forbid")

    n0_over_sigma0: PositiveFloat = 10.0
    sigma0: PositiveFloat = 3.0
    x_over_s: PositiveFloat = 5.0
    wall_gap_over_s: PositiveFloat = 5.0
    tau_over_t: PositiveFloat = 5.0
