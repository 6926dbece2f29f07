from wellcs.domain.value_objects.grids import SpaceGrid, TimeGrid
from wellcs.domain.value_objects.state_spec import GCS, GeCS, StateSpec
from wellcs.domain.value_objects.thresholds import ValidityThresholds
from wellcs.domain.value_objects.well import Spectrum, WellParams

__all__ = ["GCS", "GeCS", "SpaceGrid", "Spectrum", "StateSpec", "TimeGrid", "ValidityThresholds", "WellParams"]
