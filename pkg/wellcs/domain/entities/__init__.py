from wellcs.domain.entities.coefficients import CoefficientVector
from wellcs.domain.entities.operators import LadderMatrices, RealizationReport, Su11Report
from wellcs.domain.entities.packet import GaussianPacket
from wellcs.domain.entities.reports import (
    AsymptoticReport,
    EquivalenceReport,
    PiExpansionReport,
    SineCoefficient,
    SineExpansion,
    ValidityCheck,
    VerificationCheck,
)
from wellcs.domain.entities.series import ObservableSeries

__all__ = [
    "AsymptoticReport",
    "CoefficientVector",
    "EquivalenceReport",
    "GaussianPacket",
    "LadderMatrices",
    "ObservableSeries",
    "PiExpansionReport",
    "RealizationReport",
    "SineCoefficient",
    "SineExpansion",
    "Su11Report",
    "ValidityCheck",
    "VerificationCheck",
]
