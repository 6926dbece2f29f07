"""Custom exceptions for the library and CLI"""
from typing import Optional


class WellCSException(Exception):
    """Base exception for the application"""

    default_code = "WELLCS"

    def __init__(self, message: str, error_code: Optional[str] = None):
        self.message = message
        self.error_code = error_code or self.default_code
        super().__init__(self.message)


class DomainError(WellCSException, ValueError):
    """Precondition violated by an argument"""

    default_code = "DOMAIN"


class ConfigurationError(WellCSException):
    """Error with run configuration"""

    default_code = "CONFIG"


class NumericalContractError(WellCSException):
    """A numerical guarantee could not be honoured"""

    default_code = "NUMERICAL"


class ResolutionError(NumericalContractError):
    """Spatial grid too coarse for the requested basis window"""

    default_code = "RESOLUTION"


class HermiticityError(NumericalContractError):
    """Expectation value of a Hermitian operator came out complex"""

    default_code = "HERMITICITY"


class OverflowGuardError(NumericalContractError):
    """Log-domain amplitude construction overflowed"""

    default_code = "OVERFLOW"
