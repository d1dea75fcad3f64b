"""
Exception hierarchy shared by every cyclosense module
"""


class CyclosenseError(Exception):
    """Base class for simulator errors"""


class ConfigurationError(CyclosenseError, ValueError):
    """Invalid signal, noise or experiment configuration"""


class ContractError(CyclosenseError, ValueError):
    """An operation was called outside its preconditions"""


class DomainError(ContractError):
    """Argument outside the mathematical domain of a function"""


class DimensionError(ContractError):
    """Shapes of frames, streams or channels do not agree"""


class IQFormatError(ContractError):
    """Malformed IQF1 binary frame"""


class SingularMatrixError(CyclosenseError):
    """Matrix is singular or too ill-conditioned to factor"""


class UndecidableFrameError(CyclosenseError):
    """Frame cannot be evaluated (singular sample covariance)"""


class OutputError(CyclosenseError):
    """Result or frame file could not be written or read"""
