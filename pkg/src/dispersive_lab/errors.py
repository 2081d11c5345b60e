"""Exception hierarchy shared by every module of the lab."""


class LabError(Exception):
    """Base class. ``module`` names the subsystem that raised it."""

    module = "lab"

    def __init__(self, message, module=None):
        super().__init__(message)
        if module is not None:
            self.module = module


class NotFound(LabError):
    module = "datum"


class ParseError(LabError):
    module = "datum"


class GridError(LabError):
    module = "fourier"


class DomainError(LabError):
    module = "fourier"


class ResolutionError(LabError):
    module = "propagator"


class TailError(ResolutionError):
    module = "propagator"


class Unsupported(LabError):
    module = "propagator"


class EvalError(LabError):
    module = "hypotheses"


class HypothesisError(LabError):
    module = "hypotheses"


class DegenerateTrace(LabError):
    module = "decay"
