"""Numerical laboratory for dispersive decay of the free Schrodinger equation in 1-D."""

from .datum import InitialDatum, builtin, load, load_file, scale, zero
from .errors import (
    DegenerateTrace,
    DomainError,
    EvalError,
    GridError,
    HypothesisError,
    LabError,
    NotFound,
    ParseError,
    ResolutionError,
    TailError,
    Unsupported,
)
from .fourier import DEFAULT_PLAN, SampledFunction, TransformPlan

__version__ = "0.1.0"
