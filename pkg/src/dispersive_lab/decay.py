"""Decay traces, power-law fits and the pointwise bound audit."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np

from . import propagator
from ._parallel import map_ordered
from .bounds import BoundConstants
from .datum import InitialDatum
from .errors import DegenerateTrace, DomainError, HypothesisError
from .fourier import TransformPlan
from .hypotheses import HypothesisReport, check
from .propagator import Grid

__all__ = [
    "AtPoint",
    "WeightedSup",
    "DecayTrace",
    "DecayFit",
    "AuditResult",
    "magnitudes_at",
    "trace",
    "fit",
    "audit_bound",
]

MIN_FIT_POINTS = 5


@dataclass(frozen=True)
class AtPoint:
    x0: float = 0.0

    def grid(self) -> Grid:
        return Grid(float(self.x0), 1.0, 1)

    def reduce(self, x, u) -> float:
        return float(np.abs(u[0]))

    def label(self) -> str:
        return f"point({self.x0:g})"


@dataclass(frozen=True)
class WeightedSup:
    """``max_x |u(t, x)| / (1 + |x|)`` over a uniform window."""

    x_min: float = -10.0
    x_max: float = 10.0
    n: int = 201

    def grid(self) -> Grid:
        return Grid.span(self.x_min, self.x_max, self.n)

    def reduce(self, x, u) -> float:
        return float(np.max(np.abs(u) / (1.0 + np.abs(x))))

    def label(self) -> str:
        return f"sup[{self.x_min:g},{self.x_max:g}]"


@dataclass(frozen=True)
class DecayTrace:
    datum_name: str
    observable: object
    t_values: np.ndarray
    magnitudes: np.ndarray
    source: str = "evolve"

    def __post_init__(self):
        t = np.asarray(self.t_values, dtype=float)
        m = np.asarray(self.magnitudes, dtype=float)
        if t.shape != m.shape:
            raise DomainError("t values and magnitudes differ in length", module="decay")
        if t.size > 1 and np.any(np.diff(t) <= 0):
            raise DomainError("t values must be strictly increasing", module="decay")
        if np.any(m < 0):
            raise DomainError("magnitudes must be nonnegative", module="decay")
        object.__setattr__(self, "t_values", t)
        object.__setattr__(self, "magnitudes", m)

    def rows(self):
        label = self.observable.label()
        for t, m in zip(self.t_values, self.magnitudes):
            yield (float(t), float(m), label, self.datum_name)


@dataclass(frozen=True)
class DecayFit:
    exponent: float
    log_amplitude: float
    r_squared: float
    n_points: int

    def to_json(self) -> dict:
        return {
            "exponent": self.exponent,
            "log_amplitude": self.log_amplitude,
            "r_squared": self.r_squared,
            "n_points": self.n_points,
        }


@dataclass(frozen=True)
class AuditResult:
    max_ratio: float
    t_values: np.ndarray
    x_values: np.ndarray
    abs_u: np.ndarray = field(repr=False)
    bound: np.ndarray = field(repr=False)

    @property
    def ratios(self) -> np.ndarray:
        with np.errstate(divide="ignore", invalid="ignore"):
            return np.where(self.bound > 0, self.abs_u / self.bound, np.where(self.abs_u > 0, np.inf, 0.0))

    def rows(self):
        ratios = self.ratios
        for i, t in enumerate(self.t_values):
            for j, x in enumerate(self.x_values):
                yield (float(t), float(x), float(self.abs_u[i, j]), float(self.bound[i, j]), float(ratios[i, j]))


def magnitudes_at(
    datum: InitialDatum, t: float, grid: Grid, plan: Optional[TransformPlan] = None, source: str = "evolve"
) -> np.ndarray:
    """``|u(t, x)|`` on ``grid`` from the numerical or the closed-form solution."""
    if source == "exact":
        field_ = propagator.evolve_exact(datum, t, grid)
    else:
        field_ = propagator.evolve(datum, t, plan=plan, x_grid=grid)
    return np.abs(field_.samples.values)


def _resolve_source(datum: InitialDatum, source: str) -> str:
    if source == "auto":
        return "exact" if datum.exact_evolution is not None else "evolve"
    if source not in ("evolve", "exact"):
        raise ValueError(f"unknown source {source!r}")
    return source


def trace(
    datum: InitialDatum,
    observable,
    t_values: Sequence[float],
    plan: Optional[TransformPlan] = None,
    source: str = "evolve",
) -> DecayTrace:
    """Record the observable of ``|u(t, .)|`` at each time.

    ``source`` is ``"evolve"`` (spectral solver), ``"exact"`` (closed form)
    or ``"auto"`` (closed form when available); the trace records which.
    With ``plan=None`` each time gets its own adequate plan.
    """
    source = _resolve_source(datum, source)
    grid = observable.grid()
    x = grid.points

    def one(t):
        return observable.reduce(x, magnitudes_at(datum, t, grid, plan, source))

    mags = map_ordered(one, [float(t) for t in t_values])
    return DecayTrace(datum.name, observable, np.asarray(t_values, dtype=float), np.asarray(mags), source)


def fit(tr: DecayTrace, t_min_fit: float = 10.0) -> DecayFit:
    """Least-squares line through ``(ln t, ln magnitude)`` for ``t >= t_min_fit``."""
    keep = (tr.t_values >= t_min_fit) & (tr.magnitudes > 0)
    if not np.any(tr.magnitudes > 0):
        raise DegenerateTrace("all magnitudes are zero")
    if keep.sum() < MIN_FIT_POINTS:
        raise DegenerateTrace(
            f"need at least {MIN_FIT_POINTS} positive points with t >= {t_min_fit:g}, have {int(keep.sum())}"
        )
    X = np.log(tr.t_values[keep])
    Y = np.log(tr.magnitudes[keep])
    dX = X - X.mean()
    dY = Y - Y.mean()
    slope = float(np.sum(dX * dY) / np.sum(dX * dX))
    intercept = float(Y.mean() - slope * X.mean())
    ss_res = float(np.sum((dY - slope * dX) ** 2))
    ss_tot = float(np.sum(dY * dY))
    r2 = 1.0 if ss_tot == 0.0 else 1.0 - ss_res / ss_tot
    return DecayFit(slope, intercept, min(1.0, max(0.0, r2)), int(keep.sum()))


def audit_bound(
    datum: InitialDatum,
    constants: BoundConstants,
    t_grid: Sequence[float],
    x_grid: Grid,
    plan: Optional[TransformPlan] = None,
    report: Optional[HypothesisReport] = None,
    source: str = "evolve",
) -> AuditResult:
    """Largest ``|u(t, x)| / (C (1 + |x|) / |t|)`` over the grid.

    A value at most 1 certifies the pointwise bound on the sampled grid.
    Times must satisfy ``|t| >= 1``; below that the bound says nothing useful.
    """
    if report is None:
        report = check(datum, constants.R)
    if not report.compliant:
        raise HypothesisError(
            f"datum {datum.name!r} is not compliant (divergent: {', '.join(report.divergent())})",
            module="decay",
        )
    t = np.asarray(t_grid, dtype=float)
    if t.size == 0 or np.any(np.abs(t) < 1.0):
        raise DomainError("audit times must satisfy |t| >= 1", module="decay")
    source = _resolve_source(datum, source)
    x = x_grid.points
    abs_u = np.array(map_ordered(lambda s: magnitudes_at(datum, s, x_grid, plan, source), list(t)))
    bound = constants.bound(t[:, None], x[None, :])
    res = AuditResult(0.0, t, x, abs_u, bound)
    ratios = res.ratios
    return AuditResult(float(np.max(ratios)) if ratios.size else 0.0, t, x, abs_u, bound)
