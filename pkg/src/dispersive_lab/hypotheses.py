"""Decide the three weighted-norm hypotheses of the |t|^(-1) decay estimate.

A datum is *compliant* when

* ``x u0`` is in L2 over the whole line,
* ``xi^-2 hat u0`` is in L2 on ``|xi| < R``,
* ``xi^-1 d/dxi hat u0`` is in L2 on ``|xi| < R``.

Membership near ``xi = 0`` is decided by refinement rather than by a size
cap. The punctured disc is split into dyadic shells
``R 2^-k <= |xi| < R 2^-(k-1)`` and each shell is integrated with a
midpoint rule, so the origin itself is never evaluated. The running sums
over ``k`` behave like ``eps^(1-s)`` for an integrand ``~ |xi|^-s``:

* the shell increments shrink by about 2 per level when the integral
  converges (``s <= 0``); we ask for a factor of at least 1.9 on the last
  three levels and then add the geometric remainder;
* the norm grows by ``2^((s-1)/2)`` per level when it diverges; a growth
  factor of at least 1.2 is reported as divergent;
* anything in between is also reported as divergent, with ``warning`` set,
  since the estimate needs finiteness.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from typing import Callable, Optional

import numpy as np

from . import fourier
from .datum import InitialDatum
from .errors import EvalError
from .fourier import DEFAULT_PLAN, TransformPlan

__all__ = [
    "RegionKind",
    "Region",
    "Status",
    "WeightedNormQuery",
    "WeightedNormResult",
    "HypothesisReport",
    "weighted_norm",
    "check",
    "transform_evaluators",
    "FINITE_RATIO",
    "DIVERGENT_GROWTH",
]

FINITE_RATIO = 1.9
DIVERGENT_GROWTH = 1.2
DEFAULT_LEVELS = 20
DEFAULT_CELLS = 1024


class RegionKind(enum.Enum):
    NEAR_ORIGIN = "NearOrigin"
    EXTERIOR = "Exterior"
    FULL_LINE = "FullLine"


@dataclass(frozen=True)
class Region:
    kind: RegionKind
    R: float = 1.0
    upper: Optional[float] = None  # exterior truncation, e.g. the spectral window edge

    def __post_init__(self):
        if not self.R > 0:
            raise ValueError("region radius must be positive")

    @classmethod
    def near_origin(cls, R: float = 1.0) -> "Region":
        return cls(RegionKind.NEAR_ORIGIN, R)

    @classmethod
    def exterior(cls, R: float = 1.0, upper: Optional[float] = None) -> "Region":
        return cls(RegionKind.EXTERIOR, R, upper)

    @classmethod
    def full_line(cls) -> "Region":
        return cls(RegionKind.FULL_LINE, 1.0)


class Status(enum.Enum):
    FINITE = "finite"
    DIVERGENT = "divergent"


@dataclass(frozen=True)
class WeightedNormQuery:
    function: Callable[[np.ndarray], np.ndarray]
    weight_power: int
    region: Region
    refinement_levels: int = DEFAULT_LEVELS

    def __post_init__(self):
        if self.weight_power < 0:
            raise ValueError("weight power must be nonnegative")
        if self.refinement_levels < 3:
            raise ValueError("need at least three refinement levels")


@dataclass(frozen=True)
class WeightedNormResult:
    status: Status
    value: float
    growth_rate: Optional[float] = None
    samples_per_level: tuple = ()
    warning: bool = False

    @property
    def finite(self) -> bool:
        return self.status is Status.FINITE

    def to_json(self) -> dict:
        out = {"status": self.status.value, "value": self.value}
        if self.growth_rate is not None:
            out["growth_rate"] = self.growth_rate
        if self.warning:
            out["warning"] = "inconclusive refinement"
        return out


@dataclass(frozen=True)
class HypothesisReport:
    x_u0_norm: WeightedNormResult
    xi2_norm: WeightedNormResult
    xi1_deriv_norm: WeightedNormResult
    cutoff_radius: float = 1.0
    compliant: bool = field(init=False)

    def __post_init__(self):
        ok = self.x_u0_norm.finite and self.xi2_norm.finite and self.xi1_deriv_norm.finite
        object.__setattr__(self, "compliant", ok)

    def divergent(self) -> list[str]:
        names = {"x_u0": self.x_u0_norm, "xi2_uhat": self.xi2_norm, "xi1_duhat": self.xi1_deriv_norm}
        return [k for k, v in names.items() if not v.finite]

    def to_json(self) -> dict:
        return {
            "compliant": self.compliant,
            "R": self.cutoff_radius,
            "norms": {
                "x_u0": self.x_u0_norm.to_json(),
                "xi2_uhat": self.xi2_norm.to_json(),
                "xi1_duhat": self.xi1_deriv_norm.to_json(),
            },
        }


def _shell_integral(g, lo, hi, p, cells, offset):
    """Midpoint rule for int_{lo <= |s| < hi} |s^-p g(s)|^2 ds over both signs."""
    h = (hi - lo) / cells
    s = lo + h * (np.arange(cells) + 0.5 + offset)
    s = np.concatenate([-s[::-1], s])
    try:
        vals = np.asarray(g(s), dtype=complex)
    except Exception as exc:  # evaluator failures surface as EvalError
        raise EvalError(f"function could not be evaluated: {exc}") from exc
    if vals.shape != s.shape or not np.all(np.isfinite(vals)):
        raise EvalError("function returned non-finite or misshapen values")
    integrand = np.abs(vals) ** 2 * np.abs(s) ** (-2.0 * p)
    return float(h * np.sum(integrand))


def _shells(g, p, edges, cells, offset):
    return [_shell_integral(g, min(a, b), max(a, b), p, cells, offset) for a, b in zip(edges[:-1], edges[1:])]


def _verdict(shells: list[float]) -> WeightedNormResult:
    cumulative = np.cumsum(shells)
    levels = tuple(math.sqrt(v) for v in cumulative)
    if cumulative[-1] == 0.0:
        return WeightedNormResult(Status.FINITE, 0.0, None, levels)

    def ratio(k):
        prev, cur = shells[k - 1], shells[k]
        if cur == 0.0:
            return math.inf
        return prev / cur

    K = len(shells) - 1
    ratios = [ratio(k) for k in (K - 2, K - 1, K)]
    if all(r >= FINITE_RATIO for r in ratios):
        q = ratios[-1]
        remainder = 0.0 if math.isinf(q) else shells[-1] / (q - 1.0)
        return WeightedNormResult(Status.FINITE, math.sqrt(cumulative[-1] + remainder), None, levels)
    growth = levels[-1] / levels[-2] if levels[-2] > 0 else math.inf
    return WeightedNormResult(Status.DIVERGENT, levels[-1], growth, levels, warning=growth < DIVERGENT_GROWTH)


def weighted_norm(
    query: WeightedNormQuery, cells: int = DEFAULT_CELLS, offset: float = 0.0
) -> WeightedNormResult:
    """``|| xi^-p f ||_{L2(region)}`` with a refinement-based finiteness verdict.

    ``offset`` shifts every midpoint by that fraction of a cell (within
    ``(-0.5, 0.5)``); the verdict must not depend on it.
    """
    g, p, region, K = query.function, query.weight_power, query.region, query.refinement_levels
    if region.kind is RegionKind.NEAR_ORIGIN:
        edges = [region.R * 2.0**-k for k in range(K + 1)]
        return _verdict(_shells(g, p, edges, cells, offset))
    if region.kind is RegionKind.EXTERIOR:
        return _exterior(g, p, region.R, region.upper, K, cells, offset)
    inner = _verdict(_shells(g, p, [2.0**-k for k in range(K + 1)], cells, offset))
    outer = _exterior(g, p, 1.0, region.upper, K, cells, offset)
    for part in (inner, outer):
        if not part.finite:
            return part
    levels = tuple(math.hypot(a, outer.value) for a in inner.samples_per_level)
    return WeightedNormResult(Status.FINITE, math.hypot(inner.value, outer.value), None, levels)


def _exterior(g, p, R, upper, K, cells, offset):
    edges = [R * 2.0**k for k in range(K + 1)]
    if upper is not None:
        if upper <= R:
            return WeightedNormResult(Status.FINITE, 0.0)
        edges = [e for e in edges if e < upper] + [upper]
        shells = _shells(g, p, edges, cells, offset)
        total = float(np.sum(shells))
        return WeightedNormResult(Status.FINITE, math.sqrt(total), None, tuple(np.sqrt(np.cumsum(shells))))
    return _verdict(_shells(g, p, edges, cells, offset))


def transform_evaluators(datum: InitialDatum, plan: TransformPlan = DEFAULT_PLAN):
    """Evaluators for ``hat u0`` and ``d/dxi hat u0``.

    Closed forms are used when the datum has them. Otherwise both come from
    the transform of samples on ``plan``: ``hat u0`` from ``u0`` and its
    derivative from ``-i x u0``.
    """
    hat, dhat = datum.u0_hat, datum.u0_hat_deriv
    if hat is None:
        hat = fourier.spectral_evaluator(fourier.sample(datum.u0, plan))
    if dhat is None:
        dhat = fourier.spectral_evaluator(fourier.sample(lambda x: -1j * x * datum.u0(x), plan))
    return hat, dhat


def check(
    datum: InitialDatum,
    R: float = 1.0,
    plan: TransformPlan = DEFAULT_PLAN,
    levels: int = DEFAULT_LEVELS,
    cells: int = DEFAULT_CELLS,
    offset: float = 0.0,
) -> HypothesisReport:
    """Evaluate all three hypotheses for ``datum`` with cutoff radius ``R``."""
    hat, dhat = transform_evaluators(datum, plan)
    x_u0 = weighted_norm(
        WeightedNormQuery(lambda x: x * datum.u0(x), 0, Region.full_line(), levels), cells, offset
    )
    xi2 = weighted_norm(WeightedNormQuery(hat, 2, Region.near_origin(R), levels), cells, offset)
    xi1d = weighted_norm(WeightedNormQuery(dhat, 1, Region.near_origin(R), levels), cells, offset)
    return HypothesisReport(x_u0, xi2, xi1d, R)
