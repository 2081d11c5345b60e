"""Concrete values for every constant in the |t|^(-1) decay estimate.

For a cutoff radius ``R`` the Cauchy-Schwarz constants are
``(int_{|xi|<R} 1)^(1/2) = sqrt(2R)`` near the origin and
``(int_{|xi|>=R} xi^-2)^(1/2) = sqrt(2/R)`` outside; both are ``sqrt 2`` at
``R = 1``.

* ``B1 = sqrt(2R) ||xi^-1 hat u0||_{|xi|<R} + sqrt(2/R) ||u0||``
* ``B2 = sqrt(2R) ||xi^-2 hat u0||_{|xi|<R} + C2``,
  ``C2 = int_{|xi|>=R} |xi^-2 hat u0|``
* ``B3 = sqrt(2R) ||xi^-1 d hat u0||_{|xi|<R} + C3``,
  ``C3 = int_{|xi|>=R} |xi^-1 d hat u0|``
* ``|t| |u(t, x)| <= (2 pi)^(-1/2) (B1 |x| + B2 + B3)``, and therefore
  ``|u| <= C (1 + |x|) / |t|`` with ``C = (2 pi)^(-1/2) max(B1, B2 + B3)``.

C2 and C3 are integrated up to the spectral edge ``Xi`` of the plan. What
lies beyond is bounded by Cauchy-Schwarz and reported separately:
``(2 / (3 Xi^3))^(1/2) ||u0||`` for C2 and ``(2 / Xi)^(1/2) ||x u0||`` for C3.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .datum import InitialDatum
from .errors import HypothesisError
from .fourier import DEFAULT_PLAN, TransformPlan
from .hypotheses import (
    HypothesisReport,
    Region,
    WeightedNormQuery,
    check,
    transform_evaluators,
    weighted_norm,
)

__all__ = ["BoundConstants", "lemma1_rhs", "lemma2_rhs", "lemma3_rhs", "theorem_constant"]

_INV_SQRT_2PI = 1.0 / math.sqrt(2.0 * math.pi)
_EXTERIOR_CELLS = 4096


@dataclass(frozen=True)
class BoundConstants:
    B1: float
    B2: float
    C2: float
    B3: float
    C3: float
    C: float
    R: float
    C2_tail: float = 0.0
    C3_tail: float = 0.0

    @property
    def slope(self) -> float:
        """Coefficient of ``|x|`` in the affine bound on ``|t| |u|``."""
        return _INV_SQRT_2PI * self.B1

    @property
    def intercept(self) -> float:
        return _INV_SQRT_2PI * (self.B2 + self.B3)

    def affine(self, x):
        return self.slope * np.abs(x) + self.intercept

    def bound(self, t, x):
        """``C (1 + |x|) / |t|``."""
        return self.C * (1.0 + np.abs(x)) / np.abs(t)

    def to_json(self) -> dict:
        return {
            "B1": self.B1,
            "B2": self.B2,
            "C2": self.C2,
            "B3": self.B3,
            "C3": self.C3,
            "C": self.C,
            "R": self.R,
            "tail_uncertainty": {"C2": self.C2_tail, "C3": self.C3_tail},
        }


def _require(ok: bool, datum: InitialDatum, what: str) -> None:
    if not ok:
        raise HypothesisError(f"datum {datum.name!r}: {what} is not finite", module="bounds")


def _near(f, p, R):
    return weighted_norm(WeightedNormQuery(f, p, Region.near_origin(R)))


def _exterior_l1(f, p: int, R: float, upper: float) -> float:
    """``int_{R <= |xi| <= upper} |xi^-p f(xi)| dxi`` by midpoint rule on dyadic shells."""
    if upper <= R:
        return 0.0
    edges = []
    e = R
    while e < upper:
        edges.append(e)
        e *= 2.0
    edges.append(upper)
    total = 0.0
    for lo, hi in zip(edges[:-1], edges[1:]):
        h = (hi - lo) / _EXTERIOR_CELLS
        s = lo + h * (np.arange(_EXTERIOR_CELLS) + 0.5)
        s = np.concatenate([-s[::-1], s])
        total += h * float(np.sum(np.abs(f(s)) * np.abs(s) ** -p))
    return total


def _u0_norm(datum: InitialDatum) -> float:
    res = weighted_norm(WeightedNormQuery(datum.u0, 0, Region.full_line()))
    _require(res.finite, datum, "||u0||")
    return res.value


def _x_u0_norm(datum: InitialDatum) -> float:
    res = weighted_norm(WeightedNormQuery(lambda x: x * datum.u0(x), 0, Region.full_line()))
    _require(res.finite, datum, "||x u0||")
    return res.value


def lemma1_rhs(datum: InitialDatum, R: float = 1.0, plan: TransformPlan = DEFAULT_PLAN) -> float:
    """``sqrt(2R) ||xi^-1 hat u0||_{|xi|<R} + sqrt(2/R) ||u0||_{L2}``."""
    hat, _ = transform_evaluators(datum, plan)
    near = _near(hat, 1, R)
    _require(near.finite, datum, f"||xi^-1 hat u0|| on |xi|<{R:g}")
    return math.sqrt(2 * R) * near.value + math.sqrt(2 / R) * _u0_norm(datum)


def lemma2_rhs(
    datum: InitialDatum, R: float = 1.0, plan: TransformPlan = DEFAULT_PLAN, with_tail: bool = False
):
    """``(B2, C2)``; with ``with_tail`` also the tail bound on C2."""
    hat, _ = transform_evaluators(datum, plan)
    near = _near(hat, 2, R)
    _require(near.finite, datum, f"||xi^-2 hat u0|| on |xi|<{R:g}")
    xi_edge = plan.xi_max
    C2 = _exterior_l1(hat, 2, R, xi_edge)
    B2 = math.sqrt(2 * R) * near.value + C2
    if not with_tail:
        return B2, C2
    tail = math.sqrt(2.0 / (3.0 * xi_edge**3)) * _u0_norm(datum)
    return B2, C2, tail


def lemma3_rhs(
    datum: InitialDatum, R: float = 1.0, plan: TransformPlan = DEFAULT_PLAN, with_tail: bool = False
):
    """``(B3, C3)``; with ``with_tail`` also the tail bound on C3."""
    _, dhat = transform_evaluators(datum, plan)
    x_norm = _x_u0_norm(datum)
    near = _near(dhat, 1, R)
    _require(near.finite, datum, f"||xi^-1 d/dxi hat u0|| on |xi|<{R:g}")
    xi_edge = plan.xi_max
    C3 = _exterior_l1(dhat, 1, R, xi_edge)
    B3 = math.sqrt(2 * R) * near.value + C3
    if not with_tail:
        return B3, C3
    return B3, C3, math.sqrt(2.0 / xi_edge) * x_norm


def theorem_constant(
    datum: InitialDatum,
    R: float = 1.0,
    plan: TransformPlan = DEFAULT_PLAN,
    report: Optional[HypothesisReport] = None,
) -> BoundConstants:
    """All lemma constants and ``C = (2 pi)^(-1/2) max(B1, B2 + B3)``.

    Raises
    ------
    HypothesisError
        If ``datum`` does not satisfy the hypotheses at radius ``R``.
    """
    if report is None:
        report = check(datum, R, plan)
    if not report.compliant:
        raise HypothesisError(
            f"datum {datum.name!r} is not compliant (divergent: {', '.join(report.divergent())})",
            module="bounds",
        )
    B1 = lemma1_rhs(datum, R, plan)
    B2, C2, C2_tail = lemma2_rhs(datum, R, plan, with_tail=True)
    B3, C3, C3_tail = lemma3_rhs(datum, R, plan, with_tail=True)
    C = _INV_SQRT_2PI * max(B1, B2 + B3)
    return BoundConstants(B1, B2, C2, B3, C3, C, R, C2_tail, C3_tail)
