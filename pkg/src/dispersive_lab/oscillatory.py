"""The three singular oscillatory integrals behind the decay estimate.

With the phase ``E(t, x, xi) = exp(i x xi - i t xi^2 / 2)``::

    I1(t, x) = int E xi^-1 hat u0
    I2(t, x) = int E xi^-2 hat u0
    I3(t, x) = int E xi^-1 d/dxi hat u0

Since ``d/dxi exp(-i t xi^2/2) = -i t xi exp(-i t xi^2/2)``, integrating by
parts in the solution formula gives, for ``t != 0``,

    u(t, x) = (2 pi)^(-1/2) t^-1 (x I1 + i I2 - i I3).

Carrying out the product rule on ``exp(i x xi) xi^-1 hat u0`` with the
``(-i t)^-1`` prefactor gives that sign. The opposite overall sign,
``-x I1 - i I2 + i I3``, returns ``-u``; for ``hermite2`` at ``x = 0`` it
gives ``-(1 + i t)^(-3/2)`` instead of the exact ``(1 + i t)^(-3/2)``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .datum import InitialDatum
from .errors import DomainError, HypothesisError, ResolutionError
from .fourier import DEFAULT_PLAN, TransformPlan
from .hypotheses import HypothesisReport, check, transform_evaluators

__all__ = ["PartIntegrals", "parts", "combine", "reconstruct", "phase_identity_check", "integration_limit"]

_INV_SQRT_2PI = 1.0 / math.sqrt(2.0 * math.pi)
_MAX_CELLS = 2**22
_NEGLIGIBLE = 1e-16


@dataclass(frozen=True)
class PartIntegrals:
    t: float
    x: float
    I1: complex
    I2: complex
    I3: complex
    quadrature_error_estimate: float
    cells: int = 0

    def to_json(self) -> dict:
        def c(z):
            return {"re": z.real, "im": z.imag, "abs": abs(z)}

        return {
            "t": self.t,
            "x": self.x,
            "I1": c(self.I1),
            "I2": c(self.I2),
            "I3": c(self.I3),
            "quadrature_error_estimate": self.quadrature_error_estimate,
        }


def integration_limit(hat, dhat, plan: TransformPlan = DEFAULT_PLAN) -> float:
    """Frequency beyond which both ``hat u0`` and its derivative are negligible.

    Capped at the spectral edge of ``plan``, where numerically transformed
    data stop carrying information.
    """
    xi = plan.xi[plan.xi > 0]
    mag = np.maximum(np.abs(hat(xi)), np.abs(dhat(xi)))
    peak = mag.max()
    if peak == 0.0:
        return 0.0
    idx = np.nonzero(mag > _NEGLIGIBLE * peak)[0]
    return float(min(plan.xi_max, xi[idx[-1]] + plan.dxi))


def _midpoint(hat, dhat, t, x, limit, cells):
    # symmetric about 0, an even cell count keeps xi = 0 on a cell edge
    h = 2.0 * limit / cells
    xi = -limit + h * (np.arange(cells) + 0.5)
    phase = np.exp(1j * (x * xi - 0.5 * t * xi**2))
    a, b = hat(xi), dhat(xi)
    inv = 1.0 / xi
    g1 = phase * a * inv
    return (
        h * np.sum(g1),
        h * np.sum(g1 * inv),
        h * np.sum(phase * b * inv),
    )


def _ensure_compliant(datum, report, plan):
    if report is None:
        report = check(datum, 1.0, plan)
    if not report.compliant:
        raise HypothesisError(
            f"datum {datum.name!r} is not compliant (divergent: {', '.join(report.divergent())})",
            module="oscillatory",
        )


def parts(
    datum: InitialDatum,
    t: float,
    x: float,
    plan: TransformPlan = DEFAULT_PLAN,
    report: Optional[HypothesisReport] = None,
) -> PartIntegrals:
    """Evaluate I1, I2, I3 at ``(t, x)`` by refined midpoint quadrature.

    The cell count doubles until all three values move by less than
    ``plan.tolerance`` (relative to ``max(1, |I|)``); the last change is
    the reported error estimate.
    """
    _ensure_compliant(datum, report, plan)
    hat, dhat = transform_evaluators(datum, plan)
    limit = integration_limit(hat, dhat, plan)
    if limit == 0.0:
        return PartIntegrals(float(t), float(x), 0j, 0j, 0j, 0.0)
    # start with at least 8 cells per local oscillation period
    freq = abs(x) + abs(t) * limit
    cells = 256
    while cells < _MAX_CELLS and 2.0 * limit / cells > 2.0 * math.pi / (8.0 * max(freq, 1.0)):
        cells *= 2
    prev = _midpoint(hat, dhat, t, x, limit, cells)
    while True:
        cells *= 2
        if cells > _MAX_CELLS:
            raise ResolutionError(
                f"oscillatory quadrature did not converge at t={t:g}, x={x:g}", module="oscillatory"
            )
        cur = _midpoint(hat, dhat, t, x, limit, cells)
        delta = max(abs(c - p) / max(1.0, abs(c)) for c, p in zip(cur, prev))
        if delta < plan.tolerance:
            return PartIntegrals(float(t), float(x), *map(complex, cur), quadrature_error_estimate=float(delta), cells=cells)
        prev = cur


def combine(p: PartIntegrals) -> complex:
    """``(2 pi)^(-1/2) t^-1 (x I1 + i I2 - i I3)``."""
    return _INV_SQRT_2PI / p.t * (p.x * p.I1 + 1j * p.I2 - 1j * p.I3)


def reconstruct(
    datum: InitialDatum,
    t: float,
    x: float,
    plan: TransformPlan = DEFAULT_PLAN,
    report: Optional[HypothesisReport] = None,
) -> complex:
    """``u(t, x)`` rebuilt from I1, I2, I3; undefined at ``t = 0``."""
    if t == 0:
        raise DomainError("the integration-by-parts identity needs t != 0", module="oscillatory")
    return combine(parts(datum, t, x, plan, report))


def phase_identity_check(t: float, xi_samples, h: float = 1e-4) -> float:
    """Max deviation of a central difference of ``exp(-i t xi^2/2)`` from ``-i t xi`` times it."""
    xi = np.asarray(xi_samples, dtype=float)
    if xi.size == 0:
        return 0.0

    def phase(s):
        return np.exp(-0.5j * t * s**2)

    fd = (phase(xi + h) - phase(xi - h)) / (2.0 * h)
    return float(np.max(np.abs(fd - (-1j * t * xi) * phase(xi))))
