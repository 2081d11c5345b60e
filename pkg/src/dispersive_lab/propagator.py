"""Exact evolution of the free Schrodinger equation through its Fourier multiplier.

``u(t) = inverse(exp(-i t xi^2 / 2) * forward(u0))``. No time stepping is
involved; the only sources of error are the finite window and grid, and
those are policed rather than trusted:

* the phase ``t xi^2 / 2`` must change by at most ``pi/4`` between
  neighbouring frequency samples across the band where ``hat u0`` is
  non-negligible, i.e. ``|t| * band * dxi <= pi/4``;
* after evolution the outer tenth of the window on each side must hold
  less than ``1e-8`` of the mass, otherwise the periodic transform has
  wrapped the spreading packet around.

Violations raise :class:`ResolutionError` / :class:`TailError` carrying a
suggested plan. :func:`adequate_plan` builds such a plan directly, and
:func:`evolve` uses it when no plan is given.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from typing import NamedTuple, Optional

import numpy as np

from . import fourier
from .datum import InitialDatum
from .errors import DomainError, ResolutionError, TailError, Unsupported
from .fourier import DEFAULT_PLAN, Domain, SampledFunction, TransformPlan

__all__ = [
    "Grid",
    "EvolutionRequest",
    "WaveField",
    "PHASE_LIMIT",
    "TAIL_MASS",
    "bandwidth",
    "t_max",
    "band_cap",
    "adequate_plan",
    "propagate",
    "evolve",
    "evolve_exact",
    "residual",
    "second_derivative",
]

PHASE_LIMIT = math.pi / 4
TAIL_MASS = 1e-8
TAIL_BAND = 0.1
MAX_POINTS = 2**22

_SQRT_2PI = math.sqrt(2.0 * math.pi)


class Grid(NamedTuple):
    """Uniform evaluation grid ``x0 + i * dx`` for ``i < n``."""

    x0: float
    dx: float
    n: int

    @classmethod
    def span(cls, lo: float, hi: float, n: int) -> "Grid":
        if n < 1 or hi < lo:
            raise DomainError("grid range must be nonempty")
        if n == 1:
            return cls(float(lo), 1.0, 1)
        return cls(float(lo), (hi - lo) / (n - 1), n)

    @property
    def points(self) -> np.ndarray:
        return self.x0 + self.dx * np.arange(self.n)


@dataclass(frozen=True)
class WaveField:
    t: float
    samples: SampledFunction
    plan: Optional[TransformPlan] = None
    source: str = "evolve"


@dataclass(frozen=True)
class EvolutionRequest:
    datum: InitialDatum
    t: float
    x_grid: Optional[Grid] = None
    plan: Optional[TransformPlan] = None

    def run(self) -> WaveField:
        return evolve(self.datum, self.t, plan=self.plan, x_grid=self.x_grid)


def bandwidth(spectrum: SampledFunction, tolerance: float) -> float:
    """Largest ``|xi|`` on the grid where ``|hat u| > tolerance * max |hat u|``."""
    mag = np.abs(spectrum.values)
    peak = mag.max()
    if peak == 0.0:
        return 0.0
    idx = np.nonzero(mag > tolerance * peak)[0]
    return float(np.max(np.abs(spectrum.grid[idx])))


def band_cap(datum: Optional[InitialDatum]) -> float:
    """Nyquist frequency of a tabulated datum's own samples (inf otherwise).

    Interpolation kinks leave a slowly decaying spectral tail that carries
    no information about the data; it is not counted toward the band.
    """
    if datum is None or datum.samples is None:
        return math.inf
    return math.pi / datum.samples[1]


def t_max(plan: TransformPlan, spectrum: SampledFunction, cap: float = math.inf) -> float:
    """Largest ``|t|`` whose multiplier phase the plan resolves for this spectrum."""
    band = min(bandwidth(spectrum, plan.tolerance), cap)
    if band == 0.0:
        return math.inf
    return PHASE_LIMIT / (band * plan.dxi)


def _next_pow2(m: float) -> int:
    return 1 << max(1, math.ceil(math.log2(max(m, 2.0))))


def adequate_plan(
    datum: InitialDatum, t: float, tolerance: float = 1e-8, base: TransformPlan = DEFAULT_PLAN
) -> TransformPlan:
    """Smallest convenient plan that resolves ``datum`` up to time ``t``.

    The window is at least the base window (or 1.25x the tabulated support)
    and at least ``4 |t| band``; the grid spacing puts the spectral edge at
    three times the band.
    """
    half = max(base.window_halfwidth, 1.25 * datum.support_halfwidth() if datum.is_tabulated else 0.0)
    n = _next_pow2(2 * half / base.dx)
    plan0 = TransformPlan(half, n, tolerance)
    spectrum = fourier.forward(fourier.sample(datum.u0, plan0))
    cap = band_cap(datum)
    band = min(bandwidth(spectrum, tolerance), cap)
    while band > 0.5 * plan0.xi_max:
        if plan0.n_points >= MAX_POINTS:
            raise ResolutionError("initial datum is not resolved even on the finest grid")
        plan0 = TransformPlan(half, plan0.n_points * 2, tolerance)
        spectrum = fourier.forward(fourier.sample(datum.u0, plan0))
        band = min(bandwidth(spectrum, tolerance), cap)
    if band == 0.0 or t == 0.0:
        return plan0
    band += plan0.dxi  # the band edge is only known to within one frequency cell
    half = max(half, 1.05 * 4.0 * abs(t) * band)
    dx = math.pi / (3.0 * band)
    n = _next_pow2(2 * half / dx)
    if n > MAX_POINTS:
        raise ResolutionError(f"t={t} would need more than {MAX_POINTS} grid points")
    return TransformPlan(half, n, tolerance)


def _suggest(datum: Optional[InitialDatum], t: float, plan: TransformPlan) -> str:
    if datum is None:
        return ""
    try:
        better = adequate_plan(datum, t, plan.tolerance)
    except ResolutionError:
        return ""
    return f"; try window={better.window_halfwidth:g} points={better.n_points}"


def _multiplier(xi: np.ndarray, t: float) -> np.ndarray:
    return np.exp(-0.5j * t * xi**2)


def _tail_fraction(values: np.ndarray, plan: TransformPlan) -> float:
    mass = np.abs(values) ** 2
    total = mass.sum()
    if total == 0.0:
        return 0.0
    edge = max(1, int(TAIL_BAND * plan.n_points))
    return float((mass[:edge].sum() + mass[-edge:].sum()) / total)


def _evolved_spectrum(u0: SampledFunction, t: float, plan: TransformPlan, datum=None):
    spectrum = fourier.forward(u0, plan)
    limit = t_max(plan, spectrum, band_cap(datum))
    if abs(t) > limit:
        raise ResolutionError(
            f"|t|={abs(t):g} exceeds the phase-resolution limit {limit:.4g} of this plan"
            + _suggest(datum, t, plan)
        )
    return spectrum.with_values(spectrum.values * _multiplier(spectrum.grid, t))


def propagate(u: SampledFunction, t: float, plan: TransformPlan, datum=None) -> SampledFunction:
    """Advance physical samples on the plan grid by time ``t``."""
    spectrum = _evolved_spectrum(u, t, plan, datum)
    out = fourier.inverse(spectrum, plan)
    frac = _tail_fraction(out.values, plan)
    if frac > TAIL_MASS:
        raise TailError(
            f"{frac:.3g} of the mass reaches the window edge at t={t:g}" + _suggest(datum, t, plan)
        )
    return out


def _evaluate_at(spectrum: SampledFunction, x: np.ndarray, chunk: int = 256) -> np.ndarray:
    xi = spectrum.grid
    weights = spectrum.values * (spectrum.dx / _SQRT_2PI)
    out = np.empty(x.size, dtype=complex)
    for s in range(0, x.size, chunk):
        out[s : s + chunk] = np.exp(1j * np.outer(x[s : s + chunk], xi)) @ weights
    return out


def _initial_samples(datum: InitialDatum, plan: TransformPlan) -> SampledFunction:
    if datum.is_tabulated and datum.support_halfwidth() > plan.window_halfwidth:
        raise TailError(
            f"tabulated datum {datum.name!r} extends beyond the window [-{plan.window_halfwidth:g}, "
            f"{plan.window_halfwidth:g})"
        )
    return fourier.sample(datum.u0, plan)


def evolve(
    datum: InitialDatum,
    t: float,
    plan: Optional[TransformPlan] = None,
    x_grid: Optional[Grid] = None,
    pad: bool = False,
) -> WaveField:
    """Solution ``u(t, .)`` of the free equation with ``u(0) = datum.u0``.

    Parameters
    ----------
    datum : InitialDatum
    t : float
    plan : TransformPlan, optional
        Window and grid. ``None`` picks :func:`adequate_plan`.
    x_grid : Grid, optional
        Evaluate on this grid (inside the window) instead of the plan grid.
        Values come from the same discrete inversion sum, taken at
        arbitrary points.
    pad : bool
        Double the window with the same spacing before evolving.

    Raises
    ------
    ResolutionError
        ``|t|`` beyond the plan's phase-resolution limit.
    TailError
        The evolved packet reaches the window edge.
    """
    t = float(t)
    if plan is None:
        plan = adequate_plan(datum, t)
    work = replace(plan, window_halfwidth=2 * plan.window_halfwidth, n_points=2 * plan.n_points) if pad else plan
    u0 = _initial_samples(datum, work)
    spectrum = _evolved_spectrum(u0, t, work, datum)
    full = fourier.inverse(spectrum, work)
    frac = _tail_fraction(full.values, work)
    if frac > TAIL_MASS:
        raise TailError(
            f"{frac:.3g} of the mass reaches the window edge at t={t:g}" + _suggest(datum, t, plan)
        )
    if x_grid is not None:
        pts = x_grid.points
        L = work.window_halfwidth
        if pts.size and (pts.min() < -L or pts.max() > L):
            raise DomainError(f"evaluation grid leaves the window [-{L:g}, {L:g}]")
        samples = SampledFunction(Domain.PHYSICAL, x_grid.x0, x_grid.dx, _evaluate_at(spectrum, pts))
        return WaveField(t, samples, work)
    if pad:
        quarter = plan.n_points // 2
        full = SampledFunction(Domain.PHYSICAL, -plan.window_halfwidth, plan.dx, full.values[quarter : quarter + plan.n_points])
    return WaveField(t, full, plan)


def evolve_exact(datum: InitialDatum, t: float, x_grid) -> WaveField:
    """Sample the closed-form evolution on ``x_grid`` (a Grid or a TransformPlan)."""
    if datum.exact_evolution is None:
        raise Unsupported(f"datum {datum.name!r} has no closed-form evolution")
    if isinstance(x_grid, TransformPlan):
        x0, dx, pts, plan = -x_grid.window_halfwidth, x_grid.dx, x_grid.x, x_grid
    else:
        x0, dx, pts, plan = x_grid.x0, x_grid.dx, x_grid.points, None
    values = datum.exact_evolution(float(t), pts)
    return WaveField(float(t), SampledFunction(Domain.PHYSICAL, x0, dx, values), plan, source="exact")


def second_derivative(u: SampledFunction, plan: TransformPlan) -> SampledFunction:
    """Spectral ``d^2/dx^2`` on the plan grid."""
    spectrum = fourier.forward(u, plan)
    return fourier.inverse(spectrum.with_values(-(spectrum.grid**2) * spectrum.values), plan)


def residual(field: WaveField, dt: float, neighbors=None) -> float:
    """L2 norm of ``i du/dt + (1/2) u_xx`` with a central difference in time.

    ``neighbors`` supplies the samples at ``t - dt`` and ``t + dt``; by
    default they come from propagating ``field`` itself, which is exact
    for the free equation.
    """
    plan = field.plan
    if plan is None:
        raise Unsupported("residual needs a field on a transform-plan grid")
    u = field.samples
    if neighbors is None:
        minus, plus = propagate(u, -dt, plan), propagate(u, dt, plan)
    else:
        minus, plus = neighbors
    r = 1j * (plus.values - minus.values) / (2 * dt) + 0.5 * second_derivative(u, plan).values
    return fourier.l2_norm(u.with_values(r))
