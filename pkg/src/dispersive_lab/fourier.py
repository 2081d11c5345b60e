"""Unitary angular-frequency Fourier transform on uniform grids.

The continuous convention is

    hat v(xi) = (2 pi)^(-1/2) int exp(-i x xi) v(x) dx,

and :func:`forward` is its Riemann sum on the grid ``x_j = x0 + j dx``,
evaluated at ``xi_k = -pi/dx + k dxi`` with ``dxi = 2 pi / (n dx)``. The FFT
is only the summation engine; the ``dx (2 pi)^(-1/2)`` factor, the shift
to a symmetric frequency grid and the phase ``exp(-i x0 xi)`` are applied
explicitly so the output is exactly that Riemann sum. :func:`inverse` is
the matching sum for ``(2 pi)^(-1/2) int exp(i x xi) hat v(xi) dxi``, which makes
the discrete pair exactly inverse to one another.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np

from .errors import DomainError, GridError

__all__ = [
    "Domain",
    "SampledFunction",
    "TransformPlan",
    "DEFAULT_PLAN",
    "forward",
    "inverse",
    "l2_norm",
    "inner_product",
    "sample",
    "spectral_evaluator",
    "trapezoid",
]

_SQRT_2PI = math.sqrt(2.0 * math.pi)


class Domain(enum.Enum):
    PHYSICAL = "Physical"
    SPECTRAL = "Spectral"


@dataclass(frozen=True, eq=False)
class SampledFunction:
    """Complex values on the uniform grid ``x0 + i * dx``."""

    domain: Domain
    x0: float
    dx: float
    values: np.ndarray

    def __post_init__(self):
        values = np.asarray(self.values, dtype=complex)
        if values.ndim != 1 or values.size == 0:
            raise GridError("sampled function needs a nonempty 1-D value array")
        if not (self.dx > 0 and math.isfinite(self.dx) and math.isfinite(self.x0)):
            raise GridError("grid spacing must be positive and finite")
        if not np.all(np.isfinite(values)):
            raise GridError("sampled values must be finite")
        values.setflags(write=False)
        object.__setattr__(self, "values", values)

    @property
    def n(self) -> int:
        return self.values.size

    @property
    def grid(self) -> np.ndarray:
        return self.x0 + self.dx * np.arange(self.n)

    @property
    def x_end(self) -> float:
        return self.x0 + self.dx * (self.n - 1)

    def same_grid(self, other: "SampledFunction") -> bool:
        return (
            self.domain is other.domain
            and self.n == other.n
            and math.isclose(self.x0, other.x0, rel_tol=1e-12, abs_tol=1e-12 * self.dx)
            and math.isclose(self.dx, other.dx, rel_tol=1e-12)
        )

    def with_values(self, values) -> "SampledFunction":
        return SampledFunction(self.domain, self.x0, self.dx, values)


@dataclass(frozen=True)
class TransformPlan:
    """Physical window ``[-L, L)`` sampled with ``n_points`` (a power of two)."""

    window_halfwidth: float = 20.0
    n_points: int = 4096
    tolerance: float = 1e-8

    def __post_init__(self):
        if not self.window_halfwidth > 0:
            raise GridError("window half-width must be positive")
        n = self.n_points
        if n < 2 or n & (n - 1):
            raise GridError(f"n_points must be a power of two >= 2, got {n}")
        if not self.tolerance > 0:
            raise GridError("tolerance must be positive")

    @property
    def dx(self) -> float:
        return 2.0 * self.window_halfwidth / self.n_points

    @property
    def dxi(self) -> float:
        return math.pi / self.window_halfwidth

    @property
    def xi_max(self) -> float:
        return math.pi / self.dx

    @property
    def x(self) -> np.ndarray:
        return -self.window_halfwidth + self.dx * np.arange(self.n_points)

    @property
    def xi(self) -> np.ndarray:
        return -self.xi_max + self.dxi * np.arange(self.n_points)


DEFAULT_PLAN = TransformPlan()


def sample(f: Callable, plan: TransformPlan = DEFAULT_PLAN, domain: Domain = Domain.PHYSICAL) -> SampledFunction:
    """Sample an evaluator on the plan's physical or spectral grid."""
    if domain is Domain.PHYSICAL:
        return SampledFunction(domain, -plan.window_halfwidth, plan.dx, f(plan.x))
    return SampledFunction(domain, -plan.xi_max, plan.dxi, f(plan.xi))


def _require(u: SampledFunction, domain: Domain) -> None:
    if not isinstance(u, SampledFunction):
        raise GridError("expected a SampledFunction")
    if u.domain is not domain:
        raise GridError(f"expected a {domain.value} function, got {u.domain.value}")


def forward(u: SampledFunction, plan: Optional[TransformPlan] = None) -> SampledFunction:
    """Transform physical samples to the symmetric spectral grid.

    The spectral grid has ``n`` points spaced ``2 pi / (n dx)`` starting at
    ``-pi / dx``. ``plan`` is accepted for symmetry with :func:`inverse` and
    checked against the input grid when given.
    """
    _require(u, Domain.PHYSICAL)
    if plan is not None and (u.n != plan.n_points or not math.isclose(u.dx, plan.dx, rel_tol=1e-12)):
        raise GridError("input grid does not match the transform plan")
    n, dx = u.n, u.dx
    dxi = 2.0 * math.pi / (n * dx)
    xi0 = -(n // 2) * dxi
    j = np.arange(n)
    xi = xi0 + dxi * j
    # exp(-i j dx xi0) shifts the zero frequency; exp(-i x0 xi) accounts for the window origin
    pre = np.exp(-1j * dx * xi0 * j)
    values = np.fft.fft(u.values * pre) * np.exp(-1j * u.x0 * xi) * (dx / _SQRT_2PI)
    return SampledFunction(Domain.SPECTRAL, xi0, dxi, values)


def inverse(v: SampledFunction, plan: TransformPlan = DEFAULT_PLAN) -> SampledFunction:
    """Transform spectral samples back onto the plan's physical grid ``[-L, L)``."""
    _require(v, Domain.SPECTRAL)
    n = v.n
    if n != plan.n_points or not math.isclose(v.dx, plan.dxi, rel_tol=1e-12):
        raise GridError("spectral grid does not match the transform plan")
    x0, dx, dxi = -plan.window_halfwidth, plan.dx, v.dx
    j = np.arange(n)
    xi = v.x0 + dxi * j
    # n * ifft is the plain sum of exp(+2 pi i jk/n)
    s = np.fft.ifft(v.values * np.exp(1j * x0 * xi)) * n
    values = s * np.exp(1j * dx * v.x0 * j) * (dxi / _SQRT_2PI)
    return SampledFunction(Domain.PHYSICAL, x0, dx, values)


def spectral_evaluator(u: SampledFunction, chunk: int = 512) -> Callable[[np.ndarray], np.ndarray]:
    """Evaluate the Riemann-sum transform of ``u`` at arbitrary frequencies.

    Agrees with :func:`forward` on its grid. Useful where the frequency must
    be placed freely, e.g. arbitrarily close to the origin.
    """
    _require(u, Domain.PHYSICAL)
    x = u.grid
    vals = u.values * (u.dx / _SQRT_2PI)

    def evaluate(xi):
        xi = np.asarray(xi, dtype=float)
        flat = xi.ravel()
        out = np.empty(flat.size, dtype=complex)
        for s in range(0, flat.size, chunk):
            block = flat[s : s + chunk]
            out[s : s + chunk] = np.exp(-1j * np.outer(block, x)) @ vals
        return out.reshape(xi.shape)

    return evaluate


def trapezoid(y: np.ndarray, h: float) -> complex:
    """Composite trapezoid rule; numpy's pairwise summation keeps it deterministic."""
    y = np.asarray(y)
    if y.size < 2:
        return y.sum() * 0.0
    return h * (np.sum(y) - 0.5 * (y[0] + y[-1]))


def _interp_at(g: np.ndarray, x0: float, h: float, x: float) -> float:
    pos = (x - x0) / h
    i = min(int(math.floor(pos)), g.size - 2)
    frac = pos - i
    return (1.0 - frac) * g[i] + frac * g[i + 1]


def l2_norm(
    f: SampledFunction,
    weight: Optional[Callable[[np.ndarray], np.ndarray]] = None,
    region: Optional[tuple[float, float]] = None,
) -> float:
    """Trapezoid approximation of ``(int_region |weight f|^2)^(1/2)``.

    ``region`` is a closed interval ``(a, b)`` inside the grid coverage; the
    default is the whole grid. Endpoints that fall between grid points get
    a linearly interpolated integrand value.
    """
    grid = f.grid
    g = np.abs(f.values) ** 2
    if weight is not None:
        g = g * np.abs(weight(grid)) ** 2
    if region is None:
        return math.sqrt(max(trapezoid(g, f.dx).real, 0.0))
    a, b = region
    slack = 1e-12 * f.dx
    if a > b or a < f.x0 - slack or b > f.x_end + slack:
        raise DomainError(f"region [{a}, {b}] is outside the grid [{f.x0}, {f.x_end}]")
    a, b = max(a, f.x0), min(b, f.x_end)
    if b - a <= 0:
        return 0.0
    inside = np.nonzero((grid > a) & (grid < b))[0]
    ga, gb = _interp_at(g, f.x0, f.dx, a), _interp_at(g, f.x0, f.dx, b)
    if inside.size == 0:
        return math.sqrt(0.5 * (ga + gb) * (b - a))
    lo, hi = inside[0], inside[-1]
    total = trapezoid(g[lo : hi + 1], f.dx)
    total += 0.5 * (ga + g[lo]) * (grid[lo] - a)
    total += 0.5 * (g[hi] + gb) * (b - grid[hi])
    return math.sqrt(max(float(total), 0.0))


def inner_product(u: SampledFunction, v: SampledFunction) -> complex:
    """Trapezoid approximation of ``int u conj(v)`` on a shared grid."""
    if not u.same_grid(v):
        raise GridError("inner product needs identical grids")
    return complex(trapezoid(u.values * np.conj(v.values), u.dx))
