"""Initial data for the free Schrodinger equation.

Three closed-form families are built in, each with its Fourier transform,
the derivative of that transform and the exact time evolution:

========  ==============================  ==================  ===============
name      u0(x)                           hat u0(xi)          |u(t, 0)|
========  ==============================  ==================  ===============
gauss     exp(-x^2/2)                     exp(-xi^2/2)        (1+t^2)^(-1/4)
hermite2  (1 - x^2) exp(-x^2/2)           xi^2 exp(-xi^2/2)   (1+t^2)^(-3/4)
odd1      i x exp(-x^2/2)                 xi exp(-xi^2/2)     0
========  ==============================  ==================  ===============

With the unitary convention ``hat v(xi) = (2 pi)^(-1/2) int exp(-i x xi) v(x) dx``
the Gaussian evolves as ``u(t, x) = a^(-1/2) exp(-x^2 / (2a))`` with
``a = 1 + i t``. There is no extra ``(2 pi)^(-1/2)`` in front: integrating
``(2 pi)^(-1/2) exp(i x xi - a xi^2 / 2)`` over the line gives exactly
``a^(-1/2) exp(-x^2 / (2a))``, and the test suite confirms the constant against
brute-force quadrature. Only the constant is affected; the ``|t|^(-1/2)``
decay rate is the same either way.

Scaled families use a width ``w`` and an amplitude ``A``; with
``b = w^2 + i t`` the evolutions are ``A w b^(-1/2) e``,
``A w^3 b^(-3/2) (1 - x^2/b) e`` and ``i A w^2 x b^(-3/2) e`` where
``e = exp(-x^2 / (2b))``. Powers of ``b`` use the principal branch, which
is unambiguous because ``Re b > 0``.

Tabulated data carry only ``u0``: piecewise-linear interpolation between
the samples, zero outside the tabulated window.
"""

from __future__ import annotations

import enum
import json
import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import Callable, Optional, Sequence

import numpy as np

from .errors import GridError, NotFound, ParseError

__all__ = [
    "Kind",
    "InitialDatum",
    "DatumSpec",
    "BUILTIN_NAMES",
    "builtin",
    "load",
    "load_file",
    "parse_spec",
    "scale",
    "zero",
]

Evaluator = Callable[[np.ndarray], np.ndarray]

BUILTIN_NAMES = ("gauss", "hermite2", "odd1")
FAMILIES = BUILTIN_NAMES + ("tabulated",)

# relative tolerance on spacing when a tabulated grid is given as explicit x values
_UNIFORM_RTOL = 1e-9


class Kind(enum.Enum):
    CLOSED_FORM = "ClosedForm"
    TABULATED = "Tabulated"


@dataclass(frozen=True)
class InitialDatum:
    """An initial value u0 and whatever is known about it analytically.

    All evaluators are vectorized over numpy arrays. ``samples`` is set for
    tabulated data only and holds ``(x0, dx, values)``.
    """

    name: str
    kind: Kind
    u0: Evaluator
    u0_hat: Optional[Evaluator] = None
    u0_hat_deriv: Optional[Evaluator] = None
    exact_evolution: Optional[Callable[[float, np.ndarray], np.ndarray]] = None
    decay_exponent_expected: Optional[float] = None
    samples: Optional[tuple] = field(default=None, repr=False)

    @property
    def is_tabulated(self) -> bool:
        return self.kind is Kind.TABULATED

    def support_halfwidth(self) -> float:
        """Half-width of the region where u0 may be nonzero (inf for closed forms)."""
        if self.samples is None:
            return math.inf
        x0, dx, values = self.samples
        return max(abs(x0), abs(x0 + dx * (len(values) - 1)))


@dataclass(frozen=True)
class DatumSpec:
    """Declarative description of a datum, as read from a spec file."""

    name: str
    family: str
    width: float = 1.0
    amplitude: float = 1.0
    x0: Optional[float] = None
    dx: Optional[float] = None
    values: Optional[tuple] = None

    def validate(self) -> None:
        if self.family not in FAMILIES:
            raise ParseError(f"unknown family {self.family!r}")
        if not (self.width > 0 and self.amplitude > 0):
            raise ParseError("width and amplitude must be strictly positive")
        if self.family == "tabulated":
            if self.x0 is None or self.dx is None or not self.values:
                raise ParseError("tabulated datum needs x0, dx and sample values")
            if not self.dx > 0 or not math.isfinite(self.dx):
                raise GridError("tabulated grid must be strictly increasing")
            if not np.all(np.isfinite(np.asarray(self.values))):
                raise ParseError("tabulated samples must be finite")


def _as_array(x):
    return np.asarray(x, dtype=float)


def _gauss(width: float, amplitude: float, name: str) -> InitialDatum:
    w, A = width, amplitude

    def u0(x):
        x = _as_array(x)
        return (A * np.exp(-0.5 * (x / w) ** 2)).astype(complex)

    def u0_hat(xi):
        xi = _as_array(xi)
        return (A * w * np.exp(-0.5 * (w * xi) ** 2)).astype(complex)

    def u0_hat_deriv(xi):
        xi = _as_array(xi)
        return (-A * w**3 * xi * np.exp(-0.5 * (w * xi) ** 2)).astype(complex)

    def exact(t, x):
        x = _as_array(x)
        b = w * w + 1j * t
        return A * w * b**-0.5 * np.exp(-(x**2) / (2 * b))

    return InitialDatum(name, Kind.CLOSED_FORM, u0, u0_hat, u0_hat_deriv, exact, -0.5)


def _hermite2(width: float, amplitude: float, name: str) -> InitialDatum:
    w, A = width, amplitude

    def u0(x):
        x = _as_array(x)
        s = (x / w) ** 2
        return (A * (1.0 - s) * np.exp(-0.5 * s)).astype(complex)

    def u0_hat(xi):
        xi = _as_array(xi)
        return (A * w**3 * xi**2 * np.exp(-0.5 * (w * xi) ** 2)).astype(complex)

    def u0_hat_deriv(xi):
        xi = _as_array(xi)
        return (A * w**3 * (2 * xi - w * w * xi**3) * np.exp(-0.5 * (w * xi) ** 2)).astype(complex)

    def exact(t, x):
        x = _as_array(x)
        b = w * w + 1j * t
        rb = b**-0.5
        return A * w**3 * rb**3 * (1.0 - x**2 / b) * np.exp(-(x**2) / (2 * b))

    return InitialDatum(name, Kind.CLOSED_FORM, u0, u0_hat, u0_hat_deriv, exact, -1.5)


def _odd1(width: float, amplitude: float, name: str) -> InitialDatum:
    w, A = width, amplitude

    def u0(x):
        x = _as_array(x)
        return 1j * A * (x / w) * np.exp(-0.5 * (x / w) ** 2)

    def u0_hat(xi):
        xi = _as_array(xi)
        return (A * w**2 * xi * np.exp(-0.5 * (w * xi) ** 2)).astype(complex)

    def u0_hat_deriv(xi):
        xi = _as_array(xi)
        return (A * w**2 * (1.0 - (w * xi) ** 2) * np.exp(-0.5 * (w * xi) ** 2)).astype(complex)

    def exact(t, x):
        x = _as_array(x)
        b = w * w + 1j * t
        rb = b**-0.5
        return 1j * A * w**2 * x * rb**3 * np.exp(-(x**2) / (2 * b))

    # |u(t, x)| ~ |x| t^(-3/2) off the axis; identically zero on it
    return InitialDatum(name, Kind.CLOSED_FORM, u0, u0_hat, u0_hat_deriv, exact, -1.5)


_FACTORIES = {"gauss": _gauss, "hermite2": _hermite2, "odd1": _odd1}


def builtin(name: str) -> InitialDatum:
    """Return one of the built-in closed-form data by name."""
    try:
        factory = _FACTORIES[name]
    except KeyError:
        raise NotFound(f"no built-in datum named {name!r}; choose from {', '.join(BUILTIN_NAMES)}")
    return factory(1.0, 1.0, name)


def _tabulated(name: str, x0: float, dx: float, values) -> InitialDatum:
    values = np.asarray(values, dtype=complex)
    values.setflags(write=False)
    n = len(values)
    xs = x0 + dx * np.arange(n)

    def u0(x):
        x = _as_array(x)
        re = np.interp(x, xs, values.real, left=0.0, right=0.0)
        im = np.interp(x, xs, values.imag, left=0.0, right=0.0)
        return re + 1j * im

    return InitialDatum(name, Kind.TABULATED, u0, samples=(float(x0), float(dx), values))


def load(spec: DatumSpec) -> InitialDatum:
    """Build an InitialDatum from a validated DatumSpec."""
    spec.validate()
    if spec.family == "tabulated":
        return _tabulated(spec.name, spec.x0, spec.dx, spec.values)
    return _FACTORIES[spec.family](spec.width, spec.amplitude, spec.name)


def _uniform_grid(xs: Sequence[float]) -> tuple[float, float]:
    xs = np.asarray(xs, dtype=float)
    if xs.ndim != 1 or len(xs) < 2:
        raise GridError("tabulated grid needs at least two points")
    steps = np.diff(xs)
    if np.any(steps <= 0):
        raise GridError("tabulated grid must be strictly increasing")
    dx = (xs[-1] - xs[0]) / (len(xs) - 1)
    if np.max(np.abs(steps - dx)) > _UNIFORM_RTOL * dx * max(1.0, len(xs) ** 0.5):
        raise GridError("tabulated grid spacing is not uniform")
    return float(xs[0]), float(dx)


def parse_spec(obj: dict) -> DatumSpec:
    """Turn the JSON object of a datum spec file into a DatumSpec.

    Schema: ``{"name": str, "family": str, "params": {...},
    "samples": {"x0": num, "dx": num, "re": [...], "im": [...]}}``.
    ``samples`` may give an explicit ``"x"`` list instead of ``x0``/``dx``.
    """
    if not isinstance(obj, dict):
        raise ParseError("datum spec must be a JSON object")
    try:
        name = obj["name"]
        family = obj["family"]
    except KeyError as exc:
        raise ParseError(f"datum spec is missing field {exc.args[0]!r}")
    if not isinstance(name, str) or not isinstance(family, str):
        raise ParseError("'name' and 'family' must be strings")
    params = obj.get("params") or {}
    if not isinstance(params, dict):
        raise ParseError("'params' must be an object")
    try:
        width = float(params.get("width", 1.0))
        amplitude = float(params.get("amplitude", 1.0))
    except (TypeError, ValueError):
        raise ParseError("'width' and 'amplitude' must be numbers")

    x0 = dx = values = None
    samples = obj.get("samples")
    if family == "tabulated":
        if not isinstance(samples, dict):
            raise ParseError("tabulated datum needs a 'samples' object")
        try:
            re = np.asarray(samples["re"], dtype=float)
            im = np.asarray(samples.get("im", np.zeros_like(re)), dtype=float)
        except (KeyError, TypeError, ValueError):
            raise ParseError("'samples' needs numeric 're' (and optionally 'im') lists")
        if re.shape != im.shape or re.ndim != 1:
            raise ParseError("'re' and 'im' must be lists of equal length")
        if "x" in samples:
            xs = samples["x"]
            if len(xs) != len(re):
                raise ParseError("'x' and 're' must have equal length")
            x0, dx = _uniform_grid(xs)
        else:
            try:
                x0, dx = float(samples["x0"]), float(samples["dx"])
            except (KeyError, TypeError, ValueError):
                raise ParseError("'samples' needs numeric 'x0' and 'dx' (or an 'x' list)")
        values = tuple(re + 1j * im)
    spec = DatumSpec(name, family, width, amplitude, x0, dx, values)
    spec.validate()
    return spec


def load_file(path) -> InitialDatum:
    """Read a JSON datum spec file and load it."""
    try:
        obj = json.loads(Path(path).read_text())
    except OSError as exc:
        raise ParseError(f"cannot read datum spec {path}: {exc.strerror}")
    except json.JSONDecodeError as exc:
        raise ParseError(f"datum spec {path} is not valid JSON: {exc.msg}")
    return load(parse_spec(obj))


def scale(datum: InitialDatum, c: complex, name: Optional[str] = None) -> InitialDatum:
    """The datum ``c * u0``; every known analytic fact scales with it."""

    def lift(f):
        if f is None:
            return None
        return lambda *args: c * f(*args)

    samples = None
    if datum.samples is not None:
        x0, dx, values = datum.samples
        samples = (x0, dx, c * values)
    return InitialDatum(
        name or f"{c}*{datum.name}",
        datum.kind,
        lift(datum.u0),
        lift(datum.u0_hat),
        lift(datum.u0_hat_deriv),
        lift(datum.exact_evolution),
        datum.decay_exponent_expected,
        samples,
    )


def zero() -> InitialDatum:
    """The identically zero datum (useful as a degenerate case)."""
    return scale(builtin("gauss"), 0.0, name="zero")
