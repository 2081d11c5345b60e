"""Independent reference computations (scipy adaptive quadrature, direct sums).

Nothing here imports the package's numerical routines.
"""

import math

import numpy as np
from scipy import integrate
from scipy.special import erf

SQRT_2PI = math.sqrt(2 * math.pi)


def quad(f, a, b, points=None):
    val, _ = integrate.quad(f, a, b, epsabs=1e-13, epsrel=1e-13, limit=1000, points=points)
    return val


def cquad(f, a, b):
    re = quad(lambda s: f(s).real, a, b)
    im = quad(lambda s: f(s).imag, a, b)
    return re + 1j * im


def solution_by_quadrature(uhat, t, x, cutoff=14.0):
    """``(2 pi)^(-1/2) int exp(i x xi - i t xi^2/2) uhat(xi) dxi`` by adaptive quadrature."""
    f = lambda s: complex(np.exp(1j * (x * s - 0.5 * t * s * s)) * uhat(s))
    return cquad(f, -cutoff, cutoff) / SQRT_2PI


def transform_by_riemann(u, xi, L=30.0, n=60001):
    """Direct Riemann sum of ``(2 pi)^(-1/2) int exp(-i x xi) u(x) dx`` (no FFT)."""
    x = np.linspace(-L, L, n)
    dx = x[1] - x[0]
    vals = u(x)
    return np.array([np.sum(np.exp(-1j * x * s) * vals) * dx / SQRT_2PI for s in np.atleast_1d(xi)])


def l2_near(g, R=1.0):
    """``(int_{-R}^{R} |g|^2)^(1/2)`` for integrands regular at the origin."""
    return math.sqrt(quad(lambda s: abs(g(s)) ** 2, -R, R))


def l1_exterior(g, R=1.0, breaks=()):
    pts = sorted(set([R, *breaks, 60.0]))
    total = 0.0
    for a, b in zip(pts[:-1], pts[1:]):
        total += quad(lambda s: abs(g(s)), a, b) + quad(lambda s: abs(g(-s)), a, b)
    return total


# frozen values, computed with the functions above
XI2_HERMITE = math.sqrt(math.sqrt(math.pi) * erf(1.0))  # 1.2221490357664462
GAUSS_L2 = math.pi**0.25  # 1.3313353638003897
XI1_DERIV_HERMITE = 2.1585531942079887  # l2_near((2 - s^2) e^{-s^2/2})
XI1_HERMITE = 0.6155848370785173  # l2_near(s e^{-s^2/2})
HERMITE_L2 = math.sqrt(0.75 * math.sqrt(math.pi))  # 1.1529702460077351
LEMMA1_HERMITE = 2.501114584304454
C2_HERMITE = 0.7953794908467028  # int_{|s|>=1} e^{-s^2/2}
C3_HERMITE = 0.8747772715744306  # int_{|s|>=1} |2 - s^2| e^{-s^2/2}
