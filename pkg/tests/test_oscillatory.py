import itertools
import math

import numpy as np
import pytest

import oracles as O
from dispersive_lab import bounds as B
from dispersive_lab import datum as D
from dispersive_lab import oscillatory as Osc
from dispersive_lab import propagator as P
from dispersive_lab.errors import DomainError, HypothesisError

TX = list(itertools.product([1.0, 2.0, 5.0, 10.0, 20.0], [0.0, 1.0, -1.0, 3.0, -3.0, 10.0, -10.0]))


def test_parts_at_origin(hermite2, hermite2_report):
    p = Osc.parts(hermite2, 0.0, 0.0, report=hermite2_report)
    assert abs(p.I1) < 1e-12
    assert p.I2 == pytest.approx(O.SQRT_2PI, abs=1e-10)
    assert p.I3 == pytest.approx(O.SQRT_2PI, abs=1e-10)
    assert p.quadrature_error_estimate >= 0


@pytest.mark.parametrize("t,x", [(1.0, 0.5), (5.0, -3.0), (20.0, 10.0)])
def test_parts_match_quadrature(hermite2, hermite2_report, t, x):
    p = Osc.parts(hermite2, t, x, report=hermite2_report)
    E = lambda s: np.exp(1j * (x * s - 0.5 * t * s * s)) * np.exp(-s * s / 2)
    assert abs(p.I1 - O.cquad(lambda s: E(s) * s, -14, 14)) < 1e-9
    assert abs(p.I2 - O.cquad(lambda s: E(s), -14, 14)) < 1e-9
    assert abs(p.I3 - O.cquad(lambda s: E(s) * (2 - s * s), -14, 14)) < 1e-9


def test_parts_requires_compliance(gauss):
    with pytest.raises(HypothesisError):
        Osc.parts(gauss, 1.0, 0.0)


@pytest.mark.parametrize("t,x", [(2.0, 0.0), (5.0, 3.0)])
def test_reconstruct_against_closed_form(hermite2, hermite2_report, t, x):
    rec = Osc.reconstruct(hermite2, t, x, report=hermite2_report)
    assert abs(rec - complex(hermite2.exact_evolution(t, np.array(x)))) < 1e-5


def test_reconstruct_zero_and_t0(hermite2):
    assert Osc.reconstruct(D.zero(), 1.0, 0.0) == 0
    with pytest.raises(DomainError):
        Osc.reconstruct(hermite2, 0.0, 1.0)


def test_opposite_sign_fails(hermite2, hermite2_report):
    p = Osc.parts(hermite2, 2.0, 0.0, report=hermite2_report)
    u = complex(hermite2.exact_evolution(2.0, np.array(0.0)))
    flipped = (2 * math.pi) ** -0.5 / p.t * (-p.x * p.I1 - 1j * p.I2 + 1j * p.I3)
    assert abs(flipped + u) < 1e-10
    assert abs(Osc.combine(p) - u) < 1e-10


def test_reconstruction_identity_grid(hermite2, hermite2_report):
    for t, x in TX:
        rec = Osc.reconstruct(hermite2, t, x, report=hermite2_report)
        ev = complex(P.evolve(hermite2, t, x_grid=P.Grid(x, 1.0, 1)).samples.values[0])
        assert abs(rec - ev) <= 1e-5 * (1 + abs(ev))


def test_lemma_bounds_dominate(hermite2, hermite2_report):
    c = B.theorem_constant(hermite2, report=hermite2_report)
    for t, x in TX:
        p = Osc.parts(hermite2, t, x, report=hermite2_report)
        assert abs(p.I1) <= c.B1 + 1e-6
        assert abs(p.I2) <= c.B2 + 1e-6
        assert abs(p.I3) <= c.B3 + 1e-6


def test_parity_on_axis(hermite2, hermite2_report):
    for t in (1.0, 7.0):
        assert abs(Osc.parts(hermite2, t, 0.0, report=hermite2_report).I1) < 1e-12
    p = Osc.parts(hermite2, 0.0, 0.0, report=hermite2_report)
    assert abs(p.I3.imag) < 1e-12


def test_phase_identity():
    xi = np.linspace(-5, 5, 1001)
    assert Osc.phase_identity_check(0.0, xi) == 0.0
    assert Osc.phase_identity_check(1.0, xi) < 1e-6
    assert Osc.phase_identity_check(-1.0, xi) == pytest.approx(Osc.phase_identity_check(1.0, xi), rel=1e-12)
    # error is second order in the step
    ratio = Osc.phase_identity_check(1.0, xi, h=2e-3) / Osc.phase_identity_check(1.0, xi, h=1e-3)
    assert ratio == pytest.approx(4.0, rel=0.05)


def test_json(hermite2, hermite2_report):
    js = Osc.parts(hermite2, 1.0, 1.0, report=hermite2_report).to_json()
    assert set(js) == {"t", "x", "I1", "I2", "I3", "quadrature_error_estimate"}
