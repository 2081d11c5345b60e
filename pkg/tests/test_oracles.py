"""The frozen reference numbers are what the oracles say they are."""

import cmath
import math

import pytest

import oracles as O


def test_frozen_near_origin_norms():
    assert O.l2_near(lambda s: math.exp(-s * s / 2)) == pytest.approx(O.XI2_HERMITE, abs=1e-13)
    assert O.l2_near(lambda s: (2 - s * s) * math.exp(-s * s / 2)) == pytest.approx(O.XI1_DERIV_HERMITE, abs=1e-13)
    assert O.l2_near(lambda s: s * math.exp(-s * s / 2)) == pytest.approx(O.XI1_HERMITE, abs=1e-13)


def test_frozen_exterior_integrals():
    assert O.l1_exterior(lambda s: math.exp(-s * s / 2)) == pytest.approx(O.C2_HERMITE, abs=1e-12)
    c3 = O.l1_exterior(lambda s: (2 - s * s) * math.exp(-s * s / 2), breaks=[math.sqrt(2)])
    assert c3 == pytest.approx(O.C3_HERMITE, abs=1e-12)


def test_frozen_lemma1_and_norms():
    hermite_l2 = math.sqrt(O.quad(lambda x: ((1 - x * x) * math.exp(-x * x / 2)) ** 2, -40, 40))
    assert hermite_l2 == pytest.approx(O.HERMITE_L2, abs=1e-13)
    gauss_l2 = math.sqrt(O.quad(lambda x: math.exp(-x * x), -40, 40))
    assert gauss_l2 == pytest.approx(O.GAUSS_L2, abs=1e-13)
    assert math.sqrt(2) * O.XI1_HERMITE + math.sqrt(2) * O.HERMITE_L2 == pytest.approx(O.LEMMA1_HERMITE, abs=1e-13)


def test_gaussian_solution_has_no_2pi_prefactor():
    # (1 + i t)^(-1/2) exp(-x^2 / (2(1 + i t))) is the solution; the variant with
    # an extra (2 pi)^(-1/2) is off by that factor
    for t, x in [(1.0, 0.0), (3.0, 0.5), (10.0, -2.0)]:
        a = 1 + 1j * t
        q = O.solution_by_quadrature(lambda s: math.exp(-s * s / 2), t, x)
        closed = a**-0.5 * cmath.exp(-x * x / (2 * a))
        assert abs(q - closed) < 1e-10
        assert abs(q - closed / math.sqrt(2 * math.pi)) > 0.1 * abs(closed)
