import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import oracles as O
from dispersive_lab import datum as D
from dispersive_lab import fourier as F
from dispersive_lab import hypotheses as H
from dispersive_lab.errors import EvalError


def norm(f, p, R=1.0, **kw):
    return H.weighted_norm(H.WeightedNormQuery(f, p, H.Region.near_origin(R)), **kw)


def test_xi2_norm_of_hermite2(hermite2):
    res = norm(hermite2.u0_hat, 2)
    assert res.finite and not res.warning
    assert res.value == pytest.approx(O.XI2_HERMITE, abs=1e-5)
    assert res.value == pytest.approx(1.22215, abs=1e-5)


def test_xi2_norm_of_gauss_diverges(gauss):
    res = norm(gauss.u0_hat, 2)
    assert res.status is H.Status.DIVERGENT
    # int_eps |xi|^-4 e^{-xi^2} ~ (2/3) eps^-3: halving eps multiplies the norm by 2^(3/2)
    assert res.growth_rate == pytest.approx(2**1.5, rel=1e-3)


def test_zero_function_is_finite_zero():
    for p in range(4):
        res = norm(lambda s: np.zeros_like(s, dtype=complex), p)
        assert res.finite and res.value == 0


def test_levels_are_recorded(hermite2):
    res = H.weighted_norm(H.WeightedNormQuery(hermite2.u0_hat, 2, H.Region.near_origin(1.0), refinement_levels=7))
    assert len(res.samples_per_level) == 7
    assert all(b >= a for a, b in zip(res.samples_per_level, res.samples_per_level[1:]))


def test_query_validation():
    with pytest.raises(ValueError):
        H.WeightedNormQuery(np.exp, 2, H.Region.near_origin(1.0), refinement_levels=2)
    with pytest.raises(ValueError):
        H.WeightedNormQuery(np.exp, -1, H.Region.near_origin(1.0))
    with pytest.raises(ValueError):
        H.Region.near_origin(0.0)


def test_eval_error():
    def broken(s):
        raise RuntimeError("no")

    with pytest.raises(EvalError):
        norm(broken, 1)
    with pytest.raises(EvalError):
        norm(lambda s: np.full_like(s, np.nan), 1)


@pytest.mark.parametrize("s_exp,finite", [(-1.0, True), (0.0, True), (2.0, False), (4.0, False)])
def test_power_law_integrands(s_exp, finite):
    # |g|^2 ~ |xi|^-s_exp near the origin
    res = norm(lambda s: np.abs(s) ** (-s_exp / 2) + 0j, 0)
    assert res.finite is finite
    if finite:
        exact = math.sqrt(2 / (1 - s_exp))
        assert res.value == pytest.approx(exact, rel=1e-6)
    else:
        assert res.growth_rate == pytest.approx(2 ** ((s_exp - 1) / 2), rel=1e-3)


def test_log_divergence_is_flagged():
    # |g|^2 = 1/|xi|: sums grow linearly in the level count, neither rule fires cleanly
    res = norm(lambda s: np.abs(s) ** -0.5 + 0j, 0)
    assert res.status is H.Status.DIVERGENT
    assert res.warning


def test_exterior_and_full_line():
    g = lambda x: np.exp(-x * x / 2) + 0j
    ext = H.weighted_norm(H.WeightedNormQuery(g, 0, H.Region.exterior(1.0)))
    assert ext.value == pytest.approx(math.sqrt(2 * O.quad(lambda s: math.exp(-s * s), 1, 40)), rel=1e-6)
    full = H.weighted_norm(H.WeightedNormQuery(g, 0, H.Region.full_line()))
    assert full.value == pytest.approx(O.GAUSS_L2, abs=1e-6)
    cut = H.weighted_norm(H.WeightedNormQuery(g, 0, H.Region.exterior(1.0, upper=2.0)))
    assert cut.value == pytest.approx(math.sqrt(2 * O.quad(lambda s: math.exp(-s * s), 1, 2)), rel=1e-6)
    slow = H.weighted_norm(H.WeightedNormQuery(lambda x: np.abs(x) ** -0.25 + 0j, 0, H.Region.exterior(1.0)))
    assert not slow.finite


def test_monotone_in_weight_power(hermite2):
    for R in (0.5, 1.0):
        p2 = norm(hermite2.u0_hat, 2, R)
        p1 = norm(hermite2.u0_hat, 1, R)
        assert p2.finite and p1.finite
        assert p1.value <= p2.value


@settings(max_examples=25, deadline=None)
@given(c=st.complex_numbers(min_magnitude=1e-3, max_magnitude=1e3, allow_nan=False, allow_infinity=False))
def test_scaling(hermite2, c):
    base = norm(hermite2.u0_hat, 2)
    scaled = norm(lambda s: c * hermite2.u0_hat(s), 2)
    assert scaled.value == pytest.approx(abs(c) * base.value, rel=1e-12)


def test_check_hermite2(hermite2_report):
    r = hermite2_report
    assert r.compliant and r.cutoff_radius == 1.0
    assert r.xi1_deriv_norm.value == pytest.approx(O.XI1_DERIV_HERMITE, abs=1e-6)
    assert r.xi2_norm.value == pytest.approx(O.XI2_HERMITE, abs=1e-6)
    # ||x u0||^2 = int x^2 (1 - x^2)^2 e^{-x^2} dx
    x_norm = math.sqrt(O.quad(lambda x: (x * (1 - x * x)) ** 2 * math.exp(-x * x), -40, 40))
    assert r.x_u0_norm.value == pytest.approx(x_norm, abs=1e-6)


def test_check_gauss(gauss):
    r = H.check(gauss)
    assert not r.compliant
    assert r.divergent() == ["xi2_uhat"]
    assert r.xi1_deriv_norm.value == pytest.approx(O.XI2_HERMITE, abs=1e-6)  # xi^-1 d hat = -e^{-xi^2/2}


def test_check_odd1(odd1):
    r = H.check(odd1)
    assert not r.compliant
    assert r.divergent() == ["xi2_uhat", "xi1_duhat"]
    # both integrands behave like xi^-1: the norm grows by sqrt(2) per level
    assert r.xi2_norm.growth_rate == pytest.approx(math.sqrt(2), rel=1e-3)
    assert r.xi1_deriv_norm.growth_rate == pytest.approx(math.sqrt(2), rel=1e-3)


@pytest.mark.parametrize("name", D.BUILTIN_NAMES)
def test_verdict_independent_of_grid_offset(name):
    d = D.builtin(name)
    a, b = H.check(d), H.check(d, offset=0.25)
    assert a.compliant == b.compliant
    assert a.divergent() == b.divergent()


@pytest.mark.parametrize("R", [0.25, 0.5, 2.0, 3.0])
def test_other_radii(hermite2, gauss, R):
    assert H.check(hermite2, R).compliant
    assert not H.check(gauss, R).compliant
    assert H.check(hermite2, R).xi2_norm.value == pytest.approx(
        math.sqrt(O.quad(lambda s: math.exp(-s * s), -R, R)), abs=1e-6
    )


def test_analytic_and_transformed_derivative_agree(hermite2):
    tab = D.scale(hermite2, 1.0)
    object.__setattr__(tab, "u0_hat_deriv", None)  # force the transform route
    _, numeric = H.transform_evaluators(tab)
    xi = np.linspace(-1, 1, 801)[1:-1]
    a, b = hermite2.u0_hat_deriv(xi), numeric(xi)
    rel = math.sqrt(np.sum(np.abs(a - b) ** 2) / np.sum(np.abs(a) ** 2))
    assert rel < 1e-6


def test_tabulated_hermite2_is_compliant():
    x = -20.0 + 40.0 / 4096 * np.arange(4096)
    d = D.load(D.parse_spec({"name": "h", "family": "tabulated", "samples": {"x0": -20.0, "dx": 40.0 / 4096,
        "re": ((1 - x * x) * np.exp(-x * x / 2)).tolist()}}))
    r = H.check(d, cells=128)
    assert r.compliant
    assert r.xi2_norm.value == pytest.approx(O.XI2_HERMITE, abs=1e-4)


def test_report_json(hermite2_report):
    js = hermite2_report.to_json()
    assert js["compliant"] is True and js["R"] == 1.0
    assert set(js["norms"]) == {"x_u0", "xi2_uhat", "xi1_duhat"}
    assert js["norms"]["xi2_uhat"]["status"] == "finite"
    div = H.check(D.builtin("gauss")).to_json()["norms"]["xi2_uhat"]
    assert div["status"] == "divergent" and div["value"] > 0
