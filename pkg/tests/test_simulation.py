import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from fiscal_ramsey.model_core import InvalidParameterError, ModelParams, Variant, compute_steady_state
from fiscal_ramsey.policy_rules import AdHocRule, Regime
from fiscal_ramsey.ramsey_lqr import PolicyPreferences, ramsey_solution
from fiscal_ramsey.simulation import (
    ShockSequence,
    UnsupportedRegimeError,
    draw_shocks,
    simulate_adhoc,
    simulate_ramsey,
)

P99 = ModelParams(beta=0.99)
BASE_LAMBDA = 0.3864749541329886


@pytest.fixture(scope="module")
def base_solution():
    return ramsey_solution(P99, PolicyPreferences(1, 1, 1, 1))


def test_ramsey_path_example(base_solution):
    path = simulate_ramsey(base_solution, P99, 1.0, 2)
    np.testing.assert_allclose(path.b_dev, [1.0, BASE_LAMBDA, BASE_LAMBDA**2], rtol=1e-12)
    assert round(path.b_dev[2], 6) == 0.149363
    assert not path.pi_dev.any() and not path.R_dev.any()
    assert path.max_residual() <= 1e-12
    assert list(path.t) == [0, 1, 2]


def test_ramsey_path_at_steady_state(base_solution):
    path = simulate_ramsey(base_solution, P99, 0.0, 25)
    for col in (path.pi_dev, path.b_dev, path.R_dev, path.s_dev):
        assert not col.any()


def test_ramsey_surplus_closes_budget(base_solution):
    path = simulate_ramsey(base_solution, P99, 2.0, 10)
    s = path.b_dev[:-1] / 0.99 - path.b_dev[1:]
    np.testing.assert_allclose(path.s_dev[1:], s, rtol=1e-15)
    # with q = 1 the implied surplus rule is the optimal fiscal feedback
    np.testing.assert_allclose(path.s_dev[1:] / path.b_dev[:-1], base_solution.g_b_opt, rtol=1e-12)


def test_ramsey_degenerate_warns():
    sol = ramsey_solution(P99, PolicyPreferences(1, 0, 1, 1))
    path = simulate_ramsey(sol, P99, 1.0, 5)
    assert path.warnings
    np.testing.assert_array_equal(path.b_dev, np.ones(6))


def test_horizon_validation(base_solution):
    with pytest.raises(InvalidParameterError):
        simulate_ramsey(base_solution, P99, 1.0, 0)


def test_adhoc_monetary_impulse():
    rule = AdHocRule(1.5, 0.1)
    path = simulate_adhoc(P99, rule, ShockSequence.impulse(5, eps_R0=0.01), 0.0)
    assert path.pi_dev[0] == pytest.approx(-0.01 / 1.5, rel=1e-15)
    assert not path.pi_dev[1:].any()
    assert not path.b_dev.any()
    assert path.R_dev[0] == pytest.approx(0.0, abs=1e-18)
    assert path.max_residual() <= 1e-12


def test_adhoc_homogeneous_debt():
    path = simulate_adhoc(P99, AdHocRule(1.5, 0.1), ShockSequence.zeros(20), 1.0)
    np.testing.assert_allclose(path.b_dev, (1 / 0.99 - 0.1) ** np.arange(21), rtol=1e-13)
    assert not path.pi_dev.any()
    ratios = path.b_dev[1:] / path.b_dev[:-1]
    np.testing.assert_allclose(ratios, 1 / 0.99 - 0.1, rtol=1e-14)


def test_adhoc_fiscal_impulse():
    path = simulate_adhoc(P99, AdHocRule(1.5, 0.1), ShockSequence.impulse(5, eps_s0=0.01), 0.0)
    assert path.b_dev[0] == pytest.approx(-0.01)
    assert abs(path.b_dev[5]) < abs(path.b_dev[0])
    assert not path.pi_dev.any() and not path.R_dev.any()


def test_adhoc_ar1_forward_solution():
    beta, f_pi, rho = 0.99, 1.5, 0.6
    rule = AdHocRule(f_pi, 0.1, rho_R=rho)
    shocks = ShockSequence.impulse(40, eps_R0=0.01)
    shocks.eps_R[1:] = 0.01 * rho ** np.arange(1, 41)
    path = simulate_adhoc(P99, rule, shocks, 0.0)
    # brute-force forward sum pi_t = -sum_j (beta f)^-(j+1) beta E_t eps_{t+j}
    j = np.arange(2000)
    expected = -np.sum((beta * f_pi) ** -(j + 1.0) * beta * rho**j) * 0.01
    assert path.pi_dev[0] == pytest.approx(expected, rel=1e-12)
    assert path.max_residual() <= 1e-12


@pytest.mark.parametrize(
    "rule, regime",
    [
        (AdHocRule(0.5, -0.5), Regime.PASSIVE_M_ACTIVE_F),
        (AdHocRule(0.5, 0.1), Regime.INDETERMINATE),
        (AdHocRule(1.5, -0.5), Regime.EXPLOSIVE),
        (AdHocRule(1 / 0.99, 0.1), Regime.BOUNDARY),
    ],
)
def test_adhoc_refuses_other_regimes(rule, regime):
    with pytest.raises(UnsupportedRegimeError) as info:
        simulate_adhoc(P99, rule, ShockSequence.zeros(3), 1.0)
    assert info.value.regime is regime


def test_shock_sequence_length_check():
    with pytest.raises(InvalidParameterError):
        ShockSequence(3, np.zeros(3), np.zeros(4))


def test_draw_shocks_zero_variance():
    sh = draw_shocks(0.0, 0.0, horizon=50, seed=123)
    assert not sh.eps_R.any() and not sh.eps_s.any()
    assert len(sh.eps_R) == 51


def test_draw_shocks_moments():
    n = 10**5
    sh = draw_shocks(1.0, 0.0, 0.0, 0.0, horizon=n, seed=42)
    assert abs(sh.eps_R.mean()) < 3 / np.sqrt(n + 1)
    assert abs(sh.eps_R.var() - 1) < 0.05


def test_draw_shocks_ar1_moments():
    sh = draw_shocks(2.0, 0.5, 0.8, 0.0, horizon=200_000, seed=7)
    x = sh.eps_R
    assert abs(x.var() / 4.0 - 1) < 0.05
    assert np.corrcoef(x[:-1], x[1:])[0, 1] == pytest.approx(0.8, abs=0.01)


def test_draw_shocks_seeded():
    a = draw_shocks(1.0, 2.0, 0.3, 0.1, horizon=100, seed=9)
    b = draw_shocks(1.0, 2.0, 0.3, 0.1, horizon=100, seed=9)
    assert a.eps_R.tobytes() == b.eps_R.tobytes()
    assert a.eps_s.tobytes() == b.eps_s.tobytes()
    c = draw_shocks(1.0, 2.0, 0.3, 0.1, horizon=100, seed=10)
    assert c.eps_R.tobytes() != a.eps_R.tobytes()


def test_variant_consistency(base_solution):
    params = ModelParams(beta=0.99, b_star=2.0)
    ss = compute_steady_state(params)
    lin = simulate_ramsey(base_solution, params, 0.5, 30, Variant.LINEAR)
    log = simulate_ramsey(base_solution, params, 0.5, 30, Variant.LOG_LINEAR)
    np.testing.assert_allclose(log.b_dev * params.b_star, lin.b_dev, rtol=1e-13)
    np.testing.assert_allclose(log.s_dev * ss.s_star, lin.s_dev, rtol=1e-12, atol=1e-15)
    assert log.max_residual() <= 1e-12

    rule = AdHocRule(1.5, 0.1, sigma_R=0.01, sigma_s=0.01)
    shocks = draw_shocks(0.01, 0.01, horizon=30, seed=1)
    lin = simulate_adhoc(params, rule, shocks, 0.5, Variant.LINEAR)
    log = simulate_adhoc(params, rule, shocks, 0.5, Variant.LOG_LINEAR)
    np.testing.assert_allclose(log.b_dev * params.b_star, lin.b_dev, rtol=1e-13)
    assert log.max_residual() <= 1e-12


def test_log_linear_needs_debt(base_solution):
    with pytest.raises(InvalidParameterError):
        simulate_ramsey(base_solution, ModelParams(beta=0.99, b_star=0.0), 0.5, 3, "loglinear")


@settings(max_examples=30, deadline=None)
@given(
    st.floats(1.05, 5.0),
    st.floats(0.02, 1.9),
    st.floats(-5, 5),
    st.integers(0, 2**31),
    st.floats(-0.9, 0.9),
)
def test_linearity_and_residuals(f_pi, g_b, b0, seed, rho):
    params = P99
    rule = AdHocRule(f_pi, g_b, 0.1, 0.1, rho, 0.0)
    shocks = draw_shocks(0.1, 0.1, rho, 0.0, horizon=40, seed=seed)
    doubled = ShockSequence(40, 2 * shocks.eps_R, 2 * shocks.eps_s)
    one = simulate_adhoc(params, rule, shocks, b0)
    two = simulate_adhoc(params, rule, doubled, 2 * b0)
    assert one.max_residual() <= 1e-12
    for col in ("pi_dev", "b_dev", "R_dev", "s_dev"):
        np.testing.assert_allclose(getattr(two, col), 2 * getattr(one, col), rtol=1e-12, atol=1e-15)
