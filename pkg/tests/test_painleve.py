import math

import numpy as np
import pytest
from scipy.integrate import solve_ivp

from spikedtw import fredholm
from spikedtw import painleve as P


def test_u0(hm):
    assert abs(float(hm.eval_u(0.0)) - 0.3670615515480784) < 1e-8


def test_doubled_resolution(hm):
    fine = P.solve_hastings_mcleod(npts=512)
    x = np.linspace(-12, 6, 37)
    assert np.max(np.abs(fine.eval_u(x) - hm.eval_u(x))) < 1e-10


def test_pii_residual(hm):
    x = np.linspace(-13.5, 7.5, 1001)
    h = 1e-2
    u = hm.eval_u
    d2 = (-u(x + 2 * h) + 16 * u(x + h) - 30 * u(x) + 16 * u(x - h) - u(x - 2 * h)) / (12 * h * h)
    assert np.max(np.abs(d2 - 2 * u(x) ** 3 - x * u(x))) < 1e-8


def test_first_integral(hm):
    x = np.linspace(hm.x_min, hm.x_max, 1001)
    u, du = hm.eval_u(x), hm.eval_du(x)
    assert np.max(np.abs(hm.eval_v(x) + u ** 4 - du ** 2 + x * u ** 2)) < 1e-8


def test_branch_properties(hm):
    x = np.linspace(hm.x_min, hm.x_max, 2001)
    assert np.all(hm.eval_u(x) > 0)
    E, F, v = hm.eval_E(x), hm.eval_F(x), hm.eval_v(x)
    assert np.all((E > 0) & (E <= 1)) and np.all((F > 0) & (F <= 1))
    assert np.all(np.diff(E) >= -1e-13) and np.all(np.diff(F) >= -1e-13)
    assert np.all(v >= 0) and np.all(np.diff(v) <= 1e-13)


def test_right_log_derivative(hm):
    r = float(hm.eval_du(hm.x_max) / hm.eval_u(hm.x_max))
    assert abs(r / -math.sqrt(hm.x_max) - 1) < 0.05


def test_left_asymptotic(hm):
    x = -12.0
    assert abs(float(hm.eval_u(x)) - P.hm_left_asymptotic(x)) < 1e-4


def test_E_tail(hm):
    # 1 - E(x) = O(exp(-c x^{3/2})); the fitted rate is close to the Airy value 2/3
    x = np.linspace(2, 6, 21)
    tail = -np.expm1(hm.eval_logE(x))
    c = -np.polyfit(x ** 1.5, np.log(tail), 1)[0]
    assert c > 0
    assert np.all(tail < np.exp(-0.5 * c * x ** 1.5))


def test_against_fredholm(hm):
    for x in (-6.0, -2.0, 0.0, 1.5, 4.0):
        assert abs(float(hm.eval_F(x)) - fredholm.airy_kernel_det(x)) < 1e-10
        EF = fredholm.half_airy_det(x, -1) ** 2
        assert abs(float(hm.eval_E(x) * hm.eval_F(x)) - EF) < 1e-10


def test_refuses_bad_newton():
    with pytest.raises(P.PainleveError):
        P.solve_hastings_mcleod(max_iter=1)
    with pytest.raises(ValueError):
        P.solve_hastings_mcleod(x_min=-3.0)


def test_out_of_range(hm):
    with pytest.raises(ValueError):
        hm.eval_u(hm.x_max + 1.0)


def test_initial_condition(hm):
    for x in (-3.0, 0.0, 2.0):
        s = P.lax_propagate(hm, x, 0.0)
        assert s.f == s.g == pytest.approx(float(hm.eval_E(x)), abs=0)


def test_duality(hm):
    ws = np.linspace(0.0, 4.0, 9)
    for x in (-6.0, -1.0, 0.0, 3.0):
        f, g = P.lax_profile(hm, x, ws)
        fm = P.lax_profile(hm, x, -ws)[0]
        np.testing.assert_allclose(g * np.exp(-(ws ** 3 / 3 - x * ws)), fm, atol=1e-8, rtol=0)


def test_forward_integration_agrees_near_zero(hm):
    # direct integration is usable for small w > 0 and must match the bounded branch
    for x in (-2.0, 0.0, 2.0):
        u, du, E = float(hm.eval_u(x)), float(hm.eval_du(x)), float(hm.eval_E(x))
        rhs = lambda w, y: [u * u * y[0] + (-w * u - du) * y[1],
                            (-w * u + du) * y[0] + (w * w - x - u * u) * y[1]]
        ws = np.linspace(0, 1.0, 5)
        sol = solve_ivp(rhs, (0, 1.0), [E, E], t_eval=ws, rtol=1e-12, atol=1e-14, method="DOP853")
        np.testing.assert_allclose(P.lax_profile(hm, x, ws), sol.y, atol=1e-8)


def test_ratio_at_zero(hm):
    for x in (-5.0, 0.0, 4.0):
        assert abs(P.lax_ratio_at_zero(hm, x) - 1.0) < 1e-9


def test_lax_positivity(hm):
    ws = np.linspace(-4, 6, 41)
    for x in (-4.0, 0.0, 3.0):
        f, g = P.lax_profile(hm, x, ws)
        assert np.all(f <= 1 + 1e-12) and np.all(g > 0)
        # at very negative w f is far below double precision
        assert np.all(f[ws > -3] > 0) and np.all(f >= 0)


def test_f_tends_to_one_algebraically(hm):
    # 1 - f decays like v(x)/w as w -> inf, so w (1 - f) -> v(x)
    for x in (-1.0, 0.0, 2.0):
        f = P.lax_profile(hm, x, [200.0, 400.0])[0]
        lim = 2 * 400 * (1 - f[1]) - 200 * (1 - f[0])  # Richardson in 1/w
        assert abs(lim - float(hm.eval_v(x))) < 1e-3 * max(1.0, float(hm.eval_v(x)))
    for x in (2.5, 4.0):
        assert abs(P.lax_profile(hm, x, [10.0])[0, 0] - 1) < 1e-4


@pytest.mark.parametrize("w", [-1.0, 0.0, 1.0])
def test_x_compatibility(hm, w):
    assert P.lax_check_x(hm, -2.0, 2.0, w) < 1e-7


def test_f_increasing_in_x(hm):
    xs = np.linspace(-6, 6, 49)
    for w in (-1.0, 0.5, 2.0):
        f = np.array([P.lax_profile(hm, x, [w])[0, 0] for x in xs])
        assert np.all(np.diff(f) > 0)
    assert P.lax_propagate(hm, 6.0, 1.0).f > 0.999


def test_F2_special_cases(hm):
    xs = np.linspace(-6, 4, 11)
    np.testing.assert_allclose(P.F2_curve(hm, xs, math.inf), hm.eval_F(xs), atol=1e-14)
    np.testing.assert_allclose(P.F2_curve(hm, xs, 0.0), hm.eval_E(xs) * hm.eval_F(xs), atol=1e-14)
    assert P.eval_F2(hm, 0.0, -math.inf) == 0.0


def test_F4_special_cases(hm):
    s = 2 ** (2 / 3)
    xs = np.linspace(-5, 3, 9)
    E, F = hm.eval_E(s * xs), hm.eval_F(s * xs)
    np.testing.assert_allclose(P.F4_curve(hm, xs, math.inf),
                               0.5 * (np.sqrt(E) + 1 / np.sqrt(E)) * np.sqrt(F), atol=1e-14)
    np.testing.assert_allclose(P.F4_curve(hm, xs, 0.0), np.sqrt(E * F), atol=1e-14)


@pytest.mark.parametrize("surface", [P.F2_surface, P.F4_surface])
def test_distribution_properties(hm, surface):
    xs = np.linspace(-5, 3, 33)
    ws = np.linspace(-3, 4, 15)
    S = surface(hm, xs, ws)
    assert np.all((S > 0) & (S <= 1 + 1e-12))
    assert np.all(np.diff(S, axis=0) >= 0) and np.all(np.diff(S, axis=1) >= 0)


def test_surface_matches_pointwise(hm):
    xs, ws = np.array([-2.0, 0.5]), np.array([-1.0, 0.0, 2.0])
    S2, S4 = P.F2_surface(hm, xs, ws), P.F4_surface(hm, xs, ws)
    for i, x in enumerate(xs):
        for j, w in enumerate(ws):
            assert abs(S2[i, j] - P.eval_F2(hm, x, w)) < 1e-14
            assert abs(S4[i, j] - P.eval_F4(hm, x, w)) < 1e-14
