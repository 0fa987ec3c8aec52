import math

import numpy as np
import pytest

from spikedtw import pde, riccati
from spikedtw import painleve as P

XS = np.arange(-5.0, 2.0 + 1e-9, 0.25)
COARSE = dict(dx=4e-3, dw=4e-2)


def test_dirichlet_beta2(hm, surfaces):
    s = surfaces[2]
    xs, col = pde.dirichlet_slice(s)
    assert np.all(xs == s.xs)
    sel = (xs >= -5) & (xs <= 2)
    assert np.max(np.abs(col[sel] - hm.eval_F(xs[sel]))) < 1e-3
    assert abs(float(s(0.0, math.inf)) - float(hm.eval_F(0.0))) < 1e-3


def test_w0_beta2(hm, surfaces):
    got = surfaces[2](XS, 0.0)
    assert np.max(np.abs(got - hm.eval_E(XS) * hm.eval_F(XS))) < 1e-3


def test_beta4(hm, surfaces):
    s = 2 ** (2 / 3)
    E, F = hm.eval_E(s * XS), hm.eval_F(s * XS)
    assert np.max(np.abs(surfaces[4](XS, 0.0) - np.sqrt(E * F))) < 1e-3
    assert np.max(np.abs(surfaces[4](XS, math.inf) - 0.5 * (np.sqrt(E) + 1 / np.sqrt(E)) * np.sqrt(F))) < 1e-3


def test_beta1_dirichlet(hm, surfaces):
    assert np.max(np.abs(surfaces[1](XS, math.inf) - np.sqrt(hm.eval_E(XS) * hm.eval_F(XS)))) < 1e-3


@pytest.mark.parametrize("beta", [1, 2, 4])
def test_maximum_principle_and_monotonicity(surfaces, beta):
    s = surfaces[beta]
    assert s.clip_events == 0
    assert np.all((s.values >= 0) & (s.values <= 1))
    assert np.min(np.diff(s.values, axis=1)) > -1e-8
    assert np.min(np.diff(s.values, axis=0)) > -1e-8


def test_boundary_columns(surfaces):
    s = surfaces[2]
    assert np.all(s.values[:, 0] == 0.0)
    assert np.all(np.isinf(s.ws[[0, -1]]))


def test_level1(surfaces):
    s0, s1 = surfaces[2], surfaces[2, 1]
    assert s1.level == 1
    assert np.all(s1.values >= s0.values - 1e-8)
    np.testing.assert_allclose(s1.values[:, 0], s0.values[:, -1], atol=1e-12)


def test_level_mismatch(surfaces):
    with pytest.raises(ValueError):
        pde.solve_higher(2.0, pde.PdeGrid(), 2, surfaces[2])


def test_level1_vs_diffusion():
    grid = pde.PdeGrid(**COARSE)
    s0 = pde.solve_level0(1.0, grid)
    s1 = pde.solve_higher(1.0, grid, 1, s0)
    for i, (x, w) in enumerate([(-4.0, math.inf), (-3.0, 0.0), (-2.5, 1.0), (-2.0, -1.0), (-1.0, math.inf)]):
        F, err = riccati.higher_cdf(1.0, w, x, 2, 6000, seed=40 + i)
        assert abs(F - float(s1(x, w))) < 3 * err


def test_terminal_insensitivity():
    a = pde.solve_level0(2.0, pde.PdeGrid(**COARSE))
    b = pde.solve_level0(2.0, pde.PdeGrid(x_max=14.0, **COARSE))
    xs = np.linspace(-8, 2, 41)
    ws = np.array([-2.0, 0.0, 1.0, 3.0, math.inf])
    assert np.max(np.abs(a(xs[:, None], ws) - b(xs[:, None], ws))) < 1e-4


def test_refinement(surfaces):
    probes = (np.array([-3.0, -1.0, 0.0, 1.0, -2.0]), np.array([0.0, 1.0, math.inf, -1.0, 2.0]))
    v = [pde.solve_level0(2.0, pde.PdeGrid(dx=8e-3, dw=8e-2))(*probes),
         pde.solve_level0(2.0, pde.PdeGrid(**COARSE))(*probes),
         surfaces[2](*probes)]
    d1, d2 = np.max(np.abs(v[1] - v[0])), np.max(np.abs(v[2] - v[1]))
    assert d2 < d1 / 2


def test_slope_diagnostic(surfaces):
    with pytest.raises(pde.PdeError):
        pde.dirichlet_slice(surfaces[2], tol=0.0)


def test_grid_validation():
    with pytest.raises(ValueError):
        pde.PdeGrid(x_min=3.0, x_max=2.0)
    with pytest.raises(ValueError):
        pde.PdeGrid(dx=0.0)
    with pytest.raises(ValueError):
        pde.solve_level0(-1.0)


def test_out_of_range(surfaces):
    with pytest.raises(ValueError):
        surfaces[2](-20.0, 0.0)
