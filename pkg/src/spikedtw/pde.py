"""Backward boundary value problem for the deformed Tracy-Widom laws.

``F(x, w) = P(-Lambda_0 <= x)`` for the stochastic Airy operator with Robin
parameter ``w`` solves

    dF/dx + (2/beta) d2F/dw2 + (x - w^2) dF/dw = 0,

with ``F -> 0`` as ``w -> -inf`` and ``F -> 1`` as ``x, w -> +inf`` together.
The solver marches ``x`` downward (the diffusive direction) with
Crank-Nicolson. The ``w`` axis is compactified by ``w = L tan(theta)`` so
that both ``w = -inf`` (inflow, Dirichlet data) and ``w = +inf`` (outflow,
no condition needed) are grid lines; the ``w = +inf`` column is the
Dirichlet law ``F_{beta,inf}`` itself. Advection is fitted exponentially
(Il'in-Allen-Southwell), which upwinds by the sign of the drift wherever the
cell Peclet number is large and is central-difference accurate elsewhere.
"""
from dataclasses import dataclass, field
import math

import numpy as np
from scipy.interpolate import RectBivariateSpline
from scipy.linalg import solve_banded
from scipy.special import ndtr


class PdeError(RuntimeError):
    pass


@dataclass(frozen=True)
class PdeGrid:
    """Discretisation of the ``(x, w)`` half-plane.

    ``dw`` is the spacing near ``w = 0``; the node spacing grows like
    ``(L^2 + w^2)/L`` away from it, with ``L = w_scale``. The terminal
    profile is imposed at ``x_max``; rows within ``burn`` of it are still
    relaxing from that guess and are not stored.
    """

    x_min: float = -10.0
    x_max: float = 12.0
    dx: float = 2e-3
    dw: float = 2e-2
    w_scale: float = 4.0
    x_out: float = 0.02  # spacing of stored rows
    cfl: float = 4.0
    burn: float = 2.0

    def __post_init__(self):
        if not self.x_max - self.burn > self.x_min:
            raise ValueError("need x_max - burn > x_min")
        if self.burn < 0:
            raise ValueError("burn must be nonnegative")
        if self.dx <= 0 or self.dw <= 0 or self.w_scale <= 0:
            raise ValueError("grid spacings must be positive")

    @property
    def dtheta(self):
        n = self.n_theta
        return math.pi / n

    @property
    def n_theta(self):
        return int(math.ceil(math.pi * self.w_scale / self.dw))

    def theta(self):
        return -0.5 * math.pi + self.dtheta * np.arange(self.n_theta + 1)

    def w_nodes(self):
        th = self.theta()
        w = self.w_scale * np.tan(th)
        w[0], w[-1] = -np.inf, np.inf
        return w

    def w_to_theta(self, w):
        return np.arctan(np.asarray(w, dtype=float) / self.w_scale)


def _pcoth(p):
    """p * coth(p), continuous at 0."""
    p = np.abs(p)
    out = np.ones_like(p)
    small = p < 1e-4
    out[small] = 1.0 + p[small] ** 2 / 3.0
    big = ~small
    out[big] = p[big] / np.tanh(p[big])
    return out


class _Operator:
    """Fitted three-point operator on the compactified ``w`` axis."""

    def __init__(self, beta, grid):
        self.grid = grid
        th = grid.theta()
        L = grid.w_scale
        self.dth = grid.dtheta
        D = 2.0 / beta
        c, s = np.cos(th), np.sin(th)
        c[0] = c[-1] = 0.0
        self.diff = D * c ** 4 / L ** 2
        self.b_x = c * c / L  # coefficient of x in the drift
        self.b_0 = -L * s * s - 2.0 * D * s * c ** 3 / L ** 2

    def coeffs(self, x):
        """Lower and upper weights (alpha, gamma) of ``L F`` at level ``x``."""
        B = self.b_x * x + self.b_0
        A = self.diff
        h = self.dth
        with np.errstate(divide="ignore", invalid="ignore"):
            pe = np.where(A > 0, B * h / (2.0 * A), np.inf)
        a_eff = np.where(A > 0, A * _pcoth(np.where(np.isfinite(pe), pe, 0.0)), 0.0)
        a_eff = np.where(np.isfinite(pe), a_eff, np.abs(B) * h / 2.0)
        alpha = a_eff / h ** 2 - B / (2.0 * h)
        gamma = a_eff / h ** 2 + B / (2.0 * h)
        return alpha, gamma, B


@dataclass
class CdfSurface:
    """Tabulated ``F(x, w)``; rows are ascending ``x``, columns ascending ``w``
    (first column ``w = -inf``, last ``w = +inf``)."""

    xs: np.ndarray
    ws: np.ndarray
    values: np.ndarray
    grid: PdeGrid
    beta: float
    level: int = 0
    clip_events: int = 0
    substeps: int = 0
    _spline: object = field(default=None, repr=False)

    def _interp(self):
        if self._spline is None:
            th = self.grid.theta()
            self._spline = RectBivariateSpline(self.xs, th, self.values, kx=3, ky=3)
        return self._spline

    def __call__(self, x, w):
        """Interpolated ``F`` at points ``(x, w)`` (broadcast); ``w`` may be ``+-inf``."""
        x, w = np.broadcast_arrays(np.asarray(x, dtype=float), np.asarray(w, dtype=float))
        if np.any(x < self.xs[0] - 1e-12) or np.any(x > self.xs[-1] + 1e-12):
            raise ValueError("x outside the solved range")
        th = self.grid.w_to_theta(w)
        out = self._interp().ev(x.ravel(), th.ravel()).reshape(x.shape)
        return np.clip(out, 0.0, 1.0)

    def column(self, w):
        """``F(., w)`` on the stored ``x`` rows."""
        return self(self.xs, np.full_like(self.xs, w))


def _terminal(grid, beta, w, lower):
    s = math.sqrt(2.0 / beta) * grid.x_max ** -0.25 if grid.x_max > 0 else 1.0
    centre = -math.sqrt(max(grid.x_max, 0.0))
    with np.errstate(invalid="ignore"):
        sig = ndtr((w - centre) / s)
    sig[0], sig[-1] = 0.0, 1.0
    return lower + (1.0 - lower) * sig


def _march(beta, grid, lower_fn, terminal_lower):
    op = _Operator(beta, grid)
    w = grid.w_nodes()
    n = len(w)
    F = _terminal(grid, beta, w, terminal_lower)

    nsteps = int(round((grid.x_max - grid.x_min) / grid.dx))
    dx = (grid.x_max - grid.x_min) / nsteps
    every = max(1, int(round(grid.x_out / dx)))
    rows = [F.copy()]
    xs_out = [grid.x_max]
    clip_events = 0
    total_sub = 0
    ab = np.zeros((3, n))

    x = grid.x_max
    for step in range(nsteps):
        # substep count from the Courant number and CN positivity of the explicit half
        a0, g0, B0 = op.coeffs(x)
        courant = np.max(np.abs(B0)) * dx / op.dth
        diag_rate = np.max(a0[1:-1] + g0[1:-1])
        nsub = max(1, int(math.ceil(courant / grid.cfl)), int(math.ceil(dx * diag_rate / 2.0)))
        h = dx / nsub
        total_sub += nsub - 1
        for _ in range(nsub):
            x_new = x - h
            alpha, gamma, _ = op.coeffs(x)
            # explicit half at x
            rhs = F.copy()
            rhs[1:] += 0.5 * h * (alpha[1:] * F[:-1] - (alpha[1:] + gamma[1:]) * F[1:])
            rhs[1:-1] += 0.5 * h * gamma[1:-1] * F[2:]
            # implicit half at x_new
            alpha, gamma, _ = op.coeffs(x_new)
            ab[1, :] = 1.0 + 0.5 * h * (alpha + gamma)
            ab[0, 1:] = -0.5 * h * gamma[:-1]
            ab[2, :-1] = -0.5 * h * alpha[1:]
            # Dirichlet row at w = -inf
            lo = lower_fn(x_new)
            ab[1, 0] = 1.0
            ab[0, 1] = 0.0
            rhs[0] = lo
            F = solve_banded((1, 1), ab, rhs, overwrite_b=True, check_finite=False)
            x = x_new
        bad = (F < -1e-12) | (F > 1.0 + 1e-12)
        if bad.any():
            clip_events += int(bad.sum())
        # roundoff-level excursions are clamped silently
        np.clip(F, 0.0, 1.0, out=F)
        if (step + 1) % every == 0 or step == nsteps - 1:
            rows.append(F.copy())
            xs_out.append(x)
    xs_out = np.array(xs_out[::-1])
    values = np.array(rows[::-1])
    keep = xs_out <= grid.x_max - grid.burn + 1e-9
    return xs_out[keep], w, values[keep], clip_events, total_sub


def solve_level0(beta, grid=None):
    """Solve for ``F_{beta,w}(x)``, the law of ``-Lambda_0``.

    Returns a :class:`CdfSurface` over ``[grid.x_min, grid.x_max - grid.burn]`` and all
    ``w`` including ``+-inf``.
    """
    grid = grid or PdeGrid()
    if beta <= 0:
        raise ValueError("beta must be positive")
    xs, ws, vals, clips, sub = _march(beta, grid, lambda x: 0.0, 0.0)
    return CdfSurface(xs, ws, vals, grid, float(beta), 0, clips, sub)


def solve_higher(beta, grid, k, previous):
    """Level-``k`` surface ``P(-Lambda_k <= x)`` from the level ``k-1`` surface.

    Same equation; the ``w = -inf`` boundary takes the values of the previous
    level's ``w = +inf`` column (one eigenvalue already used by the explosion
    that restarts the path at ``+inf``).
    """
    if previous.level != k - 1:
        raise ValueError(f"previous surface is level {previous.level}, need {k - 1}")
    if previous.grid != grid or previous.beta != beta:
        raise ValueError("previous surface was computed on a different grid or beta")
    top = previous.values[:, -1]
    xs_prev = previous.xs

    def lower(x):
        return float(np.interp(x, xs_prev, top))

    xs, ws, vals, clips, sub = _march(beta, grid, lower, lower(grid.x_max))
    return CdfSurface(xs, ws, vals, grid, float(beta), int(k), clips, sub)


def solve_levels(beta, grid=None, k_max=1):
    """Surfaces for levels ``0 .. k_max - 1``."""
    grid = grid or PdeGrid()
    out = [solve_level0(beta, grid)]
    for k in range(1, k_max):
        out.append(solve_higher(beta, grid, k, out[-1]))
    return out


def dirichlet_slice(surface, tol=1e-5):
    """Tabulated ``F_{beta,inf}(x)`` on the stored rows.

    The ``w = +inf`` column is exact on the compactified grid. As a check the
    two last finite columns are extrapolated with the ``F_inf - a/w`` law and
    must reproduce the stored column within ``tol``; otherwise the grid does
    not resolve the approach to ``w = +inf`` and :class:`PdeError` is raised.
    """
    ws, v = surface.ws, surface.values
    w1, w2 = ws[-3], ws[-2]
    ext = v[:, -2] + (v[:, -2] - v[:, -3]) * w1 / (w2 - w1)
    err = float(np.max(np.abs(ext - v[:, -1])))
    if err > tol:
        raise PdeError(f"1/w extrapolation misses w=+inf column by {err:.2e} > {tol:.1e}; refine dw")
    return surface.xs.copy(), v[:, -1].copy()
