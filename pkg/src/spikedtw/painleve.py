"""Hastings-McLeod solution of Painleve II and the exact beta = 2, 4 laws.

The Hastings-McLeod function ``u`` solves ``u'' = 2 u^3 + x u`` with
``u(x) ~ Ai(x)`` as ``x -> +inf``. From it

    v(x) = int_x^inf u^2,   E(x) = exp(-int_x^inf u),   F(x) = exp(-int_x^inf v),

and the pair ``(f, g)`` obtained by integrating the ``w``-member of the Lax
pair from ``f(x, 0) = g(x, 0) = E(x)`` gives the deformed Tracy-Widom laws

    F_{2,w}(x) = f(x, w) F(x),
    F_{4,w}(x) = [((f + g) E^{-1/2} + (f - g) E^{1/2}) / 2] F^{1/2}   at (2^{2/3} x, 2^{1/3} w).
"""
from dataclasses import dataclass, field
import math

import numpy as np
from numpy.polynomial import Chebyshev
from scipy.integrate import solve_ivp

from . import _cheb
from .airy import airy_ai, airy_ai_tail_integral


class PainleveError(RuntimeError):
    """Raised when the Hastings-McLeod solve or a Lax-pair integration fails."""


def hm_left_asymptotic(x):
    """Leading terms of ``u(x)`` as ``x -> -inf``."""
    x = np.asarray(x, dtype=float)
    return np.sqrt(-x / 2.0) * (1.0 + 1.0 / (8.0 * x ** 3))


@dataclass(frozen=True)
class HMSolution:
    """Hastings-McLeod function and the derived ``v, E, F`` on ``[x_min, x_max]``.

    The functions are stored as Chebyshev series on the solve interval and
    evaluated by Clenshaw summation, so they can be queried anywhere in
    ``[x_min, x_max]``. ``xs``/``u``/``du`` hold the collocation values.
    """

    x_min: float
    x_max: float
    xs: np.ndarray
    u_series: Chebyshev
    du_series: Chebyshev
    v_series: Chebyshev
    logE_series: Chebyshev
    logF_series: Chebyshev
    newton_iterations: int = 0
    residual: float = 0.0
    _cache: dict = field(default_factory=dict, repr=False, compare=False)

    @property
    def u(self):
        return self.u_series(self.xs)

    @property
    def du(self):
        return self.du_series(self.xs)

    def _check(self, x):
        x = np.asarray(x, dtype=float)
        if np.any(x < self.x_min - 1e-12) or np.any(x > self.x_max + 1e-12):
            raise ValueError(f"x outside the solved interval [{self.x_min}, {self.x_max}]")
        return x

    def eval_u(self, x):
        return self.u_series(self._check(x))

    def eval_du(self, x):
        return self.du_series(self._check(x))

    # v >= 0 and log E, log F <= 0 hold exactly; clamp series roundoff
    def eval_v(self, x):
        return np.maximum(self.v_series(self._check(x)), 0.0)

    def eval_E(self, x):
        return np.exp(self.eval_logE(x))

    def eval_F(self, x):
        return np.exp(self.eval_logF(x))

    def eval_logE(self, x):
        return np.minimum(self.logE_series(self._check(x)), 0.0)

    def eval_logF(self, x):
        return np.minimum(self.logF_series(self._check(x)), 0.0)


def _initial_guess(x):
    ai, _ = airy_ai(x)
    left = np.sqrt((np.sqrt(x * x + 1.0) - x) / 4.0)
    s = 0.5 * (1.0 + np.tanh(x))
    return s * ai + (1.0 - s) * left


def solve_hastings_mcleod(x_min=-14.0, x_max=8.0, npts=256, tol=1e-12, max_iter=50):
    """Solve for the Hastings-McLeod function by Chebyshev collocation and Newton.

    Parameters
    ----------
    x_min, x_max : float
        Interval ends. The boundary values are ``Ai(x_max)`` on the right and
        the two-term asymptotic ``sqrt(-x/2) (1 + 1/(8 x^3))`` on the left.
    npts : int
        Polynomial degree of the collocation solution.
    tol : float
        Newton stops when the update is below ``tol`` in max norm.

    Returns
    -------
    HMSolution

    Raises
    ------
    PainleveError
        If Newton does not converge or the result is not the positive,
        pole-free branch.
    """
    if x_min > -6.0 or x_max < 4.0:
        raise ValueError("interval too short to pin the Hastings-McLeod branch")
    n = int(npts)
    x = _cheb.lobatto(n, x_min, x_max)
    d1 = _cheb.diff_matrix(n, x_min, x_max)
    d2 = d1 @ d1
    left_bc = float(hm_left_asymptotic(x_min))
    right_bc = airy_ai(x_max)[0]

    u = _initial_guess(x)
    u[0], u[-1] = left_bc, right_bc
    step = np.inf
    for it in range(1, max_iter + 1):
        res = d2 @ u - 2.0 * u ** 3 - x * u
        jac = d2 - np.diag(6.0 * u ** 2 + x)
        res[0], res[-1] = u[0] - left_bc, u[-1] - right_bc
        jac[0, :] = 0.0
        jac[-1, :] = 0.0
        jac[0, 0] = jac[-1, -1] = 1.0
        du = np.linalg.solve(jac, -res)
        u = u + du
        step = np.max(np.abs(du))
        if not np.all(np.isfinite(u)):
            break
        if step < tol:
            break
    else:
        it = max_iter
    if not np.all(np.isfinite(u)) or step >= tol:
        raise PainleveError(f"Newton did not converge: last update {step:.3e} after {it} iterations")
    if np.any(u <= 0.0):
        raise PainleveError("collocation converged to a solution that is not positive")

    interior = d2 @ u - 2.0 * u ** 3 - x * u
    residual = float(np.max(np.abs(interior[1:-1])))

    u_s = _cheb.series(u, x_min, x_max)
    du_s = u_s.deriv()

    # integrals from x to x_max, completed with Airy tails beyond x_max
    ai, aip = airy_ai(x_max)
    tail_v = aip * aip - x_max * ai * ai
    tail_u = airy_ai_tail_integral(x_max)
    tail_int_v = (2.0 / 3.0) * x_max ** 2 * ai ** 2 - (2.0 / 3.0) * x_max * aip ** 2 - ai * aip / 3.0

    # u^2 has twice the degree: resample on a finer Lobatto grid
    x2 = _cheb.lobatto(2 * n, x_min, x_max)
    u2_s = _cheb.series(u_s(x2) ** 2, x_min, x_max)
    int_u2 = u2_s.integ(lbnd=x_max)  # = -int_x^{x_max} u^2
    v_s = tail_v - int_u2
    int_u = u_s.integ(lbnd=x_max)
    logE_s = -(tail_u - int_u)
    int_v = v_s.integ(lbnd=x_max)
    logF_s = -(tail_int_v - int_v)

    return HMSolution(
        x_min=float(x_min),
        x_max=float(x_max),
        xs=x,
        u_series=u_s,
        du_series=du_s,
        v_series=v_s,
        logE_series=logE_s,
        logF_series=logF_s,
        newton_iterations=it,
        residual=residual,
    )


# ---------------------------------------------------------------------------
# Lax pair


@dataclass(frozen=True)
class LaxState:
    x: float
    w: float
    f: float
    g: float


_RTOL = 1e-12
_STIFF_W = 16.0
_ATOL = 1e-300
_F_DIRECT_MIN = 1e-6


def _coeffs(hm, x):
    x = float(x)
    return x, float(hm.eval_u(x)), float(hm.eval_du(x)), float(hm.eval_E(x))


def _lax_negative(x, u, up, E, ws):
    """Integrate the w-system from w = 0 down to min(ws) and return (f, g) at ws."""
    ws = np.asarray(ws, dtype=float)

    def rhs(w, y):
        f, g = y
        return [u * u * f + (-w * u - up) * g, (-w * u + up) * f + (w * w - x - u * u) * g]

    w_end = float(ws.min())
    sol = solve_ivp(rhs, (0.0, w_end), [E, E], method="DOP853", rtol=_RTOL, atol=_ATOL,
                    t_eval=np.sort(ws)[::-1], dense_output=False)
    if not sol.success:
        raise PainleveError(f"Lax integration failed at x={x}: {sol.message}")
    order = np.argsort(ws)[::-1]
    out = np.empty((2, len(ws)))
    out[:, order] = sol.y
    return out


def _lax_positive(x, u, up, E, ws):
    """(f, g) at positive ws via the ratio r = g/f integrated down from large w.

    The ratio is the solution that stays bounded as w -> +inf; integrating it
    toward w = 0 is the stable direction. ``f`` then follows from
    ``d log f / dw = u^2 - (w u + u') r`` started at ``f(x, 0) = E(x)``.
    Also returns ``r(0)``, which equals 1 for the Hastings-McLeod Lax data.
    """
    ws = np.asarray(ws, dtype=float)
    w_top = float(ws.max()) + 4.0 + math.sqrt(max(x, 0.0) + 2.0 * u * u)
    r_top = (w_top * u - up) / (w_top * w_top - x - 2.0 * u * u)

    def rhs(w, y):
        r = y[0]
        dr = (up - w * u) + (w * w - x - 2.0 * u * u) * r + (w * u + up) * r * r
        return [dr, u * u - (w * u + up) * r]

    def jac(w, y):
        r = y[0]
        return [[(w * w - x - 2.0 * u * u) + 2.0 * (w * u + up) * r, 0.0],
                [-(w * u + up), 0.0]]

    ws_desc = np.sort(ws)[::-1]
    y0 = [r_top, 0.0]
    start = w_top
    parts = []
    # the linear coefficient ~ w^2 makes the top stiff; use an implicit method there
    if w_top > _STIFF_W:
        hi = ws_desc[ws_desc > _STIFF_W]
        sol = solve_ivp(rhs, (w_top, _STIFF_W), y0, method="Radau", jac=jac, rtol=_RTOL,
                        atol=1e-15, t_eval=np.concatenate([hi, [_STIFF_W]]))
        if not sol.success:
            raise PainleveError(f"Lax ratio integration failed at x={x}: {sol.message}")
        parts.append(sol.y[:, :-1])
        y0, start = sol.y[:, -1], _STIFF_W
    lo = ws_desc[ws_desc <= start]
    sol = solve_ivp(rhs, (start, 0.0), y0, method="DOP853", rtol=_RTOL,
                    atol=1e-15, t_eval=np.concatenate([lo, [0.0]]))
    if not sol.success:
        raise PainleveError(f"Lax ratio integration failed at x={x}: {sol.message}")
    parts.append(sol.y)
    sol_y = np.concatenate(parts, axis=1)
    r = sol_y[0, :-1]
    cum = sol_y[1, :-1]  # = -int_w^{w_top} h
    cum0 = sol_y[1, -1]
    logf = math.log(E) + (cum - cum0)
    f = np.exp(logf)
    order = np.argsort(ws)[::-1]
    out = np.empty((2, len(ws)))
    out[0, order] = f
    out[1, order] = r * f
    return out, float(sol_y[0, -1])


def lax_profile(hm, x, ws):
    """``(f(x, ws), g(x, ws))`` as a ``(2, len(ws))`` array for one ``x``."""
    x, u, up, E = _coeffs(hm, x)
    ws = np.atleast_1d(np.asarray(ws, dtype=float))
    out = np.empty((2, len(ws)))
    neg = ws < 0
    pos = ws > 0
    zero = ws == 0
    out[:, zero] = E
    if neg.any():
        out[:, neg] = _lax_negative(x, u, up, E, ws[neg])
        # tiny values are cancellations there: take them from duality with the w > 0 branch
        tiny = neg & (np.min(out, axis=0) < _F_DIRECT_MIN)
        if tiny.any():
            a = -ws[tiny]
            fp, gp = _lax_positive(x, u, up, E, a)[0]
            phase = a ** 3 / 3.0 - x * a
            small_f = out[0, tiny] < _F_DIRECT_MIN
            small_g = out[1, tiny] < _F_DIRECT_MIN
            out[0, tiny] = np.where(small_f, gp * np.exp(-phase), out[0, tiny])
            out[1, tiny] = np.where(small_g, fp * np.exp(-phase), out[1, tiny])
    if pos.any():
        out[:, pos], _ = _lax_positive(x, u, up, E, ws[pos])
    return out


def lax_ratio_at_zero(hm, x):
    """``g/f`` at ``w = 0`` reached from the bounded-at-infinity branch (should be 1)."""
    x, u, up, E = _coeffs(hm, x)
    _, r0 = _lax_positive(x, u, up, E, np.array([1.0]))
    return r0


def lax_propagate(hm, x, w):
    """Solve the w-equation of the Lax pair from ``f = g = E(x)`` at ``w = 0``.

    ``w <= 0`` is integrated directly. For ``w > 0`` direct integration is
    unstable (the growing mode is ``exp(w^3/3 - x w)``), so ``g/f`` is taken
    from the solution that is bounded as ``w -> +inf`` and integrated back to
    the requested point.
    """
    f, g = lax_profile(hm, x, [w])[:, 0]
    return LaxState(float(x), float(w), float(f), float(g))


def lax_x_route(hm, x0, x1, w):
    """Carry ``(f, g)`` from ``(x0, w)`` to ``(x1, w)`` with the x-equation of the Lax pair."""
    f0, g0 = lax_profile(hm, x0, [w])[:, 0]

    def rhs(x, y):
        u = float(hm.eval_u(x))
        return [u * y[1], u * y[0] - w * y[1]]

    sol = solve_ivp(rhs, (float(x0), float(x1)), [f0, g0], method="DOP853", rtol=_RTOL, atol=1e-16)
    if not sol.success:
        raise PainleveError(f"x-propagation failed: {sol.message}")
    return sol.y[:, -1]


def lax_check_x(hm, x0, x1, w):
    """Max abs discrepancy between the x-route and the w-route at ``(x1, w)``."""
    via_x = lax_x_route(hm, x0, x1, w)
    via_w = lax_profile(hm, x1, [w])[:, 0]
    return float(np.max(np.abs(via_x - via_w)))


# ---------------------------------------------------------------------------
# beta = 2, 4 distribution functions

_S2 = 2.0 ** (2.0 / 3.0)
_S1 = 2.0 ** (1.0 / 3.0)


def eval_F2(hm, x, w):
    """``F_{2,w}(x) = f(x, w) F(x)``; ``w = inf`` gives ``F(x)``."""
    w = float(w)
    F = float(hm.eval_F(x))
    if math.isinf(w):
        if w < 0:
            return 0.0
        return F
    return float(lax_profile(hm, x, [w])[0, 0]) * F


def _f4(f, g, E, F):
    # ((f+g)E^{-1/2} + (f-g)E^{1/2})/2 F^{1/2}, arranged without cancellation
    return 0.5 * (f * (1.0 + E) + g * (1.0 - E)) * np.sqrt(F / E)


def eval_F4(hm, x, w):
    """``F_{4,w}(x)`` from ``(f, g, E, F)`` at ``(2^{2/3} x, 2^{1/3} w)``."""
    w = float(w)
    xs = _S2 * float(x)
    E = float(hm.eval_E(xs))
    F = float(hm.eval_F(xs))
    if math.isinf(w):
        if w < 0:
            return 0.0
        f, g = 1.0, 0.0
    else:
        f, g = lax_profile(hm, xs, [_S1 * w])[:, 0]
    return _f4(f, g, E, F)


def F2_curve(hm, xs, w):
    """Vector of ``F_{2,w}`` over ``xs``."""
    return np.array([eval_F2(hm, x, w) for x in np.atleast_1d(xs)])


def F4_curve(hm, xs, w):
    """Vector of ``F_{4,w}`` over ``xs``."""
    return np.array([eval_F4(hm, x, w) for x in np.atleast_1d(xs)])


def F2_surface(hm, xs, ws):
    """``F_{2,w}(x)`` on the tensor grid ``xs x ws`` (finite ws only)."""
    xs = np.atleast_1d(xs)
    out = np.empty((len(xs), len(ws)))
    for i, x in enumerate(xs):
        out[i] = lax_profile(hm, x, ws)[0] * float(hm.eval_F(x))
    return out


def F4_surface(hm, xs, ws):
    """``F_{4,w}(x)`` on the tensor grid ``xs x ws`` (finite ws only)."""
    xs = np.atleast_1d(xs)
    ws = np.asarray(ws, dtype=float)
    out = np.empty((len(xs), len(ws)))
    for i, x in enumerate(xs):
        xx = _S2 * float(x)
        f, g = lax_profile(hm, xx, _S1 * ws)
        out[i] = _f4(f, g, float(hm.eval_E(xx)), float(hm.eval_F(xx)))
    return out
