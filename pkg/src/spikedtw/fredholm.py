"""Fredholm determinants of Airy-type kernels by Gauss-Legendre (Nystrom)
discretisation.

Independent of the Painleve route; used to cross-check it:

* ``det(I - K_Ai)`` on ``(s, inf)`` is ``F(s)``,
* ``det(I -+ B)`` with ``B(x, y) = Ai((x + y)/2)/2`` on ``(s, inf)`` equals
  ``E(s)^{+-1/2} F(s)^{1/2}``.
"""
import numpy as np
from scipy.special import airy


def _nodes(a, b, n):
    t, wt = np.polynomial.legendre.leggauss(n)
    return 0.5 * (b - a) * t + 0.5 * (b + a), 0.5 * (b - a) * wt


def airy_kernel_det(s, n=80):
    """``det(I - K_Ai)`` restricted to ``(s, inf)``."""
    x, wt = _nodes(s, max(s, 0.0) + 16.0, n)
    ai, aip, _, _ = airy(x)
    dx = x[:, None] - x[None, :]
    num = ai[:, None] * aip[None, :] - aip[:, None] * ai[None, :]
    with np.errstate(divide="ignore", invalid="ignore"):
        K = num / dx
    K[np.diag_indices_from(K)] = aip ** 2 - x * ai ** 2
    sw = np.sqrt(wt)
    return float(np.linalg.det(np.eye(n) - sw[:, None] * K * sw[None, :]))


def half_airy_det(s, sign=-1, n=120):
    """``det(I + sign * B)`` on ``(s, inf)``, ``B(x, y) = Ai((x + y)/2)/2``."""
    x, wt = _nodes(s, max(24.0 - s, s + 8.0), n)
    B = 0.5 * airy(0.5 * (x[:, None] + x[None, :]))[0]
    sw = np.sqrt(wt)
    return float(np.linalg.det(np.eye(n) + sign * sw[:, None] * B * sw[None, :]))
