"""Chebyshev-Lobatto collocation helpers."""
import numpy as np
from numpy.polynomial import Chebyshev
from scipy.fft import dct


def lobatto(n, a, b):
    """Chebyshev-Lobatto points on ``[a, b]`` in increasing order."""
    t = -np.cos(np.pi * np.arange(n + 1) / n)
    return 0.5 * (a + b) + 0.5 * (b - a) * t


def diff_matrix(n, a, b):
    """First-derivative matrix acting on values at ``lobatto(n, a, b)``."""
    t = -np.cos(np.pi * np.arange(n + 1) / n)
    c = np.ones(n + 1)
    c[0] = c[-1] = 2.0
    c *= (-1.0) ** np.arange(n + 1)
    dt = t[:, None] - t[None, :]
    d = np.outer(c, 1.0 / c) / (dt + np.eye(n + 1))
    d -= np.diag(d.sum(axis=1))
    return d * (2.0 / (b - a))


def series(values, a, b):
    """Chebyshev series interpolating ``values`` given at ``lobatto(n, a, b)``."""
    n = len(values) - 1
    # dct-I expects the points ordered as cos(pi j / n), i.e. decreasing
    y = dct(np.asarray(values, dtype=float)[::-1], type=1) / n
    y[0] *= 0.5
    y[-1] *= 0.5
    return Chebyshev(y, domain=[a, b])
