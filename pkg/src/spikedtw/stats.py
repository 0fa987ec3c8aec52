"""Empirical distribution functions and Kolmogorov-Smirnov distances."""
import numpy as np
from scipy import stats as _st


def ecdf(samples):
    """Sorted samples and the ECDF heights ``i/n`` at them (right-continuous)."""
    x = np.sort(np.asarray(samples, dtype=float).ravel())
    if x.size == 0:
        raise ValueError("need at least one sample")
    return x, np.arange(1, x.size + 1) / x.size


def ks_distance(samples, cdf):
    """Sup distance between the ECDF of ``samples`` and a reference CDF.

    ``cdf`` is a vectorised callable. Both one-sided gaps are taken at the
    sample points; the gap from below uses the left limit of the reference,
    so atoms in either distribution are handled exactly.
    """
    x, up = ecdf(samples)
    n = x.size
    F = np.clip(np.asarray(cdf(x), dtype=float), 0.0, 1.0)
    F_left = np.clip(np.asarray(cdf(np.nextafter(x, -np.inf)), dtype=float), 0.0, 1.0)
    # the ECDF just before a run of tied samples
    first = np.searchsorted(x, x, side="left")
    last = np.searchsorted(x, x, side="right")
    return float(max(np.max(last / n - F), np.max(F_left - first / n), 0.0))


def ks_two_sample(a, b):
    """Two-sample KS statistic."""
    return float(_st.ks_2samp(np.ravel(a), np.ravel(b)).statistic)


def tabulated_cdf(xs, values):
    """Monotone piecewise-linear CDF through ``(xs, values)``, flat outside."""
    xs = np.asarray(xs, dtype=float)
    v = np.maximum.accumulate(np.clip(np.asarray(values, dtype=float), 0.0, 1.0))

    def cdf(x):
        return np.interp(x, xs, v, left=v[0], right=v[-1])

    return cdf
