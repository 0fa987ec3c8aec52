"""Extreme eigenvalues of symmetric tridiagonal matrices by Sturm bisection.

Everything here broadcasts over leading batch axes, so a stack of sampled
matrices is processed in one sweep along the diagonal.
"""
from dataclasses import dataclass

import numpy as np

_EPS = np.finfo(float).eps


@dataclass(frozen=True)
class SymTridiagonal:
    """Real symmetric tridiagonal matrix (or a stack of them along leading axes)."""

    diag: np.ndarray
    offdiag: np.ndarray

    def __post_init__(self):
        d = np.asarray(self.diag, dtype=float)
        e = np.asarray(self.offdiag, dtype=float)
        if d.shape[-1] < 1 or e.shape[-1] != d.shape[-1] - 1 or d.shape[:-1] != e.shape[:-1]:
            raise ValueError(f"inconsistent shapes diag {d.shape}, offdiag {e.shape}")
        object.__setattr__(self, "diag", d)
        object.__setattr__(self, "offdiag", e)

    @property
    def size(self):
        return self.diag.shape[-1]

    @property
    def batch_shape(self):
        return self.diag.shape[:-1]

    def dense(self):
        """Dense array (only for unbatched matrices)."""
        if self.batch_shape:
            raise ValueError("dense() needs a single matrix")
        return np.diag(self.diag) + np.diag(self.offdiag, 1) + np.diag(self.offdiag, -1)

    def gershgorin(self):
        """Lower and upper Gershgorin bounds per matrix."""
        r = np.zeros_like(self.diag)
        a = np.abs(self.offdiag)
        r[..., :-1] += a
        r[..., 1:] += a
        return np.min(self.diag - r, axis=-1), np.max(self.diag + r, axis=-1)


def _scale(T):
    lo, hi = T.gershgorin()
    return np.maximum(np.maximum(np.abs(lo), np.abs(hi)), np.finfo(float).tiny)


def _prepare(T):
    # diagonal index leading and contiguous: the recurrence walks along it
    d = np.ascontiguousarray(np.moveaxis(T.diag, -1, 0))
    e2 = np.ascontiguousarray(np.moveaxis(T.offdiag, -1, 0) ** 2)
    return d, e2, _EPS * _scale(T)


def _count(d, e2, pivmin, x):
    # d, e2, pivmin already reshaped to broadcast against x
    q = d[0] - x
    small = np.abs(q) < pivmin
    if small.any():
        q = np.where(small, np.copysign(pivmin, q), q)
    count = (q < 0).astype(np.int64)
    for i in range(1, len(d)):
        q = (d[i] - x) - e2[i - 1] / q
        small = np.abs(q) < pivmin
        if small.any():
            q = np.where(small, np.copysign(np.broadcast_to(pivmin, q.shape), q), q)
        count += q < 0
    return count


def sturm_count(T, x):
    """Number of eigenvalues of ``T`` strictly below ``x``.

    Shifted LDL^T sign count; pivots smaller than ``eps * scale`` are
    replaced by ``+-eps * scale`` keeping their sign. ``x`` broadcasts against
    the batch shape, with any extra trailing axes of ``x`` read as several
    shifts per matrix.
    """
    x = np.asarray(x, dtype=float)
    extra = max(x.ndim - len(T.batch_shape), 0)
    d, e2, pivmin = _prepare(T)
    tail = (None,) * extra
    return _count(d[(Ellipsis,) + tail], e2[(Ellipsis,) + tail], pivmin[(Ellipsis,) + tail], x)


def extreme_eigenvalues(T, k=1, side="largest", tol=None, bracket=None):
    """The ``k`` largest (or smallest) eigenvalues of ``T``, sorted ascending.

    Parameters
    ----------
    T : SymTridiagonal
        Possibly batched.
    k : int
        Number of eigenvalues.
    side : {"largest", "smallest"}
    tol : float, optional
        Absolute tolerance. Defaults to ``1e-10`` times the Gershgorin radius.
    bracket : (float, float), optional
        Interval containing the whole spectrum; defaults to the slightly
        widened Gershgorin interval.

    Returns
    -------
    ndarray of shape ``T.batch_shape + (k,)``.
    """
    n = T.size
    if not 1 <= k <= n:
        raise ValueError(f"k={k} must lie in [1, {n}]")
    if side not in ("largest", "smallest"):
        raise ValueError("side must be 'largest' or 'smallest'")
    lo, hi = T.gershgorin()
    width = hi - lo
    span = np.maximum(width, _scale(T) * 1e-12)
    lo = lo - 1e-3 * span
    hi = hi + 1e-3 * span
    if bracket is not None:
        lo = np.full_like(lo, bracket[0])
        hi = np.full_like(hi, bracket[1])
        if np.any(sturm_count(T, lo) > 0) or np.any(sturm_count(T, hi) < n):
            raise ValueError("bracket does not contain the spectrum")
    if tol is None:
        tol = 1e-10 * np.max(0.5 * span)
    idx = np.arange(k) if side == "smallest" else np.arange(n - k, n)
    lo = np.repeat(lo[..., None], k, axis=-1)
    hi = np.repeat(hi[..., None], k, axis=-1)
    d, e2, pivmin = _prepare(T)
    d, e2, pivmin = d[..., None], e2[..., None], pivmin[..., None]
    # invariant: count(lo) <= idx < count(hi)
    while np.max(hi - lo) > tol:
        mid = 0.5 * (lo + hi)
        c = _count(d, e2, pivmin, mid)
        above = c > idx
        hi = np.where(above, mid, hi)
        lo = np.where(above, lo, mid)
    return 0.5 * (lo + hi)


def top_eigenvalues(T, k=1, tol=None):
    """Largest ``k`` eigenvalues in decreasing order (lambda_1 > lambda_2 > ...)."""
    return extreme_eigenvalues(T, k, "largest", tol)[..., ::-1]
