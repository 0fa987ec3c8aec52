"""Spiked tridiagonal random matrix models.

* the ell-spiked beta-Laguerre ensemble ``W^T W`` with ``W`` lower bidiagonal,
* the mean-shifted beta-Hermite ensemble,
* a direct discretisation of the stochastic Airy operator with a Robin
  boundary parameter,
* a dense real (beta = 1) Wishart sampler reduced to bidiagonal form by
  alternating Householder reflections, used to test the bidiagonal model.

Randomness is addressed by ``(seed, draw index, slot)``: draw ``i`` of a batch
always consumes the same streams, whatever the spike, batch size or worker
layout. Spiking only rescales a deterministic entry, so samples at different
``ell`` (``mu``, ``w``) built from one seed are coupled exactly.
"""
from dataclasses import dataclass
import math

import numpy as np

from .eig import SymTridiagonal

MAX_DENSE = 12

# stream slots
_MAIN, _SUB = 0, 1
_GAUSS, _CHI = 0, 1
_NOISE = 0


def stream(seed, index, slot):
    """Independent generator for ``(seed, draw index, slot)``."""
    return np.random.default_rng(np.random.SeedSequence([int(seed), int(index), int(slot)]))


def sample_chi(k, rng, size=None):
    """Chi(k) draws as ``sqrt(Gamma(k/2, scale=2))``; exactly 0 when ``k == 0``.

    ``k`` may be an array of (real, nonnegative) parameters.
    """
    k = np.asarray(k, dtype=float)
    if np.any(k < 0):
        raise ValueError("Chi parameter must be nonnegative")
    shape = k.shape if size is None else size
    out = np.zeros(shape)
    kk = np.broadcast_to(k, shape)
    pos = kk > 0
    if np.any(pos):
        out[pos] = np.sqrt(2.0 * rng.standard_gamma(kk[pos] / 2.0))
    if out.ndim == 0:
        return float(out)
    return out


@dataclass(frozen=True)
class LaguerreSpec:
    beta: float
    n: int
    p: int
    ell: float = 1.0

    def __post_init__(self):
        if not self.beta > 0:
            raise ValueError("beta must be positive")
        if self.n < 1 or self.p < 1:
            raise ValueError("n and p must be >= 1")
        if not self.ell > 0:
            raise ValueError("spike ell must be positive")

    @property
    def m(self):
        return min(self.n, self.p)


@dataclass(frozen=True)
class HermiteSpec:
    beta: float
    n: int
    mu: float = 0.0

    def __post_init__(self):
        if not self.beta > 0:
            raise ValueError("beta must be positive")
        if self.n < 1:
            raise ValueError("n must be >= 1")


@dataclass(frozen=True)
class LowerBidiagonal:
    """``main[j]`` sits at ``(j, j)`` and ``sub[j]`` at ``(j+1, j)``; the matrix
    is ``(m+1) x m`` (its last row holds only ``sub[m-1]``)."""

    main: np.ndarray
    sub: np.ndarray

    def __post_init__(self):
        if np.shape(self.main) != np.shape(self.sub):
            raise ValueError("main and sub must have equal lengths")

    def dense(self):
        m = len(self.main)
        W = np.zeros((m + 1, m))
        W[np.arange(m), np.arange(m)] = self.main
        W[np.arange(1, m + 1), np.arange(m)] = self.sub
        return W


def laguerre_parameters(n, p, beta):
    """Chi parameters of the main and sub diagonals of ``sqrt(beta) W``."""
    m = min(n, p)
    j = np.arange(m)
    return beta * (n - j), beta * (p - 1 - j)


def laguerre_draws(beta, n, p, seed, indices):
    """Unspiked ``(main, sub)`` arrays of shape ``(len(indices), n ^ p)``."""
    km, ks = laguerre_parameters(n, p, beta)
    indices = np.atleast_1d(indices)
    main = np.empty((len(indices), len(km)))
    sub = np.empty_like(main)
    for r, i in enumerate(indices):
        main[r] = sample_chi(km, stream(seed, i, _MAIN))
        sub[r] = sample_chi(ks, stream(seed, i, _SUB))
    s = 1.0 / math.sqrt(beta)
    return main * s, sub * s


def apply_spike(main, ell):
    out = np.array(main, dtype=float, copy=True)
    out[..., 0] *= math.sqrt(ell)
    return out


def sample_laguerre_bidiagonal(spec, rng):
    """One draw of the ell-spiked ``W`` from a generator."""
    km, ks = laguerre_parameters(spec.n, spec.p, spec.beta)
    s = 1.0 / math.sqrt(spec.beta)
    main = sample_chi(km, rng) * s
    sub = sample_chi(ks, rng) * s
    main = np.atleast_1d(main)
    main[0] *= math.sqrt(spec.ell)
    return LowerBidiagonal(main, np.atleast_1d(sub))


def gram_tridiagonal(W):
    """``W^T W`` for lower bidiagonal ``W`` (works on stacked arrays too)."""
    main = np.asarray(W.main, dtype=float)
    sub = np.asarray(W.sub, dtype=float)
    return SymTridiagonal(main ** 2 + sub ** 2, sub[..., :-1] * main[..., 1:])


def laguerre_batch(spec, seed, indices):
    """Stacked ``W^T W`` for draws ``indices`` (coupled across ``spec.ell``)."""
    main, sub = laguerre_draws(spec.beta, spec.n, spec.p, seed, indices)
    return gram_tridiagonal(LowerBidiagonal(apply_spike(main, spec.ell), sub))


def hermite_parameters(n, beta):
    return beta * (n - 1 - np.arange(n - 1))


def hermite_draws(beta, n, seed, indices):
    """Unshifted ``(diag, offdiag)`` of ``G`` for the given draw indices."""
    indices = np.atleast_1d(indices)
    kc = hermite_parameters(n, beta)
    diag = np.empty((len(indices), n))
    off = np.empty((len(indices), n - 1))
    for r, i in enumerate(indices):
        diag[r] = stream(seed, i, _GAUSS).standard_normal(n)
        off[r] = sample_chi(kc, stream(seed, i, _CHI))
    s = 1.0 / math.sqrt(beta)
    return math.sqrt(2.0) * diag * s, off * s


def apply_shift(diag, beta, n, mu):
    out = np.array(diag, dtype=float, copy=True)
    out[..., 0] += math.sqrt(n / beta) * mu
    return out


def sample_hermite_tridiagonal(spec, rng):
    """One draw of the mu-shifted beta-Hermite tridiagonal matrix."""
    n, beta = spec.n, spec.beta
    g = rng.standard_normal(n)
    chi = sample_chi(hermite_parameters(n, beta), rng)
    diag = math.sqrt(2.0) * g / math.sqrt(beta)
    diag[0] += math.sqrt(n / beta) * spec.mu
    return SymTridiagonal(diag, np.atleast_1d(chi) / math.sqrt(beta))


def hermite_batch(spec, seed, indices):
    diag, off = hermite_draws(spec.beta, spec.n, seed, indices)
    return SymTridiagonal(apply_shift(diag, spec.beta, spec.n, spec.mu), off)


@dataclass(frozen=True)
class AiryDiscretization:
    """Grid ``j / m``, ``j < size``, for ``-d^2/dx^2 + y'(x)`` with Robin parameter ``w``."""

    beta: float
    w: float
    m: float
    size: int

    def __post_init__(self):
        if not self.beta > 0:
            raise ValueError("beta must be positive (use inf to switch the noise off)")
        if not self.m > 0:
            raise ValueError("m must be positive")
        if self.size < 2:
            raise ValueError("need at least two grid points")

    @property
    def boundary(self):
        # Dirichlet realised as w_n = m
        return self.m if math.isinf(self.w) and self.w > 0 else self.w


def _airy_noise(d, rng, batch):
    if math.isinf(d.beta):
        return np.zeros(batch + (d.size,))
    return (2.0 / math.sqrt(d.beta)) * math.sqrt(1.0 / d.m) * rng.standard_normal(batch + (d.size,))


def _airy_matrix(d, increments):
    m = d.m
    j = np.arange(d.size)
    dy = (2 * j + 1) / (2.0 * m * m) + increments
    diag = 2.0 * m * m + m * dy
    diag[..., 0] = m * m + m * (dy[..., 0] + d.boundary)
    off = np.full(diag.shape[:-1] + (d.size - 1,), -m * m)
    return SymTridiagonal(diag, off)


def discretized_airy(d, rng):
    """One sample of the discretised stochastic Airy operator.

    Diagonal ``2 m^2 + m dy_j`` (first entry ``m^2 + m (dy_0 + w)``),
    off-diagonal ``-m^2``, where ``dy_j`` is the increment of
    ``x^2/2 + (2/sqrt(beta)) b_x`` over ``[j/m, (j+1)/m]``.
    """
    return _airy_matrix(d, _airy_noise(d, rng, ()))


def airy_batch(d, seed, indices):
    indices = np.atleast_1d(indices)
    inc = np.stack([_airy_noise(d, stream(seed, i, _NOISE), ()) for i in indices])
    return _airy_matrix(d, inc)


def _reflect_positive(v):
    """Householder vector ``u`` with ``(I - 2 u u^T) v = |v| e_1`` (None if v = 0)."""
    nrm = np.linalg.norm(v)
    if nrm == 0.0:
        return None
    u = v.astype(float).copy()
    # reflect to -sign(v0)|v| e1 (no cancellation), then flip the sign below
    s = 1.0 if v[0] >= 0 else -1.0
    u[0] += s * nrm
    u /= np.linalg.norm(u)
    return u, s


def householder_bidiagonalize(X):
    """Reduce a ``p x n`` matrix to lower bidiagonal form by alternating row
    and column reflections into positive coordinate directions.

    Returns ``(LowerBidiagonal, W)`` with ``W = O X O'`` the transformed matrix.
    """
    W = np.array(X, dtype=float, copy=True)
    p, n = W.shape
    m = min(n, p)
    for j in range(m):
        # row j: columns j.. into +e_j
        r = _reflect_positive(W[j, j:])
        if r is not None:
            u, s = r
            W[:, j:] -= 2.0 * np.outer(W[:, j:] @ u, u)
            W[:, j] *= -s if W[j, j] < 0 else 1.0
        if j + 1 < p:
            r = _reflect_positive(W[j + 1:, j])
            if r is not None:
                u, s = r
                W[j + 1:, :] -= 2.0 * np.outer(u, u @ W[j + 1:, :])
                if W[j + 1, j] < 0:
                    W[j + 1, :] *= -1.0
    main = np.array([W[j, j] for j in range(m)])
    sub = np.array([W[j + 1, j] if j + 1 < p else 0.0 for j in range(m)])
    return LowerBidiagonal(main, sub), W


def dense_wishart_oracle(n, p, ell, rng, return_all=False):
    """Eigenvalues of ``W^T W`` from dense real Gaussian data, beta = 1.

    The ``p x n`` data matrix has independent N(0, 1) entries with the first
    row scaled by ``sqrt(ell)``.
    """
    if n > MAX_DENSE or p > MAX_DENSE:
        raise ValueError(f"dense oracle is limited to n, p <= {MAX_DENSE}")
    if not ell > 0:
        raise ValueError("spike ell must be positive")
    X = rng.standard_normal((p, n))
    X[0] *= math.sqrt(ell)
    bidiag, W = householder_bidiagonalize(X)
    evals = np.linalg.eigvalsh(gram_tridiagonal(bidiag).dense()) if min(n, p) > 1 else \
        np.array([bidiag.main[0] ** 2 + bidiag.sub[0] ** 2])
    if return_all:
        return evals, bidiag, X, W
    return evals
