"""Sampling and tabulation routes shared by the CLI and the verification suite."""
from dataclasses import dataclass
import functools
import math

import numpy as np

from . import edge, ensembles, pde, painleve, riccati
from .eig import extreme_eigenvalues, top_eigenvalues
from .stats import tabulated_cdf
from .tables import DistributionTable

MODELS = ("laguerre", "hermite", "airy")


@dataclass(frozen=True)
class ModelSpec:
    """A sampled model: ``n``/``p`` for laguerre, ``n`` for hermite,
    ``m``/``size`` for the discretised operator."""

    model: str
    beta: float
    n: int = 400
    p: int = 400
    m: float = 10.0
    size: int = 600

    def __post_init__(self):
        if self.model not in MODELS:
            raise ValueError(f"model must be one of {MODELS}")
        if not self.beta > 0:
            raise ValueError("beta must be positive")

    @property
    def method(self):
        return "mc-" + self.model

    def spike(self, w):
        """``ell`` (laguerre), ``mu`` (hermite) or ``w`` itself (airy)."""
        if self.model == "laguerre":
            return edge.laguerre_spike_for_w(self.n, self.p, w)
        if self.model == "hermite":
            return edge.hermite_shift_for_w(self.n, w)
        return float(w)

    def edge_map(self):
        if self.model == "laguerre":
            return edge.laguerre_edge_map(self.n, self.p)
        if self.model == "hermite":
            return edge.hermite_edge_map(self.n)
        return None


def _chunks(samples, chunk):
    for start in range(0, samples, chunk):
        yield np.arange(start, min(samples, start + chunk))


def scaled_top(spec, w_list, k, samples, seed, chunk=500):
    """Coupled scaled top eigenvalues ``-Lambda_hat_j``, ``j < k``.

    Returns an array of shape ``(samples, len(w_list), k)``; column ``i``
    comes from the same underlying draws for every ``w`` in ``w_list``.
    """
    w_list = [float(w) for w in w_list]
    spikes = [spec.spike(w) for w in w_list]
    out = np.empty((samples, len(w_list), k))
    emap = spec.edge_map()
    for idx in _chunks(samples, chunk):
        if spec.model == "laguerre":
            main, sub = ensembles.laguerre_draws(spec.beta, spec.n, spec.p, seed, idx)
        elif spec.model == "hermite":
            diag, off = ensembles.hermite_draws(spec.beta, spec.n, seed, idx)
        for j, (w, s) in enumerate(zip(w_list, spikes)):
            if spec.model == "laguerre":
                T = ensembles.gram_tridiagonal(
                    ensembles.LowerBidiagonal(ensembles.apply_spike(main, s), sub))
                out[idx, j] = emap.to_tw(top_eigenvalues(T, k))
            elif spec.model == "hermite":
                T = ensembles.SymTridiagonal(
                    ensembles.apply_shift(diag, spec.beta, spec.n, s), off)
                out[idx, j] = emap.to_tw(top_eigenvalues(T, k))
            else:
                d = ensembles.AiryDiscretization(spec.beta, w, spec.m, spec.size)
                T = ensembles.airy_batch(d, seed, idx)
                out[idx, j] = -extreme_eigenvalues(T, k, side="smallest")
    return out


def monotonicity_violations(values, w_list, slack=1e-9):
    """Count samples where a smaller ``w`` (stronger spike) gives a smaller
    top eigenvalue. ``values`` has shape ``(samples, len(w_list))``."""
    order = np.argsort(-np.asarray(w_list, dtype=float))
    v = values[:, order]
    return int(np.sum(np.any(np.diff(v, axis=1) < -slack, axis=1)))


def ecdf_table(spec, w, values, k):
    """ECDF rows of one level; ``F`` is ``i/n`` with a binomial standard error."""
    t = DistributionTable()
    x = np.sort(values)
    n = len(x)
    for i, xi in enumerate(x):
        if i + 1 < n and x[i + 1] == xi:
            continue
        F = (i + 1) / n
        t.add(spec.method, spec.beta, w, k, xi, F, math.sqrt(F * (1 - F) / n))
    return t


@functools.lru_cache(maxsize=2)
def hastings_mcleod(npts=256):
    return painleve.solve_hastings_mcleod(npts=npts)


@functools.lru_cache(maxsize=8)
def pde_levels(beta, k_max=1, grid=None):
    return pde.solve_levels(beta, grid or pde.PdeGrid(), k_max)


def painleve_values(beta, w, xs, npts=256):
    hm = hastings_mcleod(npts)
    if beta == 2:
        return painleve.F2_curve(hm, xs, w)
    if beta == 4:
        return painleve.F4_curve(hm, xs, w)
    raise ValueError("the Painleve route covers beta = 2 and 4 only")


def pde_values(beta, w, xs, k=1, grid=None):
    surf = pde_levels(float(beta), k, grid)[k - 1]
    return surf(np.asarray(xs, dtype=float), w)


def reference_cdf(beta, w, k=1, source="auto", grid=None, xs=None):
    """Tabulated reference ``P(-Lambda_{k-1} <= x)`` as a callable.

    ``source="auto"`` uses the Painleve route for ``k = 1`` and ``beta`` in
    ``{2, 4}`` and the PDE route otherwise.
    """
    if source == "auto":
        source = "painleve" if k == 1 and beta in (2, 4) else "pde"
    if xs is None:
        xs = np.linspace(-8.0, 6.0, 561)
    if source == "painleve":
        if k != 1:
            raise ValueError("the Painleve route gives the top eigenvalue only")
        vals = painleve_values(beta, w, xs)
    elif source == "pde":
        g = grid or pde.PdeGrid()
        xs = xs[(xs >= g.x_min) & (xs <= g.x_max)]
        vals = pde_values(beta, w, xs, k, grid)
    else:
        raise ValueError(f"unknown reference source {source!r}")
    return tabulated_cdf(xs, vals)


def cdf_table(method, beta, w, k, xs, n_paths=20000, seed=0, grid=None,
              diffusion=None, npts=256):
    """Tabulate ``P(-Lambda_{k-1} <= x)`` over ``xs`` by one deterministic or
    diffusion route."""
    t = DistributionTable()
    xs = np.asarray(xs, dtype=float)
    if method == "painleve":
        if k != 1:
            raise ValueError("the Painleve route gives the top eigenvalue only")
        for x, F in zip(xs, painleve_values(beta, w, xs, npts)):
            t.add("painleve", beta, w, k, x, F)
    elif method == "pde":
        for x, F in zip(xs, pde_values(beta, w, xs, k, grid)):
            t.add("pde", beta, w, k, x, F)
    elif method == "sde":
        for i, x in enumerate(xs):
            F, e = riccati.higher_cdf(beta, w, x, k, n_paths, diffusion, seed=seed + i)
            t.add("sde", beta, w, k, x, F, e)
    else:
        raise ValueError(f"unknown method {method!r}")
    return t
