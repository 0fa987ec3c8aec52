"""Monte Carlo for deformed Tracy-Widom laws through the Riccati diffusion

    dp = (2/sqrt(beta)) db + (x - p^2) dx.

Started at ``p(x0) = w``, the path survives (grows like ``sqrt(x)``) with
probability ``F_{beta,w}(x0)``; otherwise it explodes to ``-inf``. After an
explosion the path re-enters from ``+inf`` and the number of explosions on
``[x0, inf)`` is the number of operator eigenvalues below ``-x0``.

The scheme is plain Euler-Maruyama, vectorised over paths. Explosion is declared at
``p <= -blow``; the path is then frozen for the deterministic passage time
``1/|p| + 1/restart`` (from ``p`` to ``-inf`` and from ``+inf`` back to
``restart``) and resumes at ``p = restart``.
"""
from dataclasses import dataclass, field, replace
import math

import numpy as np

MAX_EXTENSIONS = 20


@dataclass(frozen=True)
class DiffusionConfig:
    """Integration settings.

    ``horizon=None`` runs to ``max(10, x0 + 15)``.
    """

    beta: float = 2.0
    step: float = 1e-3
    horizon: float | None = None
    blow: float = 100.0
    restart: float = 100.0

    def __post_init__(self):
        if not self.beta > 0:
            raise ValueError("beta must be positive (inf switches the noise off)")
        if not self.step > 0:
            raise ValueError("step must be positive")
        if self.horizon is not None and not self.horizon > 0:
            raise ValueError("horizon must be positive")
        if not (self.blow > 1 and self.restart > 1):
            raise ValueError("blow and restart must be >> 1")

    def x_end(self, x0):
        if self.horizon is None:
            return max(10.0, x0 + 15.0)
        return x0 + self.horizon

    @property
    def sigma(self):
        return 0.0 if math.isinf(self.beta) else 2.0 / math.sqrt(self.beta)


@dataclass(frozen=True)
class PathOutcome:
    explosion_times: np.ndarray = field(default_factory=lambda: np.empty(0))
    survived: bool = True

    @property
    def explosions(self):
        return len(self.explosion_times)


def _config(beta, cfg):
    if cfg is None:
        return DiffusionConfig(beta=beta)
    if cfg.beta != beta:
        return replace(cfg, beta=beta)
    return cfg


def _start(w0, cfg, n, x0):
    """Initial values and freeze times; ``w0 = +inf`` enters from infinity."""
    if math.isinf(w0) and w0 > 0:
        return np.full(n, cfg.restart), np.full(n, x0 + 1.0 / cfg.restart)
    if math.isnan(w0) or math.isinf(w0):
        raise ValueError("w0 must be finite or +inf")
    return np.full(n, float(w0)), np.full(n, -np.inf)


def simulate(x0, w0, cfg, rng, n_paths, record=False, stop_after=None):
    """Run ``n_paths`` independent paths.

    Returns ``(counts, survived, times)``: explosion counts on ``[x0, inf)``,
    the survival flag, and (if ``record``) a list of explosion-time arrays.
    ``stop_after`` drops a path once its count reaches that value.
    """
    h = cfg.step
    sig = cfg.sigma * math.sqrt(h)
    p, frozen = _start(w0, cfg, n_paths, x0)
    counts = np.zeros(n_paths, dtype=np.int64)
    last_low = np.full(n_paths, x0)
    times = [[] for _ in range(n_paths)] if record else None
    idx = np.arange(n_paths)  # active path ids

    def advance(x, idx, p, frozen, last_low):
        live = x >= frozen
        dp = h * (x - p * p)
        if sig:
            # full-width draws keep path i on the same increments whatever is dropped
            dp = dp + sig * rng.standard_normal(n_paths)[idx]
        p = np.where(live, p + dp, p)
        xn = x + h
        boom = p <= -cfg.blow
        if np.any(boom):
            b = np.nonzero(boom)[0]
            counts[idx[b]] += 1
            if record:
                for j in b:
                    times[idx[j]].append(xn)
            frozen = frozen.copy()
            frozen[b] = xn + 1.0 / np.abs(p[b]) + 1.0 / cfg.restart
            p = p.copy()
            p[b] = cfg.restart
        low = (p < 0.5 * math.sqrt(max(xn, 1.0))) | (xn < frozen)
        last_low = np.where(low, xn, last_low)
        return xn, p, frozen, last_low

    x_end = cfg.x_end(x0)
    nsteps = int(math.ceil((x_end - x0) / h - 1e-9))
    x = x0
    for i in range(nsteps):
        x, p, frozen, last_low = advance(x0 + i * h, idx, p, frozen, last_low)
        if stop_after is not None and (i & 255) == 0:
            keep = counts[idx] < stop_after
            if not np.all(keep):
                idx, p, frozen, last_low = idx[keep], p[keep], frozen[keep], last_low[keep]
            if len(idx) == 0:
                break
    x = x0 + nsteps * h
    # extend undecided paths (those not tracking the attracting branch)
    undecided = x - last_low < 1.0
    ext = 0
    while np.any(undecided) and ext < MAX_EXTENSIONS:
        sel = np.nonzero(undecided)[0]
        idx, p, frozen, last_low = idx[sel], p[sel], frozen[sel], last_low[sel]
        for i in range(int(round(1.0 / h))):
            xx, p, frozen, last_low = advance(x + i * h, idx, p, frozen, last_low)
        x = xx
        undecided = x - last_low < 1.0
        ext += 1
    # any path still undecided is classified by the sign of p (the repelling branch
    # is the only way down)
    if np.any(undecided):
        bad = idx[undecided & (p < 0)]
        counts[bad] += 1
    survived = counts == 0
    if record:
        times = [np.asarray(t) for t in times]
    return counts, survived, times


def run_path(x0, w0, cfg, rng):
    """A single path from ``p(x0) = w0``."""
    counts, survived, times = simulate(x0, w0, cfg, rng, 1, record=True)
    return PathOutcome(times[0], bool(survived[0]))


def wilson(successes, n, z=1.0):
    """Point estimate and Wilson score half-width at ``z`` sigma."""
    if n < 1:
        raise ValueError("need at least one path")
    ph = successes / n
    z2 = z * z
    half = z / (1 + z2 / n) * math.sqrt(ph * (1 - ph) / n + z2 / (4 * n * n))
    return ph, half


def _rng(seed, rng, tag):
    if rng is not None:
        return rng
    return np.random.default_rng(np.random.SeedSequence([int(seed), *tag]))


def higher_cdf(beta, w, x, k, n_paths, cfg=None, seed=0, rng=None):
    """``P(fewer than k explosions on [x, inf))`` with a Wilson 1-sigma half-width."""
    if k < 1:
        raise ValueError("k must be >= 1")
    if n_paths < 1:
        raise ValueError("n_paths must be >= 1")
    cfg = _config(beta, cfg)
    rng = _rng(seed, rng, (k, 0x5DE))
    counts, _, _ = simulate(float(x), float(w), cfg, rng, int(n_paths), stop_after=k)
    return wilson(int(np.sum(counts < k)), int(n_paths))


def estimate_cdf(beta, w, x, n_paths, cfg=None, seed=0, rng=None):
    """``F_{beta,w}(x)`` as the non-explosion fraction, with Wilson 1-sigma half-width."""
    return higher_cdf(beta, w, x, 1, n_paths, cfg, seed, rng)


@dataclass(frozen=True)
class EigenSample:
    """Approximate smallest eigenvalues per path (rows ascending).

    ``flagged`` marks rows whose eigenvalues come too close to the horizon to
    be resolved.
    """

    values: np.ndarray
    flagged: np.ndarray


def count_explosions(lam, w, noise, cfg, x0=0.0):
    """Explosion counts of ``p' = x - lam - p^2 + noise`` on the frozen noise.

    ``noise`` has shape ``(steps, paths)`` and holds standard normals; ``lam``
    broadcasts against ``(paths, ...)``. A path that ends below the repelling
    branch is counted as exploding.
    """
    h = cfg.step
    sig = cfg.sigma * math.sqrt(h)
    lam = np.asarray(lam, dtype=float)
    shape = np.broadcast_shapes(lam.shape, noise.shape[1:2] + lam.shape[1:])
    lam = np.broadcast_to(lam, shape)
    extra = (1,) * (len(shape) - 1)
    p0, f0 = _start(w, cfg, 1, x0)
    p = np.full(shape, p0[0])
    frozen = np.full(shape, f0[0])
    counts = np.zeros(shape, dtype=np.int64)
    delay = 1.0 / cfg.blow + 1.0 / cfg.restart
    for i in range(noise.shape[0]):
        x = x0 + i * h
        z = noise[i].reshape((-1,) + extra)
        step = h * (x - lam - p * p) + sig * z
        p = np.where(x >= frozen, p + step, p)
        boom = p <= -cfg.blow
        if boom.any():
            counts += boom
            frozen = np.where(boom, x + h + delay, frozen)
            p = np.where(boom, cfg.restart, p)
    x = x0 + noise.shape[0] * h
    counts += (p < -np.sqrt(np.maximum(x - lam, 0.0))) & (x >= frozen)
    return counts


def sample_eigenvalues(beta, w, k_max, L=10.0, rng=None, cfg=None, n_paths=1,
                       tol=1e-4, chunk=250):
    """Smallest ``k_max`` eigenvalues of the stochastic Airy operator on ``[0, L]``.

    For each path the Brownian increments are frozen and the number of
    explosions of the ``lam``-shifted Riccati flow, which is nondecreasing in
    ``lam``, is bisected for its jumps.

    Returns
    -------
    EigenSample
        ``values`` has shape ``(n_paths, k_max)``.
    """
    if k_max < 1:
        raise ValueError("k_max must be >= 1")
    cfg = _config(beta, cfg)
    rng = np.random.default_rng() if rng is None else rng
    steps = int(math.ceil(L / cfg.step))
    out = np.empty((n_paths, k_max))
    levels = np.arange(k_max)
    for start in range(0, n_paths, chunk):
        m = min(chunk, n_paths - start)
        noise = rng.standard_normal((steps, m))
        lo = np.full((m, k_max), -8.0)
        while True:
            c = count_explosions(lo, w, noise, cfg)
            bad = c > levels
            if not bad.any():
                break
            lo = np.where(bad, lo - 8.0, lo)
        hi = np.full((m, k_max), float(L))
        while np.any(hi - lo > tol):
            mid = 0.5 * (lo + hi)
            c = count_explosions(mid, w, noise, cfg)
            above = c > levels  # jump k happened below mid
            hi = np.where(above, mid, hi)
            lo = np.where(above, lo, mid)
        out[start:start + m] = 0.5 * (lo + hi)
    flagged = out[:, -1] > L - 3.0
    return EigenSample(out, flagged)
