"""Cross-route verification battery.

Each ``check_*`` function appends measured residuals with explicit
tolerances to a :class:`ComparisonReport` and returns it.
"""
from dataclasses import dataclass, field
import math

import numpy as np
from scipy.optimize import brentq
from scipy.special import ai_zeros, airy

from . import ensembles, fredholm, painleve, pde, riccati, routes
from .eig import extreme_eigenvalues, top_eigenvalues
from .stats import ks_distance, ks_two_sample, tabulated_cdf
from .tables import ComparisonReport

INF = math.inf
_S2 = 2.0 ** (2.0 / 3.0)


@dataclass(frozen=True)
class Settings:
    sde_paths: int = 20000
    mc_samples: int = 5000
    dense_draws: int = 10000
    airy_samples: int = 3000
    n: int = 400
    seed: int = 2024
    grid: pde.PdeGrid = field(default_factory=pde.PdeGrid)

    @classmethod
    def quick(cls, seed=2024):
        return cls(sde_paths=4000, dense_draws=10000, seed=seed)


def fd2(f, x, h=1e-2):
    """Fourth-order central second difference."""
    return (-f(x + 2 * h) + 16 * f(x + h) - 30 * f(x) + 16 * f(x - h) - f(x - 2 * h)) / (12 * h * h)


def check_painleve(report, hm=None, npts=256):
    """PII residual, first integral, duality, Lax compatibility, resolution."""
    hm = hm or routes.hastings_mcleod(npts)
    x = np.linspace(hm.x_min + 0.1, hm.x_max - 0.1, 2001)
    u = hm.eval_u(x)
    res = np.max(np.abs(fd2(hm.eval_u, x) - 2 * u ** 3 - x * u))
    report.add("PII residual (4th-order differences)", ("painleve",), res, 1e-8)
    fi = np.max(np.abs(hm.eval_v(x) + u ** 4 - hm.eval_du(x) ** 2 + x * u ** 2))
    report.add("first integral v+u^4-u'^2+xu^2", ("painleve",), fi, 1e-8)
    ws = np.linspace(0.0, 4.0, 17)
    dual = 0.0
    for xx in np.linspace(-8.0, 6.0, 15):
        fp, gp = painleve.lax_profile(hm, xx, ws)
        fm, _ = painleve.lax_profile(hm, xx, -ws)
        dual = max(dual, np.max(np.abs(gp * np.exp(-(ws ** 3 / 3 - xx * ws)) - fm)))
    report.add("Lax duality g(x,w)e^{-(w^3/3-xw)} = f(x,-w)", ("painleve",), dual, 1e-8)
    lax = max(painleve.lax_check_x(hm, -2.0, 2.0, w) for w in (-1.0, 0.0, 1.0))
    report.add("Lax x/w compatibility, x: -2 -> 2", ("painleve",), lax, 1e-7)
    hm2 = painleve.solve_hastings_mcleod(npts=2 * npts)
    du0 = abs(float(hm.eval_u(0.0)) - float(hm2.eval_u(0.0)))
    report.add("u(0) vs doubled resolution", ("painleve",), du0, 1e-8,
               detail=f"u(0)={float(hm.eval_u(0.0)):.13f}")
    return report


def check_identities(report, hm=None):
    """Closed-form special cases against Fredholm determinants on [-6, 4]."""
    hm = hm or routes.hastings_mcleod()
    xs = np.linspace(-6.0, 4.0, 41)
    d_f2inf = d_f20 = d_f4inf = d_f40 = 0.0
    for x in xs:
        F = fredholm.airy_kernel_det(x)
        g1 = fredholm.half_airy_det(x, -1)
        d_f2inf = max(d_f2inf, abs(painleve.eval_F2(hm, x, INF) - F))
        d_f20 = max(d_f20, abs(painleve.eval_F2(hm, x, 0.0) - g1 * g1))
        y = x / _S2
        m4 = fredholm.half_airy_det(x, -1)
        p4 = fredholm.half_airy_det(x, 1)
        d_f4inf = max(d_f4inf, abs(painleve.eval_F4(hm, y, INF) - 0.5 * (m4 + p4)))
        d_f40 = max(d_f40, abs(painleve.eval_F4(hm, y, 0.0) - m4))
    pair = ("painleve", "fredholm")
    report.add("F_{2,inf} = F", pair, d_f2inf, 1e-7)
    report.add("F_{4,inf}(2^{-2/3}x) = (E^1/2+E^-1/2)F^1/2/2", pair, d_f4inf, 1e-7)
    report.add("F_{2,0} = E F", pair, d_f20, 1e-7)
    report.add("F_{4,0}(2^{-2/3}x) = E^1/2 F^1/2", pair, d_f40, 1e-7)
    return report


def check_pde_painleve(report, settings=Settings(), hm=None):
    """PDE surfaces at beta = 2, 4 against the Painleve formulas."""
    hm = hm or routes.hastings_mcleod()
    xs = np.arange(-5.0, 2.0 + 1e-9, 0.25)
    ws = np.arange(-2.0, 3.0 + 1e-9, 0.25)
    for beta, surf_fn in ((2, painleve.F2_surface), (4, painleve.F4_surface)):
        s = routes.pde_levels(float(beta), 1, settings.grid)[0]
        exact = surf_fn(hm, xs, ws)
        num = s(xs[:, None], ws[None, :])
        report.add(f"beta={beta} surface, x in [-5,2], w in [-2,3]", ("pde", "painleve"),
                   np.max(np.abs(num - exact)), 1e-3, detail=f"clip events {s.clip_events}")
        curve = painleve.F2_curve(hm, xs, INF) if beta == 2 else painleve.F4_curve(hm, xs, INF)
        report.add(f"beta={beta} Dirichlet column", ("pde", "painleve"),
                   np.max(np.abs(s(xs, INF) - curve)), 1e-3)
    s1 = routes.pde_levels(1.0, 1, settings.grid)[0]
    ref = np.sqrt(hm.eval_E(xs) * hm.eval_F(xs))
    report.add("beta=1 Dirichlet column vs E^1/2 F^1/2", ("pde", "painleve"),
               np.max(np.abs(s1(xs, INF) - ref)), 1e-3)
    return report


SDE_PROBES = [(x, w) for x in (-2.5, -1.0, 0.5) for w in (-1.0, 0.5, INF)]


def check_sde_pde(report, settings=Settings(), betas=(1, 2, 4), probes=SDE_PROBES):
    """Non-explosion probability against the PDE surface, in units of stderr."""
    for beta in betas:
        s = routes.pde_levels(float(beta), 1, settings.grid)[0]
        worst, where = 0.0, None
        for i, (x, w) in enumerate(probes):
            F, err = riccati.estimate_cdf(beta, w, x, settings.sde_paths, seed=settings.seed + i)
            z = abs(F - float(s(x, w))) / err
            if z >= worst:
                worst, where = z, (x, w, F, float(s(x, w)))
        report.add(f"beta={beta}, {len(probes)} probes, {settings.sde_paths} paths",
                   ("sde", "pde"), worst, 3.0, kind="max|z|",
                   detail="worst at x={:g}, w={:g}: {:.4f} vs {:.4f}".format(*where))
    return report


def check_laguerre(report, settings=Settings(), ws=(INF, 1.0, 0.0, -1.0)):
    spec = routes.ModelSpec("laguerre", 2.0, n=settings.n, p=settings.n)
    vals = routes.scaled_top(spec, ws, 2, settings.mc_samples, settings.seed)
    for j, w in enumerate(ws):
        ref = routes.reference_cdf(2, w, 1, "painleve")
        report.add(f"laguerre beta=2 n=p={settings.n} w={w:g} k=1", ("mc-laguerre", "painleve"),
                   ks_distance(vals[:, j, 0], ref), 0.05, kind="KS")
    for j, w in enumerate(ws):
        ref = routes.reference_cdf(2, w, 2, "pde", settings.grid)
        report.add(f"laguerre beta=2 n=p={settings.n} w={w:g} k=2", ("mc-laguerre", "pde"),
                   ks_distance(vals[:, j, 1], ref), 0.05, kind="KS")
    report.add("laguerre coupled monotonicity violations", ("mc-laguerre",),
               routes.monotonicity_violations(vals[:, :, 0], ws), 1.0, kind="count")
    return report


def check_hermite(report, settings=Settings(), hm=None):
    hm = hm or routes.hastings_mcleod()
    ws = (INF, 0.0)
    spec = routes.ModelSpec("hermite", 1.0, n=settings.n)
    vals = routes.scaled_top(spec, ws, 1, settings.mc_samples, settings.seed + 1)
    for j, w in enumerate(ws):
        ref = routes.reference_cdf(1, w, 1, "pde", settings.grid)
        report.add(f"hermite beta=1 n={settings.n} w={w:g}", ("mc-hermite", "pde"),
                   ks_distance(vals[:, j, 0], ref), 0.05, kind="KS")
    xs = np.linspace(-8.0, 6.0, 561)
    ref = tabulated_cdf(xs, np.sqrt(hm.eval_E(xs) * hm.eval_F(xs)))
    report.add(f"hermite beta=1 n={settings.n} w=inf vs E^1/2 F^1/2", ("mc-hermite", "painleve"),
               ks_distance(vals[:, 0, 0], ref), 0.05, kind="KS")
    report.add("hermite coupled monotonicity violations", ("mc-hermite",),
               routes.monotonicity_violations(vals[:, :, 0], ws), 1.0, kind="count")
    return report


def tridiagonal_top(n, p, ell, draws, seed):
    spec = ensembles.LaguerreSpec(1.0, n, p, ell)
    return top_eigenvalues(ensembles.laguerre_batch(spec, seed, np.arange(draws)), 1)[:, 0]


def dense_top(n, p, ell, draws, seed):
    rng = np.random.default_rng(np.random.SeedSequence([seed, n, p, int(ell * 1000)]))
    return np.array([ensembles.dense_wishart_oracle(n, p, ell, rng)[-1] for _ in range(draws)])


def check_dense(report, settings=Settings()):
    for n in (2, 3, 5):
        for ell in (1.0, 2.0):
            a = tridiagonal_top(n, n, ell, settings.dense_draws, settings.seed)
            b = dense_top(n, n, ell, settings.dense_draws, settings.seed)
            report.add(f"beta=1 n=p={n} ell={ell:g}, {settings.dense_draws} draws",
                       ("mc-laguerre", "dense"), ks_two_sample(a, b), 0.03, kind="KS2")
    return report


def robin_ground_state(w):
    """Smallest eigenvalue of -f'' + x f with f'(0) = w f(0)."""
    a1 = -ai_zeros(1)[0][0]
    if math.isinf(w):
        return a1
    # f = Ai(x - lam): Ai'(-lam) = w Ai(-lam), the smallest root lies below -a1'
    g = lambda lam: airy(-lam)[1] - w * airy(-lam)[0]
    lo = -1.0
    while g(lo) * g(a1 - 1e-12) > 0:
        lo = 2 * lo - 1
    return brentq(g, lo, a1 - 1e-12, xtol=1e-14)


def check_airy(report, settings=Settings(), m=10, size=600):
    spec = routes.ModelSpec("airy", 2.0, m=m, size=size)
    vals = routes.scaled_top(spec, (INF,), 1, settings.airy_samples, settings.seed + 2)
    report.add(f"airy beta=2 w=inf m={m} len={size}", ("mc-airy", "painleve"),
               ks_distance(vals[:, 0, 0], routes.reference_cdf(2, INF, 1, "painleve")),
               0.06, kind="KS")
    for w in (INF, 1.0, 0.0, -1.0):
        d = ensembles.AiryDiscretization(INF, w, m, size)
        lam = extreme_eigenvalues(ensembles.discretized_airy(d, None), 1, "smallest", tol=1e-12)[0]
        ref = robin_ground_state(w)
        report.add(f"noise-off ground state w={w:g} m={m}", ("mc-airy", "airy-exact"),
                   abs(lam - ref), 0.05, detail=f"{lam:.5f} vs {ref:.5f}")
    ws = (INF, 2.0, 0.0, -2.0)
    c = routes.scaled_top(spec, ws, 1, 500, settings.seed + 3)
    report.add("airy coupled monotonicity violations", ("mc-airy",),
               routes.monotonicity_violations(c[:, :, 0], ws), 1.0, kind="count")
    return report


def check_monotone(report, settings=Settings(), hm=None):
    """Nondecreasing in x and w on the deterministic routes; diffusion within 3 sigma."""
    hm = hm or routes.hastings_mcleod()
    xs = np.linspace(-6.0, 4.0, 41)
    ws = np.linspace(-3.0, 4.0, 29)
    for beta, fn in ((2, painleve.F2_surface), (4, painleve.F4_surface)):
        S = fn(hm, xs, ws)
        worst = max(0.0, -np.min(np.diff(S, axis=0)), -np.min(np.diff(S, axis=1)))
        report.add(f"beta={beta} monotone decrease (max)", ("painleve",), worst, 1e-10)
    for beta in (1, 2, 4):
        s = routes.pde_levels(float(beta), 1, settings.grid)[0]
        V = s.values
        worst = max(0.0, -np.min(np.diff(V, axis=0)), -np.min(np.diff(V, axis=1)))
        report.add(f"beta={beta} monotone decrease (max)", ("pde",), worst, 1e-8)
    grid_x, grid_w = (-1.5, 0.0), (-1.0, 0.0, INF)
    n = max(2000, settings.sde_paths // 10)
    for beta in (1, 2, 4):
        est = {}
        for i, x in enumerate(grid_x):
            for j, w in enumerate(grid_w):
                est[x, w] = riccati.estimate_cdf(beta, w, x, n, seed=settings.seed + 100 + 10 * i + j)
        bad = 0
        for (x, w), (F, e) in est.items():
            for (x2, w2), (F2, e2) in est.items():
                if x2 >= x and w2 >= w and (x2, w2) != (x, w):
                    bad += F - F2 > 3 * math.hypot(e, e2)
        report.add(f"beta={beta} monotonicity beyond 3 sigma", ("sde",), bad, 1.0, kind="count")
    return report


SUITES = {
    "painleve": lambda r, s: check_painleve(r),
    "identities": lambda r, s: check_identities(r),
    "pde": check_pde_painleve,
    "sde": check_sde_pde,
    "laguerre": check_laguerre,
    "hermite": check_hermite,
    "dense": check_dense,
    "airy": check_airy,
    "monotone": check_monotone,
}


def run(suites=None, settings=None, log=None):
    """Run the named suites (all by default) and return the report."""
    settings = settings or Settings()
    report = ComparisonReport()
    for name in suites or SUITES:
        if name not in SUITES:
            raise ValueError(f"unknown suite {name!r}; choose from {sorted(SUITES)}")
        start = len(report.checks)
        SUITES[name](report, settings)
        if log is not None:
            for c in report.checks[start:]:
                log(c.line())
    return report
