"""Riccati paths, their explosions and the stochastic Airy spectrum.

Each explosion of p' = x - lam - p^2 + noise on [0, L] is a zero of the
eigenfunction candidate, so counting explosions while sweeping lam locates
the low eigenvalues of the operator for one frozen noise path.

Run: python3 demos/explosions.py
"""
import math

import numpy as np

from spikedtw import riccati, routes
from spikedtw.stats import ks_distance

cfg = riccati.DiffusionConfig(beta=2.0)
rng = np.random.default_rng(4)
for x0 in (-4.0, -2.0, 0.0):
    out = riccati.run_path(x0, math.inf, cfg, rng)
    times = ", ".join(f"{t:.3f}" for t in out.explosion_times)
    print(f"start x0={x0:+.1f}: {out.explosions} explosion(s) [{times}]")

s = riccati.sample_eigenvalues(2.0, math.inf, 3, n_paths=300, rng=np.random.default_rng(5))
print("first three eigenvalues of 5 paths:")
print(np.round(s.values[:5], 3))
hm = routes.hastings_mcleod()
print(f"KS of -lambda_0 against F_2: {ks_distance(-s.values[:, 0], hm.eval_F):.3f} (300 paths)")
