"""Deformed Tracy-Widom F_{2,w}(x) by the four routes, side by side.

Run: python3 demos/four_routes.py   (about a minute)
"""
import math

import numpy as np

from spikedtw import riccati, routes
from spikedtw.stats import ecdf

XS = (-3.0, -2.0, -1.0, 0.0, 1.0)
WS = (math.inf, 1.0, 0.0, -1.0)

hm = routes.hastings_mcleod()
spec = routes.ModelSpec("laguerre", 2.0, n=200, p=200)
# one coupled batch serves every w
tops = routes.scaled_top(spec, WS, 1, 2000, seed=1)[:, :, 0]

print(f"{'w':>6} {'x':>5} {'painleve':>9} {'pde':>9} {'sde':>15} {'laguerre':>9}")
for j, w in enumerate(WS):
    p = routes.painleve_values(2.0, w, XS)
    q = routes.pde_values(2.0, w, XS)
    sx, sF = ecdf(tops[:, j])
    for i, x in enumerate(XS):
        F, se = riccati.estimate_cdf(2.0, w, x, 2000, seed=i)
        mc = sF[np.searchsorted(sx, x, side="right") - 1] if x >= sx[0] else 0.0
        print(f"{w:>6} {x:>5} {p[i]:9.4f} {q[i]:9.4f} {F:8.4f}+-{se:.4f} {mc:9.4f}")
