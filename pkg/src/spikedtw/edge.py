"""Soft-edge centring and scaling, and spike <-> boundary-parameter maps."""
from dataclasses import dataclass
import math

import numpy as np


@dataclass(frozen=True)
class EdgeMap:
    """``Lambda_hat = -(lambda - center) / scale``; the top eigenvalue maps to
    the ground state of the limiting operator."""

    center: float
    scale: float
    m: float

    def __post_init__(self):
        if not (self.scale > 0 and self.m > 0):
            raise ValueError("scale and m must be positive")

    def to_operator(self, lam):
        return -(np.asarray(lam, dtype=float) - self.center) / self.scale

    def to_tw(self, lam):
        """``-Lambda_hat``, the variable whose law tends to ``F_{beta,w}``."""
        return (np.asarray(lam, dtype=float) - self.center) / self.scale


def laguerre_m(n, p):
    return (math.sqrt(n * p) / (math.sqrt(n) + math.sqrt(p))) ** (2.0 / 3.0)


def laguerre_edge_map(n, p):
    if n < 1 or p < 1:
        raise ValueError("n, p must be >= 1")
    m = laguerre_m(n, p)
    return EdgeMap((math.sqrt(n) + math.sqrt(p)) ** 2, math.sqrt(n * p) / m ** 2, m)


def laguerre_w_for_spike(n, p, ell):
    """Finite-size boundary parameter ``m (1 - sqrt(n/p) (ell - 1))``."""
    return laguerre_m(n, p) * (1.0 - math.sqrt(n / p) * (ell - 1.0))


def laguerre_spike_for_w(n, p, w):
    """Spike ``ell`` with ``m (1 - sqrt(n/p)(ell - 1)) = w`` exactly; ``w = inf`` gives 1."""
    w = float(w)
    if math.isinf(w) and w > 0:
        return 1.0
    m = laguerre_m(n, p)
    ell = 1.0 + math.sqrt(p / n) * (1.0 - w / m)
    if not ell > 0 or math.isnan(ell):
        raise ValueError(f"w={w} needs spike ell={ell:.4g} <= 0 at n={n}, p={p}")
    return ell


def hermite_edge_map(n):
    if n < 1:
        raise ValueError("n must be >= 1")
    m = n ** (1.0 / 3.0)
    return EdgeMap(2.0 * math.sqrt(n), n ** (-1.0 / 6.0), m)


def hermite_shift_for_w(n, w):
    """``mu = 1 - w n^{-1/3}``; ``w = inf`` gives the unperturbed ``mu = 0``."""
    w = float(w)
    if math.isinf(w) and w > 0:
        return 0.0
    if math.isnan(w) or math.isinf(w):
        raise ValueError("w must be finite or +inf")
    return 1.0 - w * n ** (-1.0 / 3.0)


def hermite_w_for_shift(n, mu):
    return n ** (1.0 / 3.0) * (1.0 - mu)
