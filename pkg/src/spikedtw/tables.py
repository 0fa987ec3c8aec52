"""Tabulated distribution values and cross-method comparison reports."""
from dataclasses import dataclass, field
import csv
import io
import math

import numpy as np

METHODS = ("mc-laguerre", "mc-hermite", "mc-airy", "sde", "pde", "painleve")
HEADER = ("method", "beta", "w", "k", "x", "F", "stderr")


def fmt_real(v):
    v = float(v)
    if math.isinf(v):
        return "inf" if v > 0 else "-inf"
    return repr(v)


def parse_real(s):
    s = str(s).strip().lower()
    if s in ("inf", "+inf", "infinity"):
        return math.inf
    return float(s)


@dataclass(frozen=True)
class Row:
    method: str
    beta: float
    w: float
    k: int
    x: float
    F: float
    stderr: float = 0.0

    def key(self):
        return (self.method, self.beta, self.w, self.k, self.x)


@dataclass
class DistributionTable:
    rows: list = field(default_factory=list)

    def add(self, method, beta, w, k, x, F, stderr=0.0):
        if method not in METHODS:
            raise ValueError(f"unknown method {method!r}")
        F = float(F)
        if not -1e-12 <= F <= 1 + 1e-12:
            raise ValueError(f"F={F} outside [0, 1]")
        if stderr < 0:
            raise ValueError("stderr must be nonnegative")
        self.rows.append(Row(method, float(beta), float(w), int(k), float(x),
                             min(max(F, 0.0), 1.0), float(stderr)))

    def extend(self, other):
        self.rows.extend(other.rows)

    def sorted_rows(self):
        rows = sorted(self.rows, key=Row.key)
        keys = [r.key() for r in rows]
        if len(set(keys)) != len(keys):
            raise ValueError("duplicate (method, beta, w, k, x) rows")
        return rows

    def to_csv(self):
        buf = io.StringIO()
        wr = csv.writer(buf, lineterminator="\n")
        wr.writerow(HEADER)
        for r in self.sorted_rows():
            wr.writerow([r.method, fmt_real(r.beta), fmt_real(r.w), r.k,
                         fmt_real(r.x), fmt_real(r.F), fmt_real(r.stderr)])
        return buf.getvalue()

    @classmethod
    def from_csv(cls, text):
        rd = csv.reader(io.StringIO(text))
        head = next(rd)
        if tuple(head) != HEADER:
            raise ValueError(f"bad header {head}")
        t = cls()
        for m, b, w, k, x, F, e in rd:
            t.add(m, parse_real(b), parse_real(w), int(k), parse_real(x),
                  parse_real(F), parse_real(e))
        return t

    def select(self, method=None, beta=None, w=None, k=None):
        out = [r for r in self.rows
               if (method is None or r.method == method)
               and (beta is None or r.beta == beta)
               and (w is None or r.w == w)
               and (k is None or r.k == k)]
        return sorted(out, key=Row.key)


@dataclass(frozen=True)
class Check:
    name: str
    methods: tuple
    value: float
    tol: float
    kind: str = "max-abs"  # or "ks", "sigma", "count"
    detail: str = ""

    @property
    def passed(self):
        return bool(np.isfinite(self.value) and self.value < self.tol)

    def line(self):
        tag = "PASS" if self.passed else "FAIL"
        pair = " vs ".join(self.methods)
        extra = f"  ({self.detail})" if self.detail else ""
        return f"{tag}  {self.name:<44s} [{pair}] {self.kind}={self.value:.3e} tol={self.tol:.1e}{extra}"


@dataclass
class ComparisonReport:
    checks: list = field(default_factory=list)

    def add(self, name, methods, value, tol, kind="max-abs", detail=""):
        methods = tuple(methods)
        if len(methods) == 2 and methods[0] == methods[1]:
            raise ValueError("a method is never compared against itself")
        c = Check(name, methods, float(value), float(tol), kind, detail)
        self.checks.append(c)
        return c

    @property
    def passed(self):
        return all(c.passed for c in self.checks)

    def render(self):
        lines = [c.line() for c in self.checks]
        n_ok = sum(c.passed for c in self.checks)
        lines.append(f"{n_ok}/{len(self.checks)} checks passed")
        return "\n".join(lines) + "\n"
