"""Acceptance battery at full settings; one test per criterion.

Each test runs the matching verify checks, prints every measured residual
next to its tolerance and records a single PASS/FAIL line for the summary.
"""
import functools

import pytest

from spikedtw import verify
from spikedtw.tables import ComparisonReport

SETTINGS = verify.Settings()


@functools.lru_cache(maxsize=None)
def suite(name):
    rep = ComparisonReport()
    verify.SUITES[name](rep, SETTINGS)
    return tuple(rep.checks)


def is_coupling(check):
    return "monotonicity violations" in check.name


CRITERIA = {
    1: ("Painleve internal identities", lambda: suite("painleve")),
    2: ("closed-form special cases at beta=2,4", lambda: suite("identities")),
    3: ("PDE surface vs Painleve at beta=2,4", lambda: suite("pde")),
    4: ("diffusion vs PDE, 9 probes, 2e4 paths", lambda: suite("sde")),
    5: ("spiked Laguerre beta=2 n=p=400, k=1,2",
        lambda: tuple(c for c in suite("laguerre") if not is_coupling(c))),
    6: ("spiked Hermite beta=1 n=400",
        lambda: tuple(c for c in suite("hermite") if not is_coupling(c))),
    7: ("tridiagonal vs dense Householder oracle", lambda: suite("dense")),
    8: ("discretized Airy operator", lambda: tuple(c for c in suite("airy") if not is_coupling(c))),
    9: ("monotone structure and coupled sampling",
        lambda: suite("monotone") + tuple(c for s in ("laguerre", "hermite", "airy")
                                          for c in suite(s) if is_coupling(c))),
}


@pytest.mark.parametrize("number", sorted(CRITERIA), ids=lambda k: f"criterion{k}")
def test_criterion(number, record_property):
    title, checks = CRITERIA[number]
    checks = checks()
    assert checks
    for c in checks:
        print(c.line())
    failed = [c for c in checks if not c.passed]
    tag = "PASS" if not failed else "FAIL"
    record_property("acceptance", f"{number}. {tag}  {title}  "
                                  f"({len(checks) - len(failed)}/{len(checks)} checks)")
    assert not failed, "\n".join(c.line() for c in failed)
