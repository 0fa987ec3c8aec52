import pytest

from spikedtw import routes


@pytest.fixture(scope="session")
def hm():
    return routes.hastings_mcleod()


@pytest.fixture(scope="session")
def surfaces():
    """Default-grid level-0 surfaces keyed by beta, plus (2, 1) for level 1."""
    out = {b: routes.pde_levels(float(b), 1)[0] for b in (1, 2, 4)}
    out[2, 1] = routes.pde_levels(2.0, 2)[1]
    return out


def pytest_terminal_summary(terminalreporter):
    """Echo the per-criterion acceptance lines recorded by test_acceptance."""
    lines = []
    for key in ("passed", "failed"):
        for rep in terminalreporter.stats.get(key, []):
            for name, value in getattr(rep, "user_properties", []):
                if name == "acceptance":
                    lines.append(value)
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in sorted(lines):
            terminalreporter.write_line(line)
