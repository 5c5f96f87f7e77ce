import pytest

from twobath import BathParams, QuadratureConfig, SystemParams


@pytest.fixture
def sys_ref():
    """Strongly coupled pair, Omega_+ = 7, Omega_- = 1."""
    return SystemParams(omega=5.0, sigma=24.0)


@pytest.fixture
def hot_weak():
    return BathParams(gamma_bar=0.005, beta=1.0)


@pytest.fixture
def cold_strong():
    return BathParams(gamma_bar=0.25, beta=1.5)


@pytest.fixture
def quad_ref():
    return QuadratureConfig(cutoff=5000.0, rel_tol=1e-9)


def pytest_terminal_summary(terminalreporter):
    # repeat the acceptance lines, which pytest otherwise captures
    import sys
    mod = sys.modules.get("test_acceptance") or sys.modules.get("tests.test_acceptance")
    lines = getattr(mod, "RESULTS", None)
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in sorted(lines, key=lambda s: int(s.split()[1])):
            terminalreporter.write_line(line)
