import numpy as np
import pytest
from hypothesis import settings

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")

S2 = 1 / np.sqrt(2)


@pytest.fixture
def minus_state():
    return np.array([S2, -S2], dtype=complex)


@pytest.fixture
def rng():
    return np.random.default_rng(20171102)


_ACCEPTANCE = []


@pytest.fixture
def acceptance():
    """Record one PASS/FAIL line per acceptance criterion, then assert it."""
    def report(number, title, ok, seconds, limit):
        within = seconds < limit
        verdict = "PASS" if ok and within else "FAIL"
        line = f"AC{number} {verdict}  {title}  ({seconds:.3g}s, limit {limit:g}s)"
        _ACCEPTANCE.append(line)
        print(line)
        assert ok, f"AC{number} check failed: {title}"
        assert within, f"AC{number} took {seconds:.3g}s, limit {limit:g}s"
    return report


def pytest_terminal_summary(terminalreporter):
    if _ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for line in _ACCEPTANCE:
            terminalreporter.write_line(line)
