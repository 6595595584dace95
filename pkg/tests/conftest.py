import numpy as np
import pytest

from nctorus.theta import ThetaMatrix
from oracles import ACCEPTANCE_RESULTS


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(ACCEPTANCE_RESULTS):
        parts = ACCEPTANCE_RESULTS[key]
        ok = all(p for p, _ in parts)
        detail = "; ".join(msg for _, msg in parts)
        terminalreporter.write_line(f"[{'PASS' if ok else 'FAIL'}] criterion {key}: {detail}")


@pytest.fixture
def theta_half():
    return ThetaMatrix.from_upper(2, {(1, 2): 0.5})


@pytest.fixture
def rng():
    return np.random.default_rng(20240601)
