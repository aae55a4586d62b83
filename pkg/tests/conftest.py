import math

import pytest

from mirror_dressing import PhysicalConstants, PhysicalParams

# reference mirror parameters in a 10 um cavity
REFERENCE = dict(M=1e-14, omega0=1e4, L0=1e-5, omega_cut=1e16)

# oracle regime: hbar = c = 1 and L0 = pi so that omega_k = k; two modes below the cutoff
UNIT = PhysicalConstants(1.0, 1.0)
ORACLE = dict(M=64.0, omega0=1.3, L0=math.pi, omega_cut=2.5)

# criterion id -> (passed, detail), filled by test_acceptance and reported at the end
ACCEPTANCE_RESULTS: dict = {}


@pytest.fixture
def ref_params():
    return PhysicalParams(**REFERENCE)


@pytest.fixture
def oracle_params():
    return PhysicalParams(**ORACLE, constants=UNIT)


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(ACCEPTANCE_RESULTS):
        passed, detail = ACCEPTANCE_RESULTS[key]
        terminalreporter.write_line(f"{'PASS' if passed else 'FAIL'} criterion {key:2d}: {detail}")
