import numpy as np
import pytest
from hypothesis import HealthCheck, settings

from reltc import DATA_DIR

settings.register_profile("reltc", deadline=None, max_examples=60,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("reltc")

# Monte-Carlo tests run under both seeds.
SEEDS = (20261015, 7)

ALGEBRAS = DATA_DIR / "algebras"
SCENARIOS = DATA_DIR / "scenarios"
BOUNDS = DATA_DIR / "bounds"


@pytest.fixture(params=SEEDS, ids=lambda s: f"seed{s}")
def seed(request):
    return request.param


@pytest.fixture
def rng(seed):
    return np.random.default_rng(seed)


# One line per acceptance criterion, printed at the end of the run.
ACCEPTANCE: dict[int, str] = {}


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for k in sorted(ACCEPTANCE):
            terminalreporter.write_line(ACCEPTANCE[k])
