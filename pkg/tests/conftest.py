import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from dispersive_lab import datum, hypotheses  # noqa: E402


@pytest.fixture(scope="session")
def gauss():
    return datum.builtin("gauss")


@pytest.fixture(scope="session")
def hermite2():
    return datum.builtin("hermite2")


@pytest.fixture(scope="session")
def odd1():
    return datum.builtin("odd1")


@pytest.fixture(scope="session")
def hermite2_report(hermite2):
    return hypotheses.check(hermite2)
