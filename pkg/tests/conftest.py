import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from zforce.generators import enumerate_connected_claw_free_cubic, necklace, prism  # noqa: E402


@pytest.fixture(scope="session")
def corpus14():
    return enumerate_connected_claw_free_cubic(14)


@pytest.fixture(scope="session")
def corpus16():
    return enumerate_connected_claw_free_cubic(16)


@pytest.fixture
def p6():
    return prism()


@pytest.fixture
def n2():
    return necklace(2)


@pytest.fixture
def n3():
    return necklace(3)


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    results = getattr(mod, "RESULTS", None)
    if results:
        terminalreporter.section("acceptance criteria")
        for cid in sorted(results):
            terminalreporter.write_line(results[cid])
