import pytest

from dop.double_poset import DoublePoset
from dop.poset import antichain, build_poset

# criterion number -> (passed, one-line description)
ACCEPTANCE = pytest.StashKey[dict]()


def pytest_configure(config):
    config.stash[ACCEPTANCE] = {}


def pytest_terminal_summary(terminalreporter, config):
    results = config.stash.get(ACCEPTANCE, {})
    if not results:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(results):
        ok, line = results[k]
        terminalreporter.write_line(f"criterion {k:2d}: {'PASS' if ok else 'FAIL'}  {line}")


@pytest.fixture
def criterion(request):
    """Record one acceptance verdict: ``criterion(k, ok, line)``."""

    def record(k: int, ok: bool, line: str) -> None:
        request.config.stash[ACCEPTANCE][k] = (ok, line)
        print(f"criterion {k:2d}: {'PASS' if ok else 'FAIL'}  {line}")

    return record


@pytest.fixture
def single():
    return DoublePoset(antichain(1), antichain(1), ("p",))


@pytest.fixture
def chain_antichain():
    """a < b in plus, nothing in minus."""
    return DoublePoset(build_poset(2, [(0, 1)]), antichain(2), ("a", "b"))


@pytest.fixture
def incompatible():
    """p < q in plus, q < p in minus."""
    return DoublePoset(build_poset(2, [(0, 1)]), build_poset(2, [(1, 0)]), ("p", "q"))
