import pytest
from hypothesis import settings

# mixed-conductor arithmetic has long-tailed timings; correctness is what we check
settings.register_profile("default", deadline=None)
settings.load_profile("default")


@pytest.fixture(autouse=True)
def _isolated_cache(tmp_path_factory, monkeypatch):
    # never touch the user's cache from the test suite
    cache = tmp_path_factory.getbasetemp() / "chartable-cache"
    monkeypatch.setenv("CDJ_CACHE_DIR", str(cache))


def pytest_terminal_summary(terminalreporter):
    from helpers import ACCEPTANCE

    if ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE:
            terminalreporter.write_line(line)
