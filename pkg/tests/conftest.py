import sys

import pytest
from hypothesis import settings

from slitplane import _backend

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")


@pytest.fixture(params=_backend.available())
def backend(request):
    """Run the test once per available kernel backend."""
    previous = _backend.kernels
    yield _backend.use(request.param)
    _backend.kernels = previous


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    lines = getattr(mod, "RESULTS", None)
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
