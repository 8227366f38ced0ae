import importlib

import pytest

from overlapq import _kernels_py, crossmatch, densities

ACCEPTANCE_LINES = []


def _available_backends():
    names = ["python"]
    try:
        importlib.import_module("overlapq._kernels")
    except ImportError:
        pass
    else:
        names.insert(0, "cython")
    return names


@pytest.fixture(params=_available_backends())
def backend(request, monkeypatch):
    """Run a test once per kernel implementation."""
    if request.param == "cython":
        mod = importlib.import_module("overlapq._kernels")
    else:
        mod = _kernels_py
    monkeypatch.setattr(crossmatch, "kernels", mod)
    monkeypatch.setattr(densities, "kernels", mod)
    return mod


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
