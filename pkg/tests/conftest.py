import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from tspullback import _backend, embedding, pullback  # noqa: E402

BACKENDS = _backend.available_backends()


@pytest.fixture(params=sorted(BACKENDS))
def backend(request, monkeypatch):
    """Run the test once per importable kernel implementation."""
    mod = BACKENDS[request.param]
    monkeypatch.setattr(embedding, "kernels", mod)
    monkeypatch.setattr(pullback, "kernels", mod)
    return request.param


ACCEPTANCE_LINES = []


@pytest.fixture
def acceptance_log():
    """Append one PASS/FAIL line per acceptance criterion; echoed in the summary."""
    def log(label, ok, detail):
        line = f"{'PASS' if ok else 'FAIL'}  {label}: {detail}"
        ACCEPTANCE_LINES.append(line)
        print(line)
    return log


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
