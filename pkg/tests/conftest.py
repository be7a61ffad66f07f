import pytest

from twistinv.catalog import build

_COSETS = {}


def coset(key):
    """Shared catalog cosets, so per-coset caches survive across tests."""
    if key not in _COSETS:
        _COSETS[key] = build(key)
    return _COSETS[key]


@pytest.fixture
def get():
    return coset


_RESULTS = {}


def record(criterion, ok, detail):
    """One line per acceptance criterion, printed at the end of the run."""
    _RESULTS[str(criterion)] = (ok, detail)


def pytest_terminal_summary(terminalreporter):
    if not _RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for name in sorted(_RESULTS):
        ok, detail = _RESULTS[name]
        terminalreporter.write_line(f"criterion {name}: {'PASS' if ok else 'FAIL'} ({detail})")
