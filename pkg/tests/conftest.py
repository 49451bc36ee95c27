import pytest

_ACCEPTANCE = pytest.StashKey[dict]()


def pytest_configure(config):
    config.stash[_ACCEPTANCE] = {}


@pytest.fixture
def acceptance_record(request):
    """Callable storing (criterion, ok, detail) for the end-of-run summary."""
    store = request.config.stash[_ACCEPTANCE]

    def record(number, title, ok, detail):
        store[number] = (title, ok, detail)

    return record


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    store = config.stash.get(_ACCEPTANCE, {})
    if not store:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(store):
        title, ok, detail = store[number]
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'}  {number}. {title}: {detail}")
