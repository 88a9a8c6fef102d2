import functools
import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from bsstar.graph import AdjacencyMode, build  # noqa: E402


@functools.lru_cache(maxsize=None)
def cached_graph(n, mode=AdjacencyMode.CACHED):
    return build(n, mode)


@functools.lru_cache(maxsize=None)
def oracle_adjacency(n):
    import oracles

    return oracles.adjacency(n)


@pytest.fixture(scope="session")
def bs():
    """``bs(n)`` returns a shared cached-mode BS_n."""
    return cached_graph


@pytest.fixture(scope="session")
def oracle_adj():
    return oracle_adjacency


_VERDICTS = pytest.StashKey[dict]()


class _Criterion:
    def __init__(self, store, key, title):
        self.store, self.key, self.title = store, key, title
        self.notes = []

    def note(self, text):
        self.notes.append(text)

    def __enter__(self):
        return self

    def __exit__(self, exc_type, exc, tb):
        detail = "; ".join(self.notes)
        if exc_type is None:
            self.store[self.key] = f"PASS  {self.key}  {self.title}" + (f"  [{detail}]" if detail else "")
        else:
            reason = str(exc).splitlines()[0] if str(exc) else exc_type.__name__
            self.store[self.key] = f"FAIL  {self.key}  {self.title}  [{reason}]"
        return False


@pytest.fixture
def criterion(request):
    """``with criterion("AC1", "title") as c:`` records one acceptance verdict line."""
    store = request.config.stash.setdefault(_VERDICTS, {})
    return lambda key, title: _Criterion(store, key, title)


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    verdicts = config.stash.get(_VERDICTS, {})
    if not verdicts:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(verdicts):
        terminalreporter.write_line(verdicts[key])
