import time
from contextlib import contextmanager

import pytest
from hypothesis import strategies as st

from eulercover.corpus import named_corpus
from eulercover.graph import Multigraph


@st.composite
def multigraphs(draw, max_n=6, max_m=9, min_m=0):
    n = draw(st.integers(2, max_n))
    pairs = st.tuples(st.integers(0, n - 1), st.integers(0, n - 1)).filter(lambda e: e[0] != e[1])
    edges = draw(st.lists(pairs, min_size=min_m, max_size=max_m))
    return Multigraph(n, tuple(edges))


@st.composite
def eulerian_multigraphs(draw, max_n=6, max_trails=3, max_len=6):
    """Union of random closed walks (every degree even, parallel edges allowed)."""
    n = draw(st.integers(2, max_n))
    edges = []
    for _ in range(draw(st.integers(0, max_trails))):
        length = draw(st.integers(2, max_len))
        walk = [draw(st.integers(0, n - 1))]
        for _ in range(length - 1):
            walk.append(draw(st.integers(0, n - 1).filter(lambda v, p=walk[-1]: v != p)))
        if walk[-1] == walk[0]:
            continue
        walk.append(walk[0])
        edges += list(zip(walk, walk[1:]))
    return Multigraph(n, tuple(edges))


@pytest.fixture(scope="session")
def corpus():
    return named_corpus()


_ACCEPTANCE = pytest.StashKey[list]()


@pytest.fixture
def criterion(request):
    """Context manager recording one PASS/FAIL line per acceptance criterion."""
    lines = request.config.stash.setdefault(_ACCEPTANCE, [])

    @contextmanager
    def run(number: int, title: str):
        t0 = time.perf_counter()
        try:
            yield
        except BaseException:
            lines.append((number, f"FAIL  criterion {number:2d}: {title} ({time.perf_counter() - t0:.1f}s)"))
            print(lines[-1][1])
            raise
        lines.append((number, f"PASS  criterion {number:2d}: {title} ({time.perf_counter() - t0:.1f}s)"))
        print(lines[-1][1])

    return run


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    lines = config.stash.get(_ACCEPTANCE, [])
    if lines:
        terminalreporter.section("acceptance criteria")
        for _, line in sorted(lines):
            terminalreporter.write_line(line)
