from importlib import resources

import numpy as np
import pytest
from hypothesis import settings, strategies as st

from roughif import SCALE, CutParams, IFSet, Partition, Universe, io

# first calls may include numba compilation
settings.register_profile("roughif", deadline=None)
settings.load_profile("roughif")

FIXTURES = resources.files("roughif") / "fixtures"


def fixture_path(name: str):
    return FIXTURES / name


@pytest.fixture
def ex521():
    return io.load(fixture_path("ex_5_2_1.json"))


@pytest.fixture
def ex522():
    return io.load(fixture_path("ex_5_2_2.json"))


@pytest.fixture
def ex53():
    return io.load(fixture_path("ex_5_3_counter.json"))


# hypothesis strategies on the 0.05 grid so equal degrees actually collide
GRID = 20
TICK = SCALE // GRID


@st.composite
def if_pairs(draw, n):
    mu = draw(st.lists(st.integers(0, GRID), min_size=n, max_size=n))
    nu = [draw(st.integers(0, GRID - m)) for m in mu]
    return np.array(mu, np.int32) * TICK, np.array(nu, np.int32) * TICK


@st.composite
def worlds(draw, sets=2, max_n=6):
    """A partitioned universe with ``sets`` IF sets and cut params in J."""
    n = draw(st.integers(1, max_n))
    u = Universe.of_size(n)
    raw = draw(st.lists(st.integers(0, n - 1), min_size=n, max_size=n))
    relabel = {}
    labels = [relabel.setdefault(b, len(relabel)) for b in raw]
    r = Partition.from_labels(u, labels)
    xs = [IFSet(u, *draw(if_pairs(n))) for _ in range(sets)]
    a = draw(st.integers(0, GRID))
    b = draw(st.integers(0, GRID - a))
    return r, xs, CutParams(a * TICK, b * TICK)


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for num in sorted(RESULTS):
            terminalreporter.write_line(RESULTS[num])
