import pytest
from hypothesis import strategies as st

from ringlock.core import Transition, is_self_disabling
from ringlock.protocols import generate

T3_CYCLE = frozenset({Transition(0, 0, 1), Transition(1, 1, 2), Transition(2, 2, 0)})
T2_CYCLE = frozenset({Transition(1, 0, 1), Transition(2, 1, 0)})


@st.composite
def self_disabling_sets(draw, max_m=3, max_size=8):
    """Random self-disabling tables: triples are admitted greedily in draw order."""
    m = draw(st.integers(2, max_m))
    value = st.integers(0, m - 1)
    raw = draw(st.lists(st.tuples(value, value, value), max_size=3 * max_size))
    chosen = set()
    for v, w, x in raw:
        t = Transition(v, w, x)
        if w == x or t in chosen or len(chosen) >= max_size:
            continue
        if is_self_disabling(chosen | {t}):
            chosen.add(t)
    return m, frozenset(chosen)


@pytest.fixture
def coloring3():
    return generate("coloring-det", 3)


@pytest.fixture
def agreement3():
    return generate("agreement", 3)


@pytest.fixture
def dijkstra3():
    return generate("dijkstra", 3)


def reachable(ts, start):
    """Brute-force reachability in H(ts), written without the graph class."""
    ts = list(ts)
    seen = set()
    frontier = [u for u in ts if u.own == start.written]
    while frontier:
        u = frontier.pop()
        if u in seen:
            continue
        seen.add(u)
        frontier.extend(w for w in ts if w.own == u.written)
    return seen


def lies_on_cycle(t, ts):
    return t in reachable(ts, t)


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in RESULTS:
            terminalreporter.write_line(line)
