import pytest
from hypothesis import strategies as st

from secplace.topology import DemandSet, Edge, Topology, generate_fat_tree


def chain(n, weight=1):
    return Topology(n, tuple(Edge(i, i + 1, weight) for i in range(n - 1)))


@pytest.fixture
def chain3():
    return chain(3)


@pytest.fixture
def diamond():
    return Topology(4, ((0, 1, 1), (1, 3, 1), (0, 2, 5), (2, 3, 5)))


@pytest.fixture(scope="session")
def fat_tree4():
    return generate_fat_tree(4, 1, reverse=False)


@st.composite
def small_instances(draw, max_nodes=8, max_types=2, min_types=0):
    """Random digraph with weights 1..10, a placement and one flow."""
    n = draw(st.integers(2, max_nodes))
    pairs = [(u, v) for u in range(n) for v in range(n) if u != v]
    chosen = draw(st.lists(st.sampled_from(pairs), unique=True, max_size=min(len(pairs), 3 * n)))
    edges = tuple(Edge(u, v, draw(st.integers(1, 10))) for u, v in sorted(chosen))
    T = draw(st.integers(min_types, max_types))
    genes = tuple(draw(st.lists(st.integers(0, T), min_size=n, max_size=n)))
    s = draw(st.integers(0, n - 1))
    d = draw(st.integers(0, n - 1).filter(lambda x: x != s))
    return Topology(n, edges), genes, s, d, T


def demands(sources, destinations):
    return DemandSet(tuple(sources), tuple(destinations))


# one line per acceptance criterion, printed after the run
ACCEPTANCE: dict[int, str] = {}
ACCEPTANCE_COUNT = 9


def record(number, title, ok, detail=""):
    ACCEPTANCE[number] = f"[{'PASS' if ok else 'FAIL'}] criterion {number}: {title}" + (f" ({detail})" if detail else "")
    assert ok, ACCEPTANCE[number]


def pytest_terminal_summary(terminalreporter):
    ran = {r.nodeid for key, stat in terminalreporter.stats.items() if key != "deselected"
           for r in stat if hasattr(r, "nodeid")}
    if not any("test_acceptance" in n for n in ran):
        return
    terminalreporter.section("acceptance criteria")
    for i in range(1, ACCEPTANCE_COUNT + 1):
        line = ACCEPTANCE.get(i)
        if line is None and any(f"test_criterion_{i}_" in n for n in ran):
            line = f"[FAIL] criterion {i}: raised before its check"
        if line is not None:
            terminalreporter.write_line(line)
