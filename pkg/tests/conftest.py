import random

import pytest

from coplex.graph import Graph, generate_er


def star13() -> Graph:
    """K_{1,3} with centre 0 and leaves 1, 2, 3."""
    return Graph(4, [(0, 1), (0, 2), (0, 3)])


def random_graphs(count, n_min, n_max, seed, densities=(0.3, 0.5, 0.7)):
    rng = random.Random(seed)
    return [generate_er(rng.randint(n_min, n_max), rng.choice(densities), rng.randrange(2**31))
            for _ in range(count)]


@pytest.fixture
def star():
    return star13()


# one line per acceptance criterion, printed after the run whatever the capture mode
ACCEPTANCE_LINES: dict[int, str] = {}


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for key in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(ACCEPTANCE_LINES[key])
