import numpy as np
import pytest

from weylsections.lattice import all_isogenies, build_lattice

SMALL_TYPES = [("A", 1), ("A", 2), ("A", 3), ("B", 2), ("B", 3), ("C", 3), ("D", 3), ("G", 2)]


def small_lattices(max_rank=3):
    out = []
    for t, r in SMALL_TYPES:
        if r > max_rank:
            continue
        for iso in all_isogenies(t, r):
            out.append(build_lattice(t, iso, r))
    return out


@pytest.fixture
def rng():
    return np.random.default_rng(20240601)


# one line per acceptance criterion, echoed after the run
ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[2].rstrip(":"))):
            terminalreporter.write_line(line)
