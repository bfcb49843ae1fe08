import pytest

from flagkneser.projective import chamber_graph, enumerate_geometry
from flagkneser.quadrangle import flag_graph, h4_hermitian, q4_quadric, w_symplectic


@pytest.fixture(scope="session")
def pg2():
    g = enumerate_geometry(3, 2)
    return g, chamber_graph(g)


@pytest.fixture(scope="session")
def pg3():
    g = enumerate_geometry(3, 3)
    return g, chamber_graph(g)


@pytest.fixture(scope="session")
def w2():
    gq = w_symplectic(2)
    return gq, flag_graph(gq)


@pytest.fixture(scope="session")
def w3():
    gq = w_symplectic(3)
    return gq, flag_graph(gq)


@pytest.fixture(scope="session")
def q42():
    gq = q4_quadric(2)
    return gq, flag_graph(gq)


@pytest.fixture(scope="session")
def q43():
    gq = q4_quadric(3)
    return gq, flag_graph(gq)


@pytest.fixture(scope="session")
def h44():
    gq = h4_hermitian()
    return gq, flag_graph(gq)


ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[1])):
            terminalreporter.write_line(line)
