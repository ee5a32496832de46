import pytest

from codegree_lab.chartab import character_table
from codegree_lab.constructors import build_corpus_group, build_paper_G, build_torus_T
from codegree_lab.fields import BinaryField
from codegree_lab.groups import center, fitting_subgroup

CORPUS = ["trivial", "C2", "C6", "C12", "S3", "D8", "Q8", "A4", "S4", "SL23", "extraspecial_p_small"]


@pytest.fixture(scope="session")
def gf1024():
    return BinaryField(10)


@pytest.fixture(scope="session")
def torus(gf1024):
    return build_torus_T(gf1024)


@pytest.fixture(scope="session")
def paper_group():
    return build_paper_G()


@pytest.fixture(scope="session")
def paper_table(paper_group):
    return character_table(paper_group)


@pytest.fixture(scope="session")
def paper_structure(paper_group):
    return fitting_subgroup(paper_group), center(paper_group)


_tables = {}


def corpus_table(name):
    if name not in _tables:
        g = build_torus_T() if name == "torus_t" else build_corpus_group(name)
        _tables[name] = (g, character_table(g))
    return _tables[name]


ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
