import pytest

from gritcheck import parse_dimacs, parse_grit

SAMPLE_CNF = """p cnf 3 5
 1  2 0
-1  2 0
 1 -2 0
-1  3 0
-2 -3 0
"""

SAMPLE_DRUP = """ 1  0
d  1  2 0
d  1 -2 0
 2  0
d -1  2 0
 3  0
d -1  3 0
d  1  0
 0
"""

SAMPLE_GRIT = """1  1  2 0 0
2 -1  2 0 0
3  1 -2 0 0
4 -1  3 0 0
5 -2 -3 0 0
6  1  0 1 3 0
0  1  3 0
7  2  0 6 2 0
0  2  0
8  3  0 6 4 0
0  4  6 0
9  0  7 8 5 0
"""


@pytest.fixture
def formula():
    return parse_dimacs(SAMPLE_CNF)


@pytest.fixture
def proof():
    return list(parse_grit(SAMPLE_GRIT))


@pytest.fixture
def sample_files(tmp_path):
    cnf = tmp_path / "formula.cnf"
    grit = tmp_path / "proof.grit"
    drup = tmp_path / "formula.drup"
    cnf.write_text(SAMPLE_CNF)
    grit.write_text(SAMPLE_GRIT)
    drup.write_text(SAMPLE_DRUP)
    return cnf, grit, drup


ACCEPTANCE_RESULTS: list[tuple[str, bool, str]] = []


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for name, ok, detail in ACCEPTANCE_RESULTS:
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'}  {name}: {detail}")
