import functools

import pytest

from pi3lattice import fixtures
from pi3lattice.chain_complex import boundary_matrices, second_homotopy
from pi3lattice.groups import enumerate_group


@functools.lru_cache(maxsize=None)
def group_for(text: str):
    return enumerate_group(text)


@functools.lru_cache(maxsize=None)
def complex_for(text: str):
    G = group_for(text)
    return boundary_matrices(G.presentation, G)


@functools.lru_cache(maxsize=None)
def pi2_for(text: str):
    return second_homotopy(complex_for(text))[0]


@pytest.fixture(scope="session")
def c3():
    return group_for(fixtures.PRESENTATIONS["C3"])


@pytest.fixture(scope="session")
def q8():
    return group_for(fixtures.PRESENTATIONS["Q8"])


@pytest.fixture(scope="session")
def c2():
    return group_for(fixtures.PRESENTATIONS["C2"])


@pytest.fixture(scope="session")
def s3():
    return group_for(fixtures.PRESENTATIONS["S3"])


@pytest.fixture(scope="session")
def trivial():
    return group_for(fixtures.PRESENTATIONS["trivial"])


_criteria: dict[int, str] = {}


def pytest_runtest_logreport(report):
    marker = "test_criterion_"
    name = report.nodeid.rsplit("::", 1)[-1]
    if not name.startswith(marker):
        return
    num = int(name[len(marker):].split("_", 1)[0])
    if report.when == "call" or (report.when == "setup" and report.outcome != "passed"):
        if report.outcome == "passed":
            _criteria.setdefault(num, "PASS")
        else:
            _criteria[num] = "FAIL"


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for num in sorted(_criteria):
        terminalreporter.write_line(f"criterion {num}: {_criteria[num]}")
