import pytest

from hallforge.catalog import Catalog
from hallforge.quiver import linear_quiver


@pytest.fixture(scope="session")
def catalogs():
    """Shared catalogs keyed by (number of vertices, q); memo tables are reused across tests."""
    made = {}

    def get(n, q):
        if (n, q) not in made:
            made[(n, q)] = Catalog(linear_quiver(n), q)
        return made[(n, q)]

    return get


@pytest.fixture(scope="session")
def a1(catalogs):
    return catalogs(1, 2)


@pytest.fixture(scope="session")
def a2(catalogs):
    return catalogs(2, 2)


ACCEPTANCE = {}


def record_criterion(number, title, passed, detail=""):
    ACCEPTANCE[number] = (title, passed, detail)
    line = f"criterion {number:>2} {'PASS' if passed else 'FAIL'}  {title}"
    print(line + (f"  ({detail})" if detail else ""))


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(ACCEPTANCE):
        title, passed, detail = ACCEPTANCE[number]
        suffix = f"  ({detail})" if detail else ""
        terminalreporter.write_line(f"criterion {number:>2} {'PASS' if passed else 'FAIL'}  {title}{suffix}")
