import pytest

from torsform.corpus import property_corpus
from torsform.lattice import validate

U = [[0, 1], [1, 0]]
I2 = [[1, 0], [0, 1]]
MINUS_I2 = [[-1, 0], [0, -1]]
SWAP = [[0, 1], [1, 0]]
ROT90 = [[0, -1], [1, 0]]

ACCEPTANCE_LINES = []


@pytest.fixture
def rank1_minus():
    return validate(2, [[1]], [[-1]], name="rank1-minus")


@pytest.fixture
def u_minus():
    return validate(2, U, MINUS_I2, name="u-minusI")


@pytest.fixture
def i2_rot():
    return validate(2, I2, ROT90, name="i2-rot90")


@pytest.fixture
def u_swap():
    return validate(2, U, SWAP, name="u-swap")


@pytest.fixture(scope="session")
def corpus():
    return property_corpus(count=500, seed=2024, k3_count=20)


@pytest.fixture
def acceptance_line():
    def record(number, ok, detail):
        ACCEPTANCE_LINES.append(f"criterion {number}: {'PASS' if ok else 'FAIL'}  {detail}")
    return record


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
