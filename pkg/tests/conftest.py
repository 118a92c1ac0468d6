import random
from fractions import Fraction

import pytest

from dt4vertex.partitions import DPartition, partitions_up_to, solid_from_monomials

ACCEPTANCE_RESULTS: list[tuple[str, bool, str]] = []


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for name, ok, detail in ACCEPTANCE_RESULTS:
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'}  {name}  {detail}")


@pytest.fixture
def box() -> DPartition:
    return solid_from_monomials([(0, 0, 0, 0)])


@pytest.fixture
def example_pi() -> DPartition:
    """Z = 1 + t1 + t4."""
    return solid_from_monomials([(0, 0, 0, 0), (1, 0, 0, 0), (0, 0, 0, 1)])


@pytest.fixture(scope="session")
def small_solids() -> list[DPartition]:
    return partitions_up_to(3, 6)


def random_lambdas(seed: int, count: int):
    rng = random.Random(seed)
    out = []
    while len(out) < count:
        lam = tuple(Fraction(rng.randint(-40, 40), rng.randint(1, 9)) for _ in range(3))
        out.append(lam)
    return out
