import csv
from pathlib import Path

import pytest
import sympy

from g2period.periodicity import analyze_many
from g2period.presets import A058231_CURVE, A058231_POINT, A058231_SEED

DATA = Path(__file__).parent / "data"

ACCEPTANCE_RESULTS: dict[str, bool] = {}


def load_table() -> dict[int, dict[str, int | None]]:
    rows = {}
    with open(DATA / "reference_table.csv") as fh:
        for row in csv.DictReader(fh):
            rows[int(row["p"])] = {k: int(v) if v else None for k, v in row.items() if k != "p"}
    return rows


@pytest.fixture(scope="session")
def curve():
    return A058231_CURVE


@pytest.fixture(scope="session")
def point():
    return A058231_POINT


@pytest.fixture(scope="session")
def seed():
    return A058231_SEED


@pytest.fixture(scope="session")
def reference_table():
    return load_table()


@pytest.fixture(scope="session")
def reports_400():
    """analyze() for every prime below 400, shared by the slow suites."""
    primes = list(sympy.primerange(2, 400))
    return {r.p: r for r in analyze_many(A058231_CURVE, A058231_POINT, A058231_SEED, primes)}


@pytest.fixture
def record_criterion():
    def record(name: str, ok: bool) -> None:
        ACCEPTANCE_RESULTS[name] = ok
    return record


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for name, ok in sorted(ACCEPTANCE_RESULTS.items()):
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'}  {name}")
