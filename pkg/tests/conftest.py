from pathlib import Path

import pytest

from admitmatch.dsl import load_profile
from admitmatch.ingest import load_cohort, load_mapping
from admitmatch.model import Role

DATA = Path(__file__).resolve().parents[1] / "src" / "admitmatch" / "data"

# criterion -> (passed, detail), filled by test_acceptance
ACCEPTANCE_RESULTS = {}


@pytest.fixture
def data_dir():
    return DATA


@pytest.fixture
def textbox3():
    return load_profile(DATA / "textbox3.profile", Role.REQUIREMENT)


@pytest.fixture
def textbox4():
    return load_profile(DATA / "textbox4.profile", Role.SKILLS)


@pytest.fixture
def table1_mapping():
    return load_mapping(DATA / "table1_mapping.ini")


@pytest.fixture
def table1(table1_mapping):
    return load_cohort(DATA / "table1.csv", table1_mapping.id_column)


@pytest.fixture
def requisites(table1_mapping):
    return load_profile(table1_mapping.requirement_profile_path, Role.REQUIREMENT)


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for name in sorted(ACCEPTANCE_RESULTS, key=lambda k: (int(k.split(".")[0]), k)):
        passed, detail = ACCEPTANCE_RESULTS[name]
        terminalreporter.write_line(f"criterion {name}: {'PASS' if passed else 'FAIL'}  {detail}")
