import json
from pathlib import Path

import pytest

from novikov_configs import load_fixture

DATA = Path(__file__).resolve().parent.parent / "data"


@pytest.fixture(scope="session")
def data_dir() -> Path:
    return DATA


@pytest.fixture(scope="session")
def fixtures():
    return {name: load_fixture(name) for name in
            ("FIX-A", "FIX-B", "FIX-C", "FIX-D", "FIX-E", "FIX-F")}


def doc(name: str) -> dict:
    return json.loads((DATA / name).read_text())


def pytest_terminal_summary(terminalreporter):
    from test_acceptance import LINES
    if LINES:
        terminalreporter.section("acceptance criteria")
        for line in LINES:
            terminalreporter.write_line(line)
