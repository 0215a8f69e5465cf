import json
import pathlib

import pytest

DATA = pathlib.Path(__file__).resolve().parent.parent / "data"


def load(name: str) -> dict:
    return json.loads((DATA / name).read_text())


@pytest.fixture
def data_dir() -> pathlib.Path:
    return DATA


# PASS/FAIL lines from the acceptance suite, repeated in the terminal summary
ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[2].rstrip(":"))):
            terminalreporter.write_line(line)
