from pathlib import Path

import pytest

from evokit.field import FieldSpec

FIXTURE_DIR = Path(__file__).resolve().parent.parent / "fixtures"

Q = FieldSpec.rationals()
GF3, GF5, GF7, GF11 = (FieldSpec.prime(p) for p in (3, 5, 7, 11))

# criterion number -> (description, passed?)
ACCEPTANCE_RESULTS: dict[int, tuple[str, bool]] = {}


@pytest.fixture
def fixture_dir():
    return FIXTURE_DIR


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(ACCEPTANCE_RESULTS):
        desc, ok = ACCEPTANCE_RESULTS[k]
        terminalreporter.write_line(f"criterion {k}: {'PASS' if ok else 'FAIL'}  {desc}")
