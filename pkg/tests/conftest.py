import sys
from pathlib import Path

import pytest

sys.setrecursionlimit(max(sys.getrecursionlimit(), 20_000))

ROOT = Path(__file__).resolve().parent.parent
CORPUS = ROOT / "corpus"
FIXTURES = CORPUS / "fixtures"
GOLDEN = Path(__file__).resolve().parent / "golden"


@pytest.fixture
def corpus_dir():
    return CORPUS


@pytest.fixture
def fixtures_dir():
    return FIXTURES


_VERDICTS: dict[int, tuple[bool, str]] = {}


def record(criterion: int, ok: bool, detail: str) -> None:
    line = f"criterion {criterion}: {'PASS' if ok else 'FAIL'}  {detail}"
    print(line)
    _VERDICTS[criterion] = (ok, line)


def verdicts() -> dict[int, tuple[bool, str]]:
    return _VERDICTS


def pytest_terminal_summary(terminalreporter):
    if not _VERDICTS:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(_VERDICTS):
        terminalreporter.write_line(_VERDICTS[n][1])
