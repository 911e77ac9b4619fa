from pathlib import Path

import pytest
from hypothesis import settings

from bugforge.ingest import discover_files, load_source_file
from bugforge.mutators.catalog import operators_for
from bugforge.mutators.inject import inject_file

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")

FIXTURES = Path(__file__).parent / "fixtures"
CORPUS = FIXTURES / "corpus"
TYPES_FIXTURE = FIXTURES / "types.py"


@pytest.fixture(scope="session")
def types_file():
    return load_source_file(TYPES_FIXTURE, repo="realtime-demo", relative_path="types.py")


@pytest.fixture(scope="session")
def corpus_files():
    return discover_files(CORPUS)


@pytest.fixture(scope="session")
def corpus_instances(corpus_files):
    out = []
    for f in corpus_files:
        out.extend(inject_file(f, operators_for(), 5, 0))
    return out


ACCEPTANCE: dict[int, tuple[bool, str]] = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(ACCEPTANCE):
        ok, detail = ACCEPTANCE[n]
        terminalreporter.write_line(f"[{'PASS' if ok else 'FAIL'}] criterion {n}: {detail}")
