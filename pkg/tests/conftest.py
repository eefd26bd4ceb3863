import os

import pytest

from omegalab import qform as qf
from omegalab import rootdata as rd

GOLDEN_DIR = os.path.join(os.path.dirname(__file__), "golden")

# criterion number -> (label, passed or None, detail)
_ACCEPTANCE = {}


def record_acceptance(number, label, passed, detail=""):
    _ACCEPTANCE[number] = (label, bool(passed), detail)


@pytest.fixture
def acceptance():
    return record_acceptance


@pytest.fixture(autouse=True)
def _isolated_cache(tmp_path, monkeypatch):
    # never touch the user's cache from tests
    monkeypatch.setenv("OMEGALAB_CACHE", str(tmp_path / "cache"))


def cd(name):
    return rd.cartan_datum(name)


def spec(name, order, qz=None):
    return qf.make_spec(rd.cartan_datum(name), order, qz)


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    tr = terminalreporter
    tr.section("acceptance criteria")
    for k in sorted(_ACCEPTANCE):
        label, ok, detail = _ACCEPTANCE[k]
        line = f"ACCEPTANCE {k:2d} {'PASS' if ok else 'FAIL'}  {label}"
        if detail:
            line += f"  ({detail})"
        tr.write_line(line)
