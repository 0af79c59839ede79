from __future__ import annotations

import time

import pytest

from squaretiled import Origami, one_square_torus, quaternion_origami
from squaretiled.origami import from_key
from squaretiled.search import _enumerate_keys, run_survey

# outcome per acceptance criterion, filled in by the report hook below
_CRITERIA: dict[int, dict] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, title): acceptance criterion checked by the test")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is None:
        return
    if rep.when == "call" or (rep.when == "setup" and not rep.passed):
        number, title = marker.args
        entry = _CRITERIA.setdefault(number, {"title": title, "ok": True, "details": []})
        entry["ok"] = entry["ok"] and rep.passed
        entry["details"].extend(str(v) for k, v in rep.user_properties if k == "detail")


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_CRITERIA):
        entry = _CRITERIA[number]
        status = "PASS" if entry["ok"] else "FAIL"
        detail = f"  [{'; '.join(entry['details'])}]" if entry["details"] else ""
        terminalreporter.write_line(f"criterion {number:>2}: {status}  {entry['title']}{detail}")


# --------------------------------------------------------------------------
# Named surfaces

@pytest.fixture
def torus() -> Origami:
    return one_square_torus()


@pytest.fixture
def l3() -> Origami:
    """The L-shaped surface on three squares."""
    return Origami.from_cycles([(1, 2)], [(1, 3)], n=3)


@pytest.fixture
def o4() -> Origami:
    return Origami.from_cycles([(1, 2, 3)], [(1, 4)], n=4)


@pytest.fixture
def ew() -> Origami:
    return quaternion_origami()


@pytest.fixture
def cyl4() -> Origami:
    """Two rows of two squares forming a single 2x2 cylinder."""
    return Origami.from_cycles([(1, 2), (3, 4)], [(1, 3, 2, 4)], n=4)


# --------------------------------------------------------------------------
# Corpora

@pytest.fixture(scope="session")
def small_corpus() -> list[Origami]:
    """Every origami with at most 6 squares, one per isomorphism class, all genera."""
    out = []
    for n in range(1, 7):
        keys, _ = _enumerate_keys(n, 1)
        out.extend(from_key(k) for k in keys)
    return out


@pytest.fixture(scope="session")
def survey():
    """The full survey up to 8 squares and genus >= 2, with its wall time."""
    start = time.perf_counter()
    report = run_survey(8, 2)
    return report, time.perf_counter() - start
