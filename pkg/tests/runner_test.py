import threading
from unittest.mock import MagicMock

import pytest

from fixtures.loader import load_fixture
from utils import format_duration
from verify import runner
from verify.runner import Fixture_runner, execute, resolve_workers

FIXTURE = """
field F(2);
ring R = F[x];
ring S = F[x, y] / (y^2 - x^3);
map f : R -> S sends x -> x flat monic;
check lech f;
check edim f;
check hk_sandwich S with sop (x) emax 2;
"""

BROKEN = """
field F(3);
ring R = F[x, y];
ring S = F[x, y, z] / (z^2, x*z, y*z);
map g : R -> S sends x -> x, y -> y;
check lech g;
check flatness g;
"""


@pytest.fixture
def fixture_file(tmp_path):
    path = tmp_path / "cusp.lk"
    path.write_text(FIXTURE, encoding="utf-8")
    return str(path)


@pytest.fixture
def broken_file(tmp_path):
    path = tmp_path / "broken.lk"
    path.write_text(BROKEN, encoding="utf-8")
    return str(path)


@pytest.fixture
def inline(monkeypatch):
    """Forces the single-worker path."""
    monkeypatch.setenv("MAX_WORKERS", "1")


@pytest.fixture
def mock_pool(mocker):
    """Replaces the process pool and manager with synchronous stand-ins."""
    executor = MagicMock()

    def submit(fn, args):
        future = MagicMock()
        future.result.return_value = fn(args)
        return future

    executor.submit.side_effect = submit
    pool = mocker.patch.object(runner, "ProcessPoolExecutor")
    pool.return_value.__enter__.return_value = executor
    manager = mocker.patch.object(runner, "Manager")
    manager.return_value.__enter__.return_value.Event.side_effect = threading.Event
    mocker.patch.object(runner, "as_completed", side_effect=lambda futures: list(futures))
    return executor


# --- Worker resolution ---

def test_resolve_workers_from_env(monkeypatch):
    """MAX_WORKERS is honoured and clamped to the job count."""
    monkeypatch.setenv("MAX_WORKERS", "3")
    assert resolve_workers(10) == 3
    assert resolve_workers(2) == 2
    assert resolve_workers(0) == 1


def test_resolve_workers_fallback(monkeypatch):
    """A malformed value falls back to the CPU count."""
    monkeypatch.setenv("MAX_WORKERS", "many")
    monkeypatch.setattr(runner.os, "cpu_count", lambda: 6)
    assert resolve_workers(100) == 6


# --- Single checks ---

def test_execute_dispatch(fixture_file):
    """execute runs the declared kind against the declared target."""
    fixture = load_fixture(fixture_file)
    lech = execute(fixture, fixture.checks[0])
    sandwich = execute(fixture, fixture.checks[2])
    assert (lech.kind, lech.verdict) == ("lech", "pass")
    assert (sandwich.kind, sandwich.verdict) == ("hk_sandwich", "pass")
    assert sandwich.tables["estimates"] == {1: 2, 2: 2}


def test_run_check_honours_stop_event(fixture_file):
    """A set stop event skips the job."""
    stop = threading.Event()
    stop.set()
    assert Fixture_runner.run_check((fixture_file, 0, 0, None, None, stop)) is None


def test_run_check_reports_errors_as_strings(broken_file):
    """Exceptions come back as messages instead of killing the worker."""
    fixture_id, check_id, report, error, seconds = Fixture_runner.run_check(
        (broken_file, 0, 0, None, None, threading.Event()))
    assert (fixture_id, check_id) == ("broken", "00-lech-g")
    assert report is None
    assert error.startswith("CheckPreconditionError")
    assert seconds >= 0


@pytest.mark.parametrize("seconds, text", [(3.214, "3.21s"), (60, "1m 0s"), (125.9, "2m 5s")])
def test_format_duration(seconds, text):
    """Run footers switch to minutes past a minute."""
    assert format_duration(seconds) == text


# --- Whole runs ---

def test_inline_run(fixture_file, inline, capsys):
    """Every check of the cusp fixture passes."""
    report = Fixture_runner([fixture_file], show_progress=False).run()
    assert report.counts() == {"pass": 3, "fail": 0, "inconclusive": 0}
    assert report.exit_code() == 0
    assert [r.check_id for r in report.sorted_reports()] == [
        "00-lech-f", "01-edim-f", "02-hk_sandwich-S",
    ]
    assert "total" in report.timing
    assert "3 check(s) finished in" in capsys.readouterr().out


def test_kind_filter(fixture_file, inline):
    """Only the requested kinds are queued."""
    run = Fixture_runner([fixture_file], kinds={"edim"}, show_progress=False)
    assert run.jobs == [(fixture_file, 1)]


def test_errors_set_exit_code(broken_file, inline):
    """A precondition error is recorded and the run exits with 3."""
    report = Fixture_runner([broken_file], show_progress=False).run()
    assert report.counts()["pass"] == 1
    assert report.errors[0]["check_id"] == "00-lech-g"
    assert report.exit_code() == 3


def test_pool_run_matches_inline(fixture_file, monkeypatch, mock_pool):
    """The process-pool path submits every job and merges to the same report."""
    monkeypatch.setenv("MAX_WORKERS", "2")
    pooled = Fixture_runner([fixture_file], seed=5, show_progress=False).run()
    assert mock_pool.submit.call_count == 3

    monkeypatch.setenv("MAX_WORKERS", "1")
    inline_report = Fixture_runner([fixture_file], seed=5, show_progress=False).run()
    assert pooled.to_json(include_timing=False) == inline_report.to_json(include_timing=False)
