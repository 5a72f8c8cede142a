from console import ProgressMonitor
from verify.reports import CheckReport


def test_disabled_monitor_prints_plain_lines(capsys):
    """Without a bar, verdict lines go straight to stdout and tallies still count."""
    monitor = ProgressMonitor(2, enabled=False)
    monitor.start()
    monitor.record(CheckReport("lech", "pass", check_id="00-lech-f", fixture_id="cusp"))
    monitor.record(CheckReport("edim", "fail", check_id="01-edim-f", fixture_id="cusp"))
    monitor.stop()
    out = capsys.readouterr().out
    assert "cusp 00-lech-f: pass" in out
    assert "cusp 01-edim-f: fail" in out
    assert monitor.current == 2
    assert monitor.tallies["pass"] == 1
    assert monitor.tallies["fail"] == 1
    assert not monitor.running


def test_zero_total_is_clamped():
    """An empty run still draws a bar of total 1."""
    assert ProgressMonitor(0).total == 1
