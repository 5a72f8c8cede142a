import os
import time
from functools import wraps

from dotenv import load_dotenv, find_dotenv
from tqdm import tqdm

# Load caps and switches from a local .env before any module reads them
load_dotenv(find_dotenv(usecwd=True))

# Whether to print per-computation activity lines. Default off so progress bars stay clean;
# enable with SHOW_ACTIVITY=1.
SHOW_ACTIVITY = os.getenv("SHOW_ACTIVITY", "0") == "1"


def env_int(name, default):
    """
    Reads a non-negative integer setting from the environment.

    Args:
        name (str): Environment variable name, e.g. "T_CAP".
        default (int): Value used when the variable is unset or malformed.

    Returns:
        int: The configured value.
    """
    raw = os.getenv(name)
    if raw and raw.strip().isdigit():
        return int(raw.strip())
    if raw:
        print(f"⚠️ Warning: ignoring {name}={raw!r} (expected a non-negative integer). Using {default}.")
    return default


def activity(message):
    """Prints a worker activity line above any running progress bar when SHOW_ACTIVITY is on."""
    if SHOW_ACTIVITY:
        tqdm.write(message)


def format_duration(seconds):
    """Renders a wall time as "2m 5s" past a minute, else "3.21s"."""
    if seconds >= 60:
        return f"{int(seconds // 60)}m {int(seconds % 60)}s"
    return f"{seconds:.2f}s"


def timed_checks(func):
    """
    Decorator for a check run: stores the wall time under timing["total"] of the
    returned report and prints how many checks it covered.
    """
    @wraps(func)
    def wrapper(*args, **kwargs):
        started = time.perf_counter()
        report = func(*args, **kwargs)
        elapsed = time.perf_counter() - started
        report.timing["total"] = round(elapsed, 3)
        checks = len(report.timing) - 1
        print(f"\n⏱️  {checks} check(s) finished in {format_duration(elapsed)}")
        return report
    return wrapper
