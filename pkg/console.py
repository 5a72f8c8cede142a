import sys
import time
import threading

from verify.reports import MARKERS

# Constants
SPINNER = ['|', '/', '-', '\\']
PROGRESS_BAR_LENGTH = 40


class ProgressMonitor:
    """
    A threaded progress bar for corpus runs. A background thread keeps the
    spinner moving between completions; verdict lines are printed above the bar.
    """
    def __init__(self, total, label="PROCESSING", enabled=True):
        self.total = total if total > 0 else 1
        self.current = 0
        self.label = label
        self.enabled = enabled
        self.running = False
        self.lock = threading.Lock()
        self.thread = None
        self.tallies = {verdict: 0 for verdict in MARKERS}
        self._tick = 0

    def start(self):
        """Starts the background animation thread."""
        if not self.enabled:
            return
        self.running = True
        self.thread = threading.Thread(target=self._animate, daemon=True)
        self.thread.start()

    def stop(self):
        """Stops the animation and leaves the final bar on its own line."""
        was_running = self.running
        self.running = False
        if self.thread:
            self.thread.join()
            self.thread = None
        if was_running:
            with self.lock:
                self._draw()
            sys.stdout.write("\n")
            sys.stdout.flush()

    def update(self, count):
        self.current = count

    def record(self, report):
        """Counts a finished check and logs it with its verdict marker."""
        self.tallies[report.verdict] += 1
        self.current += 1
        self.log(f"{MARKERS[report.verdict]} {report.fixture_id} {report.check_id}: {report.verdict}")

    def log(self, message):
        """Prints a message above the bar (or plainly when the bar is disabled)."""
        if not self.enabled:
            print(message)
            return
        with self.lock:
            sys.stdout.write("\r\033[K")
            print(message)
            self._draw()

    def _draw(self):
        done = min(self.current, self.total)
        filled = PROGRESS_BAR_LENGTH * done // self.total
        bar = '█' * filled + '░' * (PROGRESS_BAR_LENGTH - filled)
        icon = SPINNER[self._tick % 4]
        counts = " ".join(f"{MARKERS[v]}{n}" for v, n in self.tallies.items())
        sys.stdout.write(f"\r\033[96m{icon} {self.label} [{bar}] ({done}/{self.total}) {counts}\033[0m")
        sys.stdout.flush()

    def _animate(self):
        while self.running:
            with self.lock:
                self._draw()
            time.sleep(0.1)
            self._tick += 1
