import os
import time
import threading
from concurrent.futures import ProcessPoolExecutor, as_completed
from dataclasses import replace
from multiprocessing import Manager

from tqdm import tqdm

# Internal Modules
from console import ProgressMonitor
from extensions.cohen import cohen_factor
from fixtures.loader import check_id, load_fixture
from utils import SHOW_ACTIVITY, timed_checks
from verify import checks
from verify.reports import RunReport

"""
runner.py

Description:
    Runs the checks declared in fixture files, one job per (file, check).

Key Features:
    1. Multiprocessing: jobs run in a ProcessPoolExecutor bounded by MAX_WORKERS;
       with a single worker everything runs inline.
    2. Clean interrupts: Ctrl+C sets a shared stop event that idle workers honour.
    3. Determinism: reports are merged by (fixture_id, check_id) whatever the
       completion order, and every seeded choice uses the run seed.
    4. Failure isolation: workers return errors as strings instead of raising.
"""


def resolve_workers(total_jobs):
    """MAX_WORKERS when set to a positive integer, else the CPU count; clamped to [1, total_jobs]."""
    env_max = os.getenv("MAX_WORKERS")
    if env_max and env_max.isdigit() and int(env_max) > 0:
        max_workers = int(env_max)
    else:
        max_workers = os.cpu_count() or 1
    return max(1, min(total_jobs, max_workers))


def _sop(fixture, check, ring_name):
    if check.sop is None:
        return None
    return fixture.polynomials(check.sop, ring_name)


def execute(fixture, check, seed=0, e_max=None, t_max=None):
    """
    Runs one declared check against a loaded fixture.

    Clauses in the file win over the run-wide e_max / t_max.
    """
    e_max = check.emax if check.emax is not None else e_max
    t_max = check.tmax if check.tmax is not None else t_max
    kind = check.kind

    if kind in ("hk_sandwich", "adjoined_variable", "sop_estimate", "scalar_extension", "chi1"):
        quotient = fixture.rings[check.target].quotient
        ideal = fixture.ideal(check.on, check.target, check.pos) if check.on else None
        if kind == "hk_sandwich":
            if check.sop is not None:
                ideal = quotient.ideal(_sop(fixture, check, check.target))
            return checks.check_hk_sandwich(quotient, ideal, e_max)
        if kind == "adjoined_variable":
            return checks.check_adjoined_variable_identity(quotient, check.adjoin or 1, e_max)
        if kind == "sop_estimate":
            return checks.check_sop_estimate(quotient, _sop(fixture, check, check.target), ideal, seed)
        if kind == "scalar_extension":
            return checks.check_scalar_extension(quotient, check.degree or 2, e_max)
        return checks.check_chi1(quotient, _sop(fixture, check, check.target), seed)

    loaded = fixture.maps[check.target]
    local_map = loaded.local_map
    target_name = fixture_ring_name(fixture, local_map.target)
    if kind == "lech":
        return checks.check_lech(local_map)
    if kind == "edim":
        return checks.check_edim(local_map)
    if kind == "hk_chain":
        return checks.check_hk_chain(local_map, e_max)
    if kind == "ci_fiber":
        return checks.check_ci_fiber(local_map)
    if kind == "flatness":
        return checks.check_flatness(local_map, t_max, seed)
    if kind == "generator_growth":
        source_name = fixture_ring_name(fixture, local_map.source)
        ideal = fixture.ideal(check.on, source_name, check.pos) if check.on else None
        return checks.check_generator_growth(local_map, ideal)
    if kind == "mod_p":
        return checks.check_mod_p(loaded.presentation, check.primes, local_map.flat_tag, loaded.pattern)

    fact = cohen_factor(local_map, seed=seed)
    if kind == "cohen_structure":
        return checks.check_cohen_structure(fact)
    if kind == "embdim_bounds":
        return checks.check_embdim_bounds(local_map, fact)
    elements = _sop(fixture, check, target_name)
    if kind == "interchange":
        return checks.check_interchange(fact, elements, e_max, seed)
    return checks.check_chi1_vanishing(fact, elements, e_max, seed)


def fixture_ring_name(fixture, quotient):
    for name, loaded in fixture.rings.items():
        if loaded.quotient == quotient:
            return name
    raise KeyError(f"{quotient} is not declared in {fixture.fixture_id}")


class Fixture_runner:
    """
    Controller for a verification run over one or more fixture files.
    """
    def __init__(self, paths, seed=0, kinds=None, e_max=None, t_max=None, show_progress=True):
        """
        Loads every file up front so that parse and semantic errors surface
        before any worker starts.

        Args:
            paths (list[str]): Fixture files.
            seed (int): Run seed passed to every seeded search.
            kinds (set[str]): Only run checks of these kinds; None runs all.
            e_max (int): Default Frobenius exponent cap for checks without `emax`.
            t_max (int): Default probe depth for checks without `tmax`.
        """
        self.seed = seed
        self.e_max = e_max
        self.t_max = t_max
        self.show_progress = show_progress
        self.report = RunReport(seed)
        self.jobs = []
        for path in paths:
            fixture = load_fixture(str(path))
            for index, check in enumerate(fixture.checks):
                if kinds and check.kind not in kinds:
                    continue
                self.jobs.append((str(path), index))

    @staticmethod
    def run_check(args):
        """
        Worker function for a single declared check.
        Executed in a separate process via ProcessPoolExecutor.

        Args:
            args (tuple): (path, check_index, seed, e_max, t_max, stop_event).

        Returns:
            tuple: (fixture_id, check_id, report, error_message, seconds)
        """
        path, index, seed, e_max, t_max, stop_event = args

        # Guard clause: the global stop signal (Ctrl+C) is set
        if stop_event.is_set(): return None

        fixture = load_fixture(path)
        check = fixture.checks[index]
        ident = check_id(index, check)
        started = time.perf_counter()
        try:
            if SHOW_ACTIVITY:
                tqdm.write(f"🚀 [Start] {fixture.fixture_id} {ident}")
            report = execute(fixture, check, seed, e_max, t_max)
            report = replace(report, fixture_id=fixture.fixture_id, check_id=ident)
            return (fixture.fixture_id, ident, report, None, time.perf_counter() - started)
        except Exception as e:
            # Errors travel back as strings so one bad check cannot take down the pool
            return (fixture.fixture_id, ident, None, f"{type(e).__name__}: {e}", time.perf_counter() - started)

    def _collect(self, result, monitor):
        if result is None:
            return
        fixture_id, ident, report, error, seconds = result
        self.report.timing[f"{fixture_id}/{ident}"] = round(seconds, 3)
        if error:
            self.report.add_error(fixture_id, ident, error)
            monitor.update(monitor.current + 1)
            monitor.log(f"❌ {fixture_id} {ident}: {error}")
            return
        self.report.add(report)
        monitor.record(report)

    @timed_checks
    def run(self):
        """
        Runs every job and returns the merged RunReport.
        """
        total_jobs = len(self.jobs)
        max_workers = resolve_workers(total_jobs)
        monitor = ProgressMonitor(total_jobs, label="VERIFYING", enabled=self.show_progress)
        print(f"[INFO] {total_jobs} checks, {max_workers} worker process(es), seed {self.seed}")
        monitor.start()

        if max_workers == 1:
            stop_event = threading.Event()
            try:
                for path, index in self.jobs:
                    self._collect(self.run_check((path, index, self.seed, self.e_max, self.t_max, stop_event)), monitor)
            except KeyboardInterrupt:
                monitor.stop()
                print("\n\n🛑 STOPPING! Remaining checks skipped.")
        else:
            with Manager() as manager:
                stop_event = manager.Event()
                futures = []
                with ProcessPoolExecutor(max_workers=max_workers) as executor:
                    try:
                        for path, index in self.jobs:
                            futures.append(executor.submit(
                                self.run_check,
                                (path, index, self.seed, self.e_max, self.t_max, stop_event)
                            ))
                        for future in as_completed(futures):
                            self._collect(future.result(), monitor)
                    except KeyboardInterrupt:
                        monitor.stop()
                        print("\n\n🛑 STOPPING! Terminating worker processes...")
                        stop_event.set()
                        for f in futures: f.cancel()

        if monitor.running:
            monitor.stop()
        return self.report
