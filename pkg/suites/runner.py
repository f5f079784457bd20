"""Concurrent runner for the randomized property suites."""

from __future__ import annotations

import logging
import time
from collections.abc import Callable
from concurrent.futures import ProcessPoolExecutor, as_completed
from dataclasses import dataclass, field

from ncat_engine.config import load_settings
from ncat_engine.search import EnumerationLimitError

logger = logging.getLogger(__name__)


class UnknownSuiteError(Exception):
    """Raised when a suite name is not registered."""

    pass


@dataclass(frozen=True)
class Outcome:
    """What a single trial function reports."""

    passed: bool
    detail: str = ""
    skipped: bool = False


@dataclass
class TrialResult:
    """Result of one trial of a suite."""

    suite: str
    index: int
    seed: int
    passed: bool
    detail: str
    skipped: bool
    duration_ms: float

    def to_dict(self) -> dict[str, object]:
        # Durations are left out so that reports of the same run are byte-identical.
        return {
            "index": self.index,
            "seed": self.seed,
            "passed": self.passed,
            "skipped": self.skipped,
            "detail": self.detail,
        }


@dataclass
class SuiteProgress:
    """Progress information for a suite run."""

    completed: int
    total: int
    elapsed_seconds: float
    failures: int

    @property
    def completion_rate(self) -> float:
        return self.completed / self.total if self.total > 0 else 0.0

    @property
    def trials_per_second(self) -> float:
        return self.completed / self.elapsed_seconds if self.elapsed_seconds > 0 else 0.0


@dataclass
class SuiteReport:
    """All trials of one suite run, ordered by trial index."""

    suite: str
    n: int
    size: int
    seed: int
    results: list[TrialResult] = field(default_factory=list)
    elapsed_seconds: float = 0.0

    @property
    def passed(self) -> bool:
        return all(result.passed for result in self.results)

    def failures(self) -> list[TrialResult]:
        return [result for result in self.results if not result.passed]

    @property
    def skipped(self) -> int:
        return sum(1 for result in self.results if result.skipped)

    def to_dict(self) -> dict[str, object]:
        return {
            "suite": self.suite,
            "n": self.n,
            "size": self.size,
            "seed": self.seed,
            "passed": self.passed,
            "trials": [result.to_dict() for result in self.results],
        }


def _run_trial(suite: str, n: int, size: int, seed: int, index: int) -> TrialResult:
    """Run one trial in a worker process.

    This is a standalone function for pickling compatibility.
    """
    from suites.properties import SUITES

    trial = SUITES[suite]
    start = time.perf_counter()
    try:
        outcome = trial(n, size, seed)
    except EnumerationLimitError as e:
        outcome = Outcome(True, f"skipped: {e}", skipped=True)
    except Exception as e:
        outcome = Outcome(False, f"{type(e).__name__}: {e}")
    duration_ms = (time.perf_counter() - start) * 1000
    return TrialResult(
        suite=suite,
        index=index,
        seed=seed,
        passed=outcome.passed,
        detail=outcome.detail,
        skipped=outcome.skipped,
        duration_ms=duration_ms,
    )


def run_suite(
    suite: str,
    n: int,
    size: int,
    seed: int,
    trials: int,
    workers: int | None = None,
    callback: Callable[[TrialResult, SuiteProgress], None] | None = None,
) -> SuiteReport:
    """Run ``trials`` trials of a suite; trial ``k`` uses seed ``seed + k``.

    Args:
        suite: Registered suite name.
        n: Dimension of the generated n-categories.
        size: Bound on non-identity cells per level of generated instances.
        seed: Seed of trial 0.
        trials: Number of trials.
        workers: Worker processes. Defaults to the configured count; 1 runs in-process.
        callback: Called after each trial completes, in completion order.

    Returns:
        The report, with results sorted by trial index.

    Raises:
        UnknownSuiteError: If ``suite`` is not registered.
    """
    from suites.properties import SUITES

    if suite not in SUITES:
        raise UnknownSuiteError(f"unknown suite {suite!r}; choose from {', '.join(SUITES)}")
    workers = workers or load_settings().workers
    report = SuiteReport(suite=suite, n=n, size=size, seed=seed)
    start_time = time.perf_counter()
    failures = 0

    def record(result: TrialResult) -> None:
        nonlocal failures
        report.results.append(result)
        if not result.passed:
            failures += 1
            logger.warning(f"{suite} trial {result.index} (seed {result.seed}): {result.detail}")
        if callback:
            progress = SuiteProgress(
                completed=len(report.results),
                total=trials,
                elapsed_seconds=time.perf_counter() - start_time,
                failures=failures,
            )
            callback(result, progress)

    if workers == 1:
        for i in range(trials):
            record(_run_trial(suite, n, size, seed + i, i))
    else:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            futures = {
                pool.submit(_run_trial, suite, n, size, seed + i, i): i for i in range(trials)
            }
            for future in as_completed(futures):
                record(future.result())

    report.results.sort(key=lambda result: result.index)
    report.elapsed_seconds = time.perf_counter() - start_time
    logger.info(
        f"{suite}: {trials - failures}/{trials} trials passed "
        f"({report.skipped} skipped) in {report.elapsed_seconds:.1f}s"
    )
    return report
