"""Randomized property suites and their concurrent runner."""

from suites.properties import SUITES, SuiteTrial
from suites.runner import (
    Outcome,
    SuiteProgress,
    SuiteReport,
    TrialResult,
    UnknownSuiteError,
    run_suite,
)

__all__ = [
    "SUITES",
    "Outcome",
    "SuiteProgress",
    "SuiteReport",
    "SuiteTrial",
    "TrialResult",
    "UnknownSuiteError",
    "run_suite",
]
