"""Suite execution and JSON-lines reporting."""
from __future__ import annotations

import json
import logging
import math
import time
import zlib
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Any, TextIO

import numpy as np

from jordan_wh.algebra import AlgebraDescriptor
from jordan_wh.checks import CHECKS, Check, checks_for
from jordan_wh.codec import parse_descriptor
from jordan_wh.config import RunConfig
from jordan_wh.errors import JordanError, Rejected, RetryExhausted

log = logging.getLogger(__name__)

MAX_RESAMPLES = 100
AXB_LABEL = "ax+b"


@dataclass(frozen=True)
class CheckReport:
    check_id: str
    algebra: str
    seed: int
    samples_run: int
    samples_rejected: int
    max_residual: float
    tolerance: float
    passed: bool
    wall_time_ms: float

    def to_json(self) -> dict[str, Any]:
        return {
            "check_id": self.check_id,
            "algebra": self.algebra,
            "seed": self.seed,
            "samples_run": self.samples_run,
            "samples_rejected": self.samples_rejected,
            "max_residual": self.max_residual if math.isfinite(self.max_residual) else None,
            "tolerance": self.tolerance,
            "pass": self.passed,
            "wall_time_ms": self.wall_time_ms,
        }


def sample_rng(seed: int, check_id: str, index: int) -> np.random.Generator:
    """Sample k of check c draws from default_rng([seed, crc32(c), k]) whatever the worker layout."""
    return np.random.default_rng([seed, zlib.crc32(check_id.encode("utf-8")), index])


def _run_sample(check: Check, alg: AlgebraDescriptor, seed: int, index: int) -> tuple[float, int]:
    check_id, algebra = check.check_id, str(alg)
    rng = sample_rng(seed, check_id, index)
    for rejected in range(MAX_RESAMPLES + 1):
        try:
            residual = float(check.sample(alg, rng))
        except Rejected:
            continue
        except JordanError as exc:
            log.warning("%s sample %d on %s failed: %s: %s", check_id, index, algebra, type(exc).__name__, exc)
            return math.inf, rejected
        return (residual if not math.isnan(residual) else math.inf), rejected
    exc = RetryExhausted(f"{MAX_RESAMPLES} resamples rejected")
    log.warning("%s sample %d on %s failed: %s", check_id, index, algebra, exc)
    return math.inf, MAX_RESAMPLES + 1


def run_check(check_id: str, algebra: str, seed: int, samples: int, tolerance: float | None = None) -> CheckReport:
    check = CHECKS[check_id]
    tol = check.tolerance if tolerance is None else tolerance
    label = AXB_LABEL if check.algebra_free else algebra
    alg = parse_descriptor(algebra)
    start = time.perf_counter()
    worst = 0.0
    rejected = 0
    for index in range(samples):
        residual, retries = _run_sample(check, alg, seed, index)
        worst = max(worst, residual)
        rejected += retries
    elapsed = (time.perf_counter() - start) * 1000.0
    report = CheckReport(
        check_id=check_id,
        algebra=label,
        seed=seed,
        samples_run=samples,
        samples_rejected=rejected,
        max_residual=worst,
        tolerance=tol,
        passed=worst <= tol,
        wall_time_ms=round(elapsed, 3),
    )
    log.info(
        "%s on %s: max residual %.3e (tol %.1e), %d rejected, %s",
        check_id,
        label,
        worst,
        tol,
        rejected,
        "pass" if report.passed else "FAIL",
    )
    return report


def run_suite(cfg: RunConfig) -> list[CheckReport]:
    selected = checks_for(list(cfg.suites))
    jobs = [(c.check_id, cfg.algebra, cfg.seed, cfg.samples, cfg.tolerance_for(c.check_id)) for c in selected]
    log.info("running %d checks on %s with seed %d", len(jobs), cfg.algebra, cfg.seed)
    if cfg.jobs <= 1:
        return [run_check(*job) for job in jobs]
    with ProcessPoolExecutor(max_workers=cfg.jobs) as pool:
        futures = [pool.submit(run_check, *job) for job in jobs]
        return [f.result() for f in futures]


def summary_record(reports: list[CheckReport]) -> dict[str, Any]:
    failed = [r.check_id for r in reports if not r.passed]
    return {"summary": {"checks": len(reports), "failed": failed, "pass": not failed}}


def write_reports(reports: list[CheckReport], stream: TextIO) -> None:
    for report in reports:
        stream.write(json.dumps(report.to_json()) + "\n")
    stream.write(json.dumps(summary_record(reports)) + "\n")


def exit_status(reports: list[CheckReport]) -> int:
    return 0 if all(r.passed for r in reports) else 1
