from __future__ import annotations

import logging
import os
from dataclasses import dataclass, field
from pathlib import Path
from typing import Mapping

from dotenv import dotenv_values, load_dotenv

from jordan_wh.algebra import AlgebraDescriptor
from jordan_wh.checks import CHECKS, suites
from jordan_wh.codec import parse_descriptor
from jordan_wh.errors import ConfigError, ParseError


load_dotenv()

DEFAULTS: dict[str, str | None] = {
    "algebra": "sym:3",
    "seed": "42",
    "samples": "1000",
    "jobs": "1",
    "suites": None,
    "tol": "",
    "out": "",
    "log_level": "WARNING",
}

ENV_VARS = {
    "algebra": "JWH_ALGEBRA",
    "seed": "JWH_SEED",
    "samples": "JWH_SAMPLES",
    "jobs": "JWH_JOBS",
    "suites": "JWH_SUITES",
    "tol": "JWH_TOL",
    "out": "JWH_OUT",
    "log_level": "JWH_LOG_LEVEL",
}


@dataclass(frozen=True)
class RunConfig:
    algebra: str
    seed: int
    samples: int
    suites: tuple[str, ...]
    tolerances: dict[str, float] = field(default_factory=dict)
    out: str | None = None
    jobs: int = 1
    log_level: str = "WARNING"

    def __post_init__(self) -> None:
        if self.samples < 1:
            raise ConfigError("samples must be >= 1")
        if self.jobs < 1:
            raise ConfigError("jobs must be >= 1")
        if not 0 <= self.seed < 2**64:
            raise ConfigError("seed must be a 64-bit unsigned integer")
        if not self.suites:
            raise ConfigError("no suites selected")
        known = suites()
        unknown = [s for s in self.suites if s not in known]
        if unknown:
            raise ConfigError(f"unknown suites: {', '.join(unknown)} (known: {', '.join(known)})")
        for check_id in self.tolerances:
            if check_id not in CHECKS:
                raise ConfigError(f"unknown check in tolerance override: {check_id!r}")

    @property
    def descriptor(self) -> AlgebraDescriptor:
        return parse_descriptor(self.algebra)

    def tolerance_for(self, check_id: str) -> float:
        return self.tolerances.get(check_id, CHECKS[check_id].tolerance)


def _read_file(path: str) -> dict[str, str]:
    if not Path(path).is_file():
        raise ConfigError(f"config file not found: {path}")
    values = {}
    for key, value in dotenv_values(path).items():
        key = key.strip().lower().replace("-", "_")
        if key not in DEFAULTS:
            raise ConfigError(f"unknown config key {key!r} in {path}")
        values[key] = (value or "").strip()
    return values


def _parse_int(name: str, raw: str) -> int:
    try:
        return int(raw)
    except ValueError as exc:
        raise ConfigError(f"{name} must be an integer, got {raw!r}") from exc


def _split(raw: str) -> list[str]:
    return [part.strip() for part in raw.split(",") if part.strip()]


def parse_tolerances(raw: str) -> dict[str, float]:
    tolerances: dict[str, float] = {}
    for item in _split(raw):
        check_id, sep, value = item.partition("=")
        check_id = check_id.strip()
        if not sep:
            raise ConfigError(f"tolerance override must look like check=value, got {item!r}")
        if check_id not in CHECKS:
            raise ConfigError(f"unknown check in tolerance override: {check_id!r}")
        try:
            tol = float(value)
        except ValueError as exc:
            raise ConfigError(f"tolerance for {check_id} is not a number: {value!r}") from exc
        if not tol >= 0.0:
            raise ConfigError(f"tolerance for {check_id} must be >= 0")
        tolerances[check_id] = tol
    return tolerances


def load_run_config(
    overrides: Mapping[str, str | None] | None = None,
    config_path: str | None = None,
) -> RunConfig:
    """Defaults, then JWH_* environment variables, then the config file, then overrides."""
    values = dict(DEFAULTS)
    for key, var in ENV_VARS.items():
        raw = os.getenv(var, "").strip()
        if raw:
            values[key] = raw
    if config_path:
        values.update(_read_file(config_path))
    for key, raw in (overrides or {}).items():
        if raw is not None:
            values[key] = raw.strip()

    try:
        parse_descriptor(values["algebra"])
    except ParseError as exc:
        raise ConfigError(f"bad algebra descriptor {values['algebra']!r}: {exc}") from exc

    # unset means every suite; an explicit empty list is an error
    if values["suites"] is None:
        chosen = tuple(suites())
    else:
        chosen = tuple(_split(values["suites"]))
        if not chosen:
            raise ConfigError("empty suite list; leave suites unset to run every suite")

    log_level = values["log_level"].upper()
    if not isinstance(logging.getLevelName(log_level), int):
        raise ConfigError(f"unknown log level {values['log_level']!r}")

    return RunConfig(
        algebra=values["algebra"],
        seed=_parse_int("seed", values["seed"]),
        samples=_parse_int("samples", values["samples"]),
        suites=chosen,
        tolerances=parse_tolerances(values["tol"]),
        out=values["out"] or None,
        jobs=_parse_int("jobs", values["jobs"]),
        log_level=log_level,
    )
