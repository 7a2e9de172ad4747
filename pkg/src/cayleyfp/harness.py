"""Seeded Monte-Carlo experiments over random Cayley sum graphs.

Trial ``i`` draws its set from ``split_seed(master_seed, i)``, so any trial
can be rerun alone.  Trials run on a thread pool (the solver kernel releases
the GIL) and rows reach the CSV strictly in trial order; a row finished early
waits in a buffer until its predecessors are written.

With ``timing`` off the ``micros`` column is 0 and, as long as no time budget
cuts a search short, the CSV is a pure function of the configuration.
"""

from __future__ import annotations

import csv
import io
import json
import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field, fields
from pathlib import Path
from typing import Callable, Optional, TextIO

import numpy as np

from .bounds import BoundParams, bound_report, expected_alpha_gnp
from .cayley import independence_number, is_independent
from .errors import ParameterError, RefusalError
from .fingerprint import fingerprint_pipeline
from .freiman import check_dimension_vs_doubling
from .primes import compositeness_witness
from .rng import MASK64, split_seed, uniform53
from .zn import ZnSet, sample_p_random

SCHEMA = 1
MODES = ("alpha", "dimension", "fingerprint", "bounds")
SEED_ENV = "CAYLEYFP_SEED"

CSV_HEADERS = {
    "alpha": ("trial", "seed", "set_size", "alpha", "nodes", "micros", "ratio"),
    "dimension": ("trial", "seed", "set_size", "dimension", "doubling", "holds"),
    "fingerprint": ("trial", "seed", "set_size", "achieved", "target", "ratio"),
    "bounds": ("sum", "index", "log_term"),
}


def _parse_set(text: str) -> tuple[int, ...]:
    text = text.strip()
    if not text:
        return ()
    return tuple(int(x) for x in text.split(","))


def _parse_bool(text: str) -> bool:
    low = text.strip().lower()
    if low in ("1", "true", "yes", "on"):
        return True
    if low in ("0", "false", "no", "off"):
        return False
    raise ValueError(f"not a boolean: {text!r}")


@dataclass(frozen=True)
class ExperimentConfig:
    n: int
    p: float = 0.5
    trials: int = 1
    master_seed: int = 0
    time_budget: Optional[float] = None
    node_budget: Optional[int] = None
    mode: str = "alpha"
    out: Optional[str] = None
    threads: int = field(default_factory=lambda: os.cpu_count() or 1)
    timing: bool = False
    fixed_set: Optional[tuple[int, ...]] = None
    set_size: int = 8
    a: float = 0.1
    delta: float = 0.1

    def __post_init__(self):
        if self.mode not in MODES:
            raise ParameterError(f"mode must be one of {', '.join(MODES)}, got {self.mode!r}")
        if self.trials < 1:
            raise ParameterError("trials must be at least 1")
        if self.threads < 1:
            raise ParameterError("threads must be at least 1")
        if not 0 < self.p < 1:
            raise ParameterError(f"p must lie in (0, 1), got {self.p}")
        if self.time_budget is not None and self.time_budget <= 0:
            raise ParameterError("time_budget must be positive")
        if self.node_budget is not None and self.node_budget < 1:
            raise ParameterError("node_budget must be positive")
        if self.mode in ("dimension", "fingerprint") and not 1 <= self.set_size <= self.n:
            raise ParameterError("set_size must lie in [1, n]")
        object.__setattr__(self, "master_seed", self.master_seed & MASK64)
        witness = compositeness_witness(self.n)
        if witness is not None:
            raise RefusalError(f"n = {self.n} is not prime (Miller-Rabin witness {witness})")

    @classmethod
    def parsers(cls) -> dict[str, Callable[[str], object]]:
        return {
            "n": int,
            "p": float,
            "trials": int,
            "master_seed": lambda s: int(s, 0),
            "time_budget": float,
            "node_budget": int,
            "mode": str.strip,
            "out": str.strip,
            "threads": int,
            "timing": _parse_bool,
            "fixed_set": _parse_set,
            "set_size": int,
            "a": float,
            "delta": float,
        }

    @classmethod
    def from_mapping(cls, values: dict[str, str], overrides: Optional[dict] = None) -> "ExperimentConfig":
        """Build from string values (config file) plus typed overrides (flags win).

        ``master_seed`` falls back to ``$CAYLEYFP_SEED`` and then 0.
        """
        parsers = cls.parsers()
        aliases = {"seed": "master_seed", "set": "fixed_set"}
        kwargs: dict = {}
        for key, raw in values.items():
            key = aliases.get(key, key)
            if key not in parsers:
                raise ParameterError(f"unknown config key {key!r}")
            try:
                kwargs[key] = parsers[key](raw)
            except ValueError as exc:
                raise ParameterError(f"bad value for {key}: {exc}") from None
        for key, value in (overrides or {}).items():
            if value is not None:
                kwargs[aliases.get(key, key)] = value
        if "master_seed" not in kwargs and os.environ.get(SEED_ENV):
            try:
                kwargs["master_seed"] = int(os.environ[SEED_ENV], 0)
            except ValueError:
                raise ParameterError(f"${SEED_ENV} is not an integer") from None
        if "n" not in kwargs:
            raise ParameterError("config needs n")
        return cls(**kwargs)

    def to_dict(self) -> dict:
        d = {f.name: getattr(self, f.name) for f in fields(self)}
        d["fixed_set"] = list(self.fixed_set) if self.fixed_set is not None else None
        return d


def read_config_file(path: str | Path) -> dict[str, str]:
    """Flat ``key = value`` lines; blank lines and ``#`` comments are skipped."""
    out = {}
    for lineno, line in enumerate(Path(path).read_text().splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ParameterError(f"{path}:{lineno}: expected key=value")
        key, value = line.split("=", 1)
        out[key.strip()] = value.strip()
    return out


@dataclass(frozen=True)
class TrialRecord:
    trial: int
    seed: int
    set_size: int
    alpha: int
    witness: tuple[int, ...]
    nodes: int
    elapsed: float
    exact: bool
    reference: int
    ratio: float

    def csv_row(self, timing: bool) -> list:
        micros = round(self.elapsed * 1e6) if timing else 0
        return [self.trial, self.seed, self.set_size, self.alpha, self.nodes, micros, repr(self.ratio)]


def trial_set(config: ExperimentConfig, seed: int) -> ZnSet:
    if config.fixed_set is not None:
        return ZnSet.from_iterable(config.n, config.fixed_set)
    return sample_p_random(config.n, config.p, seed)


def random_subset(n: int, size: int, seed: int) -> ZnSet:
    """Uniform ``size``-subset of Z_n: the residues with the smallest Philox keys."""
    keys = uniform53(seed, n)
    order = np.argsort(keys, kind="stable")[:size]
    return ZnSet.from_iterable(n, order.tolist())


def run_alpha_trial(config: ExperimentConfig, index: int) -> TrialRecord:
    seed = split_seed(config.master_seed, index)
    S = trial_set(config, seed)
    res = independence_number(S, time_budget=config.time_budget, node_budget=config.node_budget)
    if not is_independent(res.witness, S):
        raise AssertionError(f"trial {index}: witness failed to verify")
    log_base = math.log(config.n) / -math.log1p(-config.p)
    return TrialRecord(
        trial=index,
        seed=seed,
        set_size=len(S),
        alpha=res.alpha,
        witness=tuple(res.witness.members()),
        nodes=res.node_count,
        elapsed=res.elapsed,
        exact=res.exact,
        reference=expected_alpha_gnp(config.n, config.p),
        ratio=res.alpha / log_base,
    )


def _dimension_row(config: ExperimentConfig, index: int) -> list:
    seed = split_seed(config.master_seed, index)
    A = trial_set(config, seed) if config.fixed_set is not None else random_subset(config.n, config.set_size, seed)
    K, d, holds = check_dimension_vs_doubling(A)
    return [index, seed, len(A), d, str(K), int(holds)]


def _fingerprint_row(config: ExperimentConfig, index: int) -> list:
    seed = split_seed(config.master_seed, index)
    A = trial_set(config, seed) if config.fixed_set is not None else random_subset(config.n, config.set_size, seed)
    rep = fingerprint_pipeline(A, config.a)
    return [index, seed, len(A), rep.achieved, repr(rep.target), repr(rep.ratio)]


@dataclass
class ExperimentResult:
    config: ExperimentConfig
    records: list
    summary: dict


def _ordered_run(config: ExperimentConfig, work: Callable[[int], object], sink: Callable[[object], None]) -> list:
    """Run ``work(i)`` for every trial; hand results to ``sink`` in index order."""
    results: list = [None] * config.trials
    if config.threads == 1:
        for i in range(config.trials):
            results[i] = work(i)
            sink(results[i])
        return results
    with ThreadPoolExecutor(max_workers=config.threads) as pool:
        futures = [pool.submit(work, i) for i in range(config.trials)]
        # waiting on futures in submission order buffers any early finishers
        for i, fut in enumerate(futures):
            results[i] = fut.result()
            sink(results[i])
    return results


def _alpha_summary(config: ExperimentConfig, records: list[TrialRecord]) -> dict:
    alphas = [r.alpha for r in records]
    reference = expected_alpha_gnp(config.n, config.p)
    mean = sum(alphas) / len(alphas)
    return {
        "mean_alpha": mean,
        "min_alpha": min(alphas),
        "max_alpha": max(alphas),
        "mean_ratio": sum(r.ratio for r in records) / len(records),
        "min_ratio": min(r.ratio for r in records),
        "max_ratio": max(r.ratio for r in records),
        "expected_alpha_gnp": reference,
        "mean_minus_expected": mean - reference,
        "all_exact": all(r.exact for r in records),
        "inexact_trials": [r.trial for r in records if not r.exact],
        "witnesses_verified": True,
    }


def run_experiment(config: ExperimentConfig, stream: Optional[TextIO] = None) -> ExperimentResult:
    """Run every trial, writing CSV rows to ``stream`` (or ``config.out``) as they complete.

    A JSON summary goes next to the CSV as ``<out>.json`` when ``out`` is set.
    """
    own = None
    if stream is None:
        if config.out is not None:
            own = open(config.out, "w", newline="")
            stream = own
        else:
            stream = io.StringIO()
    try:
        writer = csv.writer(stream, lineterminator="\n")
        writer.writerow(CSV_HEADERS[config.mode])

        def emit(row):
            writer.writerow(row)
            stream.flush()

        if config.mode == "alpha":
            records = _ordered_run(
                config, lambda i: run_alpha_trial(config, i), lambda r: emit(r.csv_row(config.timing))
            )
            extra = _alpha_summary(config, records)
        elif config.mode == "dimension":
            records = _ordered_run(config, lambda i: _dimension_row(config, i), emit)
            extra = {"violations": sum(1 for r in records if not r[5])}
        elif config.mode == "fingerprint":
            records = _ordered_run(config, lambda i: _fingerprint_row(config, i), emit)
            extra = {"mean_ratio": sum(float(r[5]) for r in records) / len(records)}
        else:
            rep = bound_report(BoundParams(config.n, config.p, config.delta))
            records = rep.rows()
            for row in records:
                emit([row["sum"], row["index"], repr(row["log_term"])])
            extra = {
                "k": rep.k,
                "log_sums": {name: s.log_sum for name, s in rep.sums.items()},
                "notes": rep.notes,
            }
    finally:
        if own is not None:
            own.close()
    count = {"rows": len(records)} if config.mode == "bounds" else {"trials": len(records)}
    summary = {"schema": SCHEMA, "mode": config.mode, **count, "config": config.to_dict(), **extra}
    if config.out is not None:
        Path(str(config.out) + ".json").write_text(json.dumps(summary, indent=2, default=str) + "\n")
    return ExperimentResult(config, records, summary)
