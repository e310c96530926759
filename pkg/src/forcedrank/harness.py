"""Seeded replications, aggregation, and parameter sweeps.

Every replication owns a random stream derived from ``(master_seed, index)``
through :class:`numpy.random.SeedSequence` feeding a PCG64 generator, so
results do not depend on the order or process in which replications run.
"""
from __future__ import annotations

import dataclasses
import math
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Any, Iterable, Sequence

import numpy as np

from .classify import (
    ConfusionReport,
    apply_forced_ranking,
    ground_truth,
    score,
)
from .errors import InvalidScenarioError
from .org import BiasedAssignment, Scenario, build_org
from .talent import TalentShape

Z95 = 1.96
SIDES = ("terminations", "promotions")
METRICS = ("correct", "false_positive", "false_negative", "error_rate")

# bump when the stream derivation or draw order changes
STREAM_VERSION = 1


def replication_rng(master_seed: int, replication_index: int) -> np.random.Generator:
    if master_seed < 0 or replication_index < 0:
        raise InvalidScenarioError("master_seed and replication_index must be non-negative")
    seq = np.random.SeedSequence([STREAM_VERSION, int(master_seed), int(replication_index)])
    return np.random.Generator(np.random.PCG64(seq))


@dataclass(frozen=True)
class ReplicationResult:
    replication_index: int
    report: ConfusionReport


@dataclass(frozen=True)
class MetricSummary:
    mean: float
    ci95_half_width: float


@dataclass(frozen=True)
class SideSummary:
    labeled: int
    correct: MetricSummary
    false_positive: MetricSummary
    false_negative: MetricSummary
    error_rate: MetricSummary


@dataclass(frozen=True)
class ScenarioSummary:
    scenario: Scenario
    master_seed: int
    replications: int
    k_true: int
    terminations: SideSummary
    promotions: SideSummary

    def side(self, name: str) -> SideSummary:
        return getattr(self, name)

    @property
    def average_error_rate(self) -> float:
        """Mean of the termination and promotion error rates."""
        return 0.5 * (self.terminations.error_rate.mean + self.promotions.error_rate.mean)


@dataclass(frozen=True)
class SweepTable:
    param: str
    rows: tuple[tuple[Any, ScenarioSummary], ...]

    def __post_init__(self):
        values = [v for v, _ in self.rows]
        if len(set(values)) != len(values):
            raise InvalidScenarioError(f"duplicate {self.param} values in sweep: {values}")

    def values(self) -> list:
        return [v for v, _ in self.rows]

    def __getitem__(self, value) -> ScenarioSummary:
        for v, summary in self.rows:
            if v == value:
                return summary
        raise KeyError(value)


def run_replication(scenario: Scenario, master_seed: int, replication_index: int) -> ReplicationResult:
    rng = replication_rng(master_seed, replication_index)
    org = build_org(scenario, rng)
    truth = ground_truth(org, scenario.cutoff, rng)
    decisions = apply_forced_ranking(org, scenario.cutoff, rng)
    return ReplicationResult(replication_index, score(decisions, truth, org.headcount))


def _run_block(scenario: Scenario, master_seed: int, indices: Sequence[int]) -> list[ReplicationResult]:
    return [run_replication(scenario, master_seed, i) for i in indices]


def _summarize(values: np.ndarray) -> MetricSummary:
    n = values.size
    mean = float(np.mean(values))
    sd = float(np.std(values, ddof=1)) if n > 1 else 0.0
    return MetricSummary(mean, Z95 * sd / math.sqrt(n))


def aggregate(scenario: Scenario, master_seed: int, results: Iterable[ReplicationResult]) -> ScenarioSummary:
    """Combine per-replication reports; sorted by index so input order is irrelevant."""
    ordered = sorted(results, key=lambda r: r.replication_index)
    if len(ordered) < 2:
        raise InvalidScenarioError("at least 2 replications are needed for a confidence interval")
    indices = [r.replication_index for r in ordered]
    if len(set(indices)) != len(indices):
        raise InvalidScenarioError("duplicate replication indices")
    sides = {}
    for side in SIDES:
        reports = [getattr(r.report, side) for r in ordered]
        labeled = {s.labeled for s in reports}
        if len(labeled) != 1:
            raise InvalidScenarioError(f"labeled count varies across replications: {sorted(labeled)}")
        stats = {m: _summarize(np.array([getattr(s, m) for s in reports], dtype=np.float64)) for m in METRICS}
        sides[side] = SideSummary(labeled=labeled.pop(), **stats)
    return ScenarioSummary(
        scenario=scenario,
        master_seed=master_seed,
        replications=len(ordered),
        k_true=ordered[0].report.terminations.correct + ordered[0].report.terminations.false_negative,
        **sides,
    )


def run_scenario(scenario: Scenario, master_seed: int, workers: int | None = 1) -> ScenarioSummary:
    """Run ``scenario.replications`` replications and summarize them.

    ``workers > 1`` spreads replications over processes; ``None`` uses every
    CPU. The summary is identical either way.
    """
    reps = scenario.replications
    if reps < 2:
        raise InvalidScenarioError("run_scenario needs at least 2 replications")
    if workers is None:
        workers = os.cpu_count() or 1
    indices = list(range(reps))
    if workers <= 1:
        results = _run_block(scenario, master_seed, indices)
    else:
        blocks = [indices[i::workers] for i in range(workers) if indices[i::workers]]
        results = []
        with ProcessPoolExecutor(max_workers=len(blocks)) as pool:
            futures = [pool.submit(_run_block, scenario, master_seed, b) for b in blocks]
            for f in futures:
                results.extend(f.result())
    return aggregate(scenario, master_seed, results)


def sweep(
    param: str,
    values: Sequence,
    template: Scenario,
    master_seed: int,
    workers: int | None = 1,
) -> SweepTable:
    """Run one scenario per value of ``param``; every row shares ``master_seed``."""
    rows = []
    for value in values:
        scenario = _vary(template, param, value)
        rows.append((value, run_scenario(scenario, master_seed, workers)))
    return SweepTable(param, tuple(rows))


def _vary(template: Scenario, param: str, value) -> Scenario:
    if param == "team_size":
        return dataclasses.replace(template, team_size=int(value))
    if param == "shape":
        return dataclasses.replace(template, shape=TalentShape.parse(value))
    if param == "cutoff":
        return dataclasses.replace(template, cutoff=float(value))
    if param == "sigma_team":
        return dataclasses.replace(template, policy=BiasedAssignment(float(value)))
    raise InvalidScenarioError(f"cannot sweep over {param!r}")


def _strictly_ordered(values: Sequence) -> bool:
    return all(a < b for a, b in zip(values, values[1:]))


def sweep_team_size(sizes: Sequence[int], template: Scenario, master_seed: int, workers: int | None = 1) -> SweepTable:
    if not _strictly_ordered(list(sizes)):
        raise InvalidScenarioError("team sizes must be strictly increasing")
    return sweep("team_size", [int(s) for s in sizes], template, master_seed, workers)


def sweep_distribution(shapes: Sequence, template: Scenario, master_seed: int, workers: int | None = 1) -> SweepTable:
    return sweep("shape", [TalentShape.parse(s) for s in shapes], template, master_seed, workers)


def sweep_cutoff(cutoffs: Sequence[float], template: Scenario, master_seed: int, workers: int | None = 1) -> SweepTable:
    if not _strictly_ordered(list(cutoffs)):
        raise InvalidScenarioError("cutoffs must be strictly increasing")
    return sweep("cutoff", [float(c) for c in cutoffs], template, master_seed, workers)


def bias_curve(levels: Sequence[float], template: Scenario, master_seed: int, workers: int | None = 1) -> SweepTable:
    """One summary per team-clustering level; read ``average_error_rate`` per row."""
    levels = [float(x) for x in levels]
    if not _strictly_ordered(levels):
        raise InvalidScenarioError("bias levels must be strictly increasing")
    for x in levels:
        if not 0.0 <= x <= 1.0:
            raise InvalidScenarioError(f"bias level {x} outside [0, 1]")
    return sweep("sigma_team", levels, template, master_seed, workers)

