"""Exact expectations by enumerating every equal-size team partition.

Only usable on tiny organizations. It serves as an independent check on the
Monte Carlo engine: the enumeration never sorts within teams, it counts
ground-truth tail members per team instead.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np

from . import kernels
from .classify import apply_forced_ranking, ground_truth, k_true, labels_per_team, score
from .errors import InvalidScenarioError, OracleCapacityError
from .harness import ReplicationResult, ScenarioSummary, aggregate, replication_rng
from .org import Organization, Scenario

MAX_HEADCOUNT = 12
MAX_PARTITIONS = 10**6


def partition_count(headcount: int, team_size: int) -> int:
    """Number of ways to split ``headcount`` people into unordered teams of ``team_size``."""
    teams = headcount // team_size
    return math.factorial(headcount) // (math.factorial(team_size) ** teams * math.factorial(teams))


@dataclass(frozen=True)
class ExactSide:
    labeled: int
    correct: Fraction
    false_positive: Fraction
    false_negative: Fraction

    @property
    def error_rate(self) -> Fraction:
        return self.false_positive / self.labeled


@dataclass(frozen=True)
class OracleReport:
    headcount: int
    team_size: int
    cutoff: float
    k_true: int
    partitions: int
    terminations: ExactSide
    promotions: ExactSide

    def side(self, name: str) -> ExactSide:
        return getattr(self, name)


def exhaustive_oracle(talents: Sequence[float], team_size: int, cutoff: float, backend=None) -> OracleReport:
    """Expected confusion counts over a uniformly random partition of ``talents``.

    ``backend`` picks a kernel module explicitly; by default the import-time
    choice in :mod:`forcedrank.kernels` is used.
    """
    values = np.asarray(talents, dtype=np.float64)
    n = values.size
    if n > MAX_HEADCOUNT:
        raise OracleCapacityError(f"oracle handles at most {MAX_HEADCOUNT} engineers, got {n}")
    if team_size < 2 or n < team_size or n % team_size:
        raise InvalidScenarioError(f"{n} engineers cannot be split into teams of {team_size}")
    if np.unique(values).size != n:
        raise InvalidScenarioError("oracle needs distinct talents")
    total = partition_count(n, team_size)
    if total > MAX_PARTITIONS:
        raise OracleCapacityError(f"{total} partitions exceeds the limit of {MAX_PARTITIONS}")

    k = k_true(n, cutoff)
    labels = labels_per_team(team_size, cutoff)
    ranks = np.argsort(np.argsort(values))
    bottom = (ranks < k).astype(np.uint8)
    top = (ranks >= n - k).astype(np.uint8)

    impl = backend if backend is not None else kernels
    count, term, prom = impl.partition_correct_sums(bottom, top, team_size, labels)
    if count != total:
        raise AssertionError(f"enumerated {count} partitions, expected {total}")

    labeled = labels * (n // team_size)

    def side(correct_sum: int) -> ExactSide:
        correct = Fraction(correct_sum, count)
        return ExactSide(labeled, correct, labeled - correct, k - correct)

    return OracleReport(n, team_size, cutoff, k, count, side(term), side(prom))


def simulate_fixed_talents(
    talents: Sequence[float], team_size: int, cutoff: float, replications: int, master_seed: int
) -> ScenarioSummary:
    """Monte Carlo estimate of the quantity :func:`exhaustive_oracle` computes exactly.

    Talents stay fixed; each replication draws a uniformly random partition.
    """
    values = np.asarray(talents, dtype=np.float64)
    n = values.size
    scenario = Scenario(base_headcount=n, team_size=team_size, cutoff=cutoff, replications=replications)
    if scenario.effective_headcount != n:
        raise InvalidScenarioError(f"{n} engineers cannot be split into teams of {team_size}")
    results = []
    for i in range(replications):
        rng = replication_rng(master_seed, i)
        org = Organization(values, rng.permutation(n).reshape(-1, team_size))
        truth = ground_truth(org, cutoff, rng)
        decisions = apply_forced_ranking(org, cutoff, rng)
        results.append(ReplicationResult(i, score(decisions, truth, n)))
    return aggregate(scenario, master_seed, results)
