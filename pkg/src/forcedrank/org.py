"""Scenario configuration and organization construction."""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterator, NamedTuple, Union

import numpy as np

from .classify import labels_per_team
from .errors import InvalidScenarioError
from .talent import TalentShape, sample_standardized, transform_standard_normal


@dataclass(frozen=True)
class RandomAssignment:
    """Engineers are shuffled into teams independently of talent."""

    name = "random"


@dataclass(frozen=True)
class BiasedAssignment:
    """Teams are talent clusters: a normal team mean plus within-team spread."""

    sigma_team: float = 0.7
    name = "biased"

    def __post_init__(self):
        s = self.sigma_team
        if not isinstance(s, (int, float)) or not math.isfinite(s) or not 0.0 <= s <= 1.0:
            raise InvalidScenarioError(f"sigma_team must lie in [0, 1], got {s!r}")


AssignmentPolicy = Union[RandomAssignment, BiasedAssignment]


def effective_headcount(base_headcount: int, team_size: int) -> int:
    """Largest multiple of ``team_size`` not exceeding ``base_headcount``."""
    if team_size < 2:
        raise InvalidScenarioError(f"team_size must be at least 2, got {team_size}")
    if base_headcount < 1:
        raise InvalidScenarioError(f"base_headcount must be positive, got {base_headcount}")
    return team_size * (base_headcount // team_size)


def sigma_within(sigma_team: float) -> float:
    """Within-team spread that keeps pooled talent variance at 1."""
    if not 0.0 <= sigma_team <= 1.0:
        raise InvalidScenarioError(f"sigma_team must lie in [0, 1], got {sigma_team!r}")
    return math.sqrt(max(0.0, 1.0 - sigma_team * sigma_team))


@dataclass(frozen=True)
class Scenario:
    base_headcount: int = 994
    team_size: int = 7
    cutoff: float = 0.15
    policy: AssignmentPolicy = field(default_factory=RandomAssignment)
    shape: TalentShape = TalentShape.NORMAL
    replications: int = 100

    def __post_init__(self):
        for name in ("base_headcount", "team_size", "replications"):
            value = getattr(self, name)
            if isinstance(value, bool) or not isinstance(value, (int, np.integer)):
                raise InvalidScenarioError(f"{name} must be an integer, got {value!r}")
        if not isinstance(self.policy, (RandomAssignment, BiasedAssignment)):
            raise InvalidScenarioError(f"unknown assignment policy {self.policy!r}")
        try:
            object.__setattr__(self, "shape", TalentShape.parse(self.shape))
        except ValueError as exc:
            raise InvalidScenarioError(str(exc)) from None
        if self.replications < 1:
            raise InvalidScenarioError(f"replications must be positive, got {self.replications}")
        if self.effective_headcount < self.team_size:
            raise InvalidScenarioError(
                f"base_headcount {self.base_headcount} cannot fill a single team of {self.team_size}"
            )
        labels_per_team(self.team_size, self.cutoff)

    @property
    def effective_headcount(self) -> int:
        return effective_headcount(self.base_headcount, self.team_size)

    @property
    def team_count(self) -> int:
        return self.effective_headcount // self.team_size

    @property
    def sigma_team(self) -> float | None:
        return self.policy.sigma_team if isinstance(self.policy, BiasedAssignment) else None


class Engineer(NamedTuple):
    id: int
    talent: float
    team_id: int


@dataclass(frozen=True, eq=False)
class Organization:
    """A realized population.

    ``teams[t]`` holds the engineer ids on team ``t``; ``talents[i]`` is the
    latent talent of engineer ``i``. Arrays are made read-only on construction.
    """

    talents: np.ndarray
    teams: np.ndarray

    def __post_init__(self):
        talents = np.array(self.talents, dtype=np.float64)
        teams = np.array(self.teams, dtype=np.intp)
        if teams.ndim != 2 or teams.shape[1] < 1:
            raise InvalidScenarioError("teams must be a 2-D (team_count, team_size) array")
        if talents.ndim != 1 or talents.size != teams.size:
            raise InvalidScenarioError("every engineer must belong to exactly one team")
        if not np.array_equal(np.sort(teams, axis=None), np.arange(talents.size)):
            raise InvalidScenarioError("teams must partition the engineer ids 0..N-1")
        if not np.all(np.isfinite(talents)):
            raise InvalidScenarioError("talents must be finite")
        talents.flags.writeable = False
        teams.flags.writeable = False
        object.__setattr__(self, "talents", talents)
        object.__setattr__(self, "teams", teams)

    @property
    def headcount(self) -> int:
        return self.talents.size

    @property
    def team_count(self) -> int:
        return self.teams.shape[0]

    @property
    def team_size(self) -> int:
        return self.teams.shape[1]

    @property
    def team_ids(self) -> np.ndarray:
        out = np.empty(self.headcount, dtype=np.intp)
        out[self.teams] = np.arange(self.team_count)[:, None]
        return out

    def team_talents(self) -> np.ndarray:
        """Talents laid out as a (team_count, team_size) array."""
        return self.talents[self.teams]

    def engineers(self) -> Iterator[Engineer]:
        team_ids = self.team_ids
        for i, t in enumerate(self.talents):
            yield Engineer(i, float(t), int(team_ids[i]))


def build_random_org(scenario: Scenario, rng: np.random.Generator) -> Organization:
    n = scenario.effective_headcount
    talents = sample_standardized(scenario.shape, n, rng)
    teams = rng.permutation(n).reshape(scenario.team_count, scenario.team_size)
    return Organization(talents, teams)


def build_biased_org(scenario: Scenario, rng: np.random.Generator) -> Organization:
    """Clustered teams; team ``t`` is the contiguous id block ``t*size .. t*size+size-1``.

    A normal latent ``team_mean + sigma_within * Z`` (pooled variance 1) is
    built first, then mapped through the rank-preserving transform onto the
    scenario's standardized talent shape.
    """
    if not isinstance(scenario.policy, BiasedAssignment):
        raise InvalidScenarioError("build_biased_org needs a BiasedAssignment policy")
    sigma_team = scenario.policy.sigma_team
    n, size = scenario.effective_headcount, scenario.team_size
    means = sigma_team * rng.standard_normal(scenario.team_count)
    latent = np.repeat(means, size) + sigma_within(sigma_team) * rng.standard_normal(n)
    talents = transform_standard_normal(scenario.shape, latent)
    teams = np.arange(n).reshape(scenario.team_count, size)
    return Organization(talents, teams)


def build_org(scenario: Scenario, rng: np.random.Generator) -> Organization:
    if isinstance(scenario.policy, BiasedAssignment):
        return build_biased_org(scenario, rng)
    return build_random_org(scenario, rng)
