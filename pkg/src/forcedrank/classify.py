"""Ground truth, within-team forced ranking, and confusion scoring."""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import TYPE_CHECKING

import numpy as np

from . import kernels
from .errors import ConsistencyError, InvalidScenarioError

if TYPE_CHECKING:
    from .org import Organization


def _check_cutoff(cutoff: float) -> None:
    ok = isinstance(cutoff, (int, float)) and not isinstance(cutoff, bool)
    if not ok or not math.isfinite(cutoff) or not 0.0 < cutoff < 0.5:
        raise InvalidScenarioError(f"cutoff must lie in (0, 0.5), got {cutoff!r}")


def k_true(headcount: int, cutoff: float) -> int:
    """Size of each ground-truth tail.

    Counts the order statistics at or below the linearly interpolated
    ``cutoff`` quantile, i.e. ``floor(cutoff * (N - 1)) + 1``.
    """
    _check_cutoff(cutoff)
    if headcount < 2:
        raise InvalidScenarioError(f"headcount must be at least 2, got {headcount}")
    # guard against 0.15 * 993 landing a hair under an integer
    return math.floor(cutoff * (headcount - 1) + 1e-9) + 1


def labels_per_team(team_size: int, cutoff: float) -> int:
    """Members each team must label on each side (round half up, at least 1)."""
    _check_cutoff(cutoff)
    if team_size < 2:
        raise InvalidScenarioError(f"team_size must be at least 2, got {team_size}")
    labels = max(1, math.floor(team_size * cutoff + 0.5))
    if 2 * labels > team_size:
        raise InvalidScenarioError(
            f"team_size {team_size} with cutoff {cutoff} needs {labels} labels per side, "
            "so termination and promotion labels would overlap"
        )
    return labels


@dataclass(frozen=True)
class GroundTruth:
    bottom_ids: frozenset[int]
    top_ids: frozenset[int]
    k_true: int


@dataclass(frozen=True)
class Decisions:
    terminate_ids: frozenset[int]
    promote_ids: frozenset[int]


@dataclass(frozen=True)
class ConfusionSide:
    correct: int
    false_positive: int
    false_negative: int
    labeled: int

    @property
    def error_rate(self) -> float:
        return self.false_positive / self.labeled if self.labeled else 0.0


@dataclass(frozen=True)
class ConfusionReport:
    terminations: ConfusionSide
    promotions: ConfusionSide

    def sides(self) -> dict[str, ConfusionSide]:
        return {"terminations": self.terminations, "promotions": self.promotions}


def _ranked(values: np.ndarray, keys: np.ndarray) -> np.ndarray:
    return np.lexsort((keys, values))


def ground_truth(org: Organization, cutoff: float, rng: np.random.Generator) -> GroundTruth:
    """Global bottom and top ``k_true`` engineers; exact ties broken by ``rng``.

    Always consumes ``headcount`` uniforms from the stream, tied or not.
    """
    k = k_true(org.headcount, cutoff)
    keys = rng.random(org.headcount)
    order = _ranked(org.talents, keys)
    return GroundTruth(
        bottom_ids=frozenset(order[:k].tolist()),
        top_ids=frozenset(order[-k:].tolist()),
        k_true=k,
    )


def apply_forced_ranking(org: Organization, cutoff: float, rng: np.random.Generator) -> Decisions:
    """Label each team's lowest and highest members using only within-team talent.

    Ties inside a team are broken by a fresh uniform key per engineer, drawn
    independently of the global tie-break in :func:`ground_truth`.
    """
    labels = labels_per_team(org.team_size, cutoff)
    keys = rng.random(org.headcount)
    low, high = kernels.team_extremes(org.team_talents(), keys[org.teams], labels)
    rows = np.arange(org.team_count)[:, None]
    terminate = frozenset(org.teams[rows, low].ravel().tolist())
    promote = frozenset(org.teams[rows, high].ravel().tolist())
    assert not terminate & promote, "termination and promotion labels collided"
    return Decisions(terminate, promote)


def _side(labeled_ids: frozenset[int], truth_ids: frozenset[int]) -> ConfusionSide:
    correct = len(labeled_ids & truth_ids)
    return ConfusionSide(
        correct=correct,
        false_positive=len(labeled_ids) - correct,
        false_negative=len(truth_ids) - correct,
        labeled=len(labeled_ids),
    )


def score(decisions: Decisions, truth: GroundTruth, headcount: int | None = None) -> ConfusionReport:
    """Compare decisions to ground truth, per side.

    If ``headcount`` is given, every id must fall in ``0..headcount-1``.
    """
    if headcount is not None:
        ids = decisions.terminate_ids | decisions.promote_ids | truth.bottom_ids | truth.top_ids
        if ids and (min(ids) < 0 or max(ids) >= headcount):
            raise ConsistencyError("decision and ground-truth ids come from different organizations")
    if len(truth.bottom_ids) != truth.k_true or len(truth.top_ids) != truth.k_true:
        raise ConsistencyError("ground-truth tails do not match k_true")
    return ConfusionReport(
        terminations=_side(decisions.terminate_ids, truth.bottom_ids),
        promotions=_side(decisions.promote_ids, truth.top_ids),
    )
