from fractions import Fraction

import numpy as np
import pytest

from forcedrank import kernels
from forcedrank.errors import InvalidScenarioError, OracleCapacityError
from forcedrank.oracle import exhaustive_oracle, partition_count, simulate_fixed_talents


@pytest.mark.parametrize("n, size, expected", [(4, 2, 3), (6, 3, 10), (6, 2, 15), (12, 3, 15400), (12, 2, 10395)])
def test_partition_count(n, size, expected):
    assert partition_count(n, size) == expected


def test_six_two_teams_of_three_exact():
    rep = exhaustive_oracle([0.3, -1.0, 2.2, 0.1, -0.4, 1.5], 3, 0.15)
    assert rep.partitions == 10
    assert rep.terminations.error_rate == Fraction(1, 2)
    assert rep.terminations.false_negative == 0
    assert rep.promotions.error_rate == Fraction(1, 2)


def test_four_two_teams_of_two_no_misses():
    rep = exhaustive_oracle([1.0, 2.0, 3.0, 4.0], 2, 0.15)
    assert rep.terminations.false_negative == 0
    assert rep.promotions.false_negative == 0


def test_only_ranks_matter():
    a = exhaustive_oracle(np.arange(12.0), 3, 0.15)
    b = exhaustive_oracle(np.exp(np.linspace(-3, 2, 12))[::-1] * -1, 3, 0.15)
    assert a == b


def test_nontrivial_instance_hand_computed():
    # 9 people in 3 teams of 3, k_true(9, 0.15) = 2. Ranks 0 and 1 together on a team
    # happen with probability 1/4, losing one correct termination.
    rep = exhaustive_oracle(range(9), 3, 0.15)
    assert rep.k_true == 2
    assert rep.terminations.correct == 2 - Fraction(1, 4)
    assert rep.terminations.error_rate == (3 - Fraction(7, 4)) / 3


@pytest.mark.skipif(kernels.compiled_kernels is None, reason="Cython extension not built")
def test_backends_give_same_report():
    a = exhaustive_oracle(range(12), 4, 0.2, backend=kernels.python_kernels)
    b = exhaustive_oracle(range(12), 4, 0.2, backend=kernels.compiled_kernels)
    assert a == b


def test_capacity_limits():
    with pytest.raises(OracleCapacityError):
        exhaustive_oracle(range(14), 2, 0.15)


def test_rejects_ties_and_bad_sizes():
    with pytest.raises(InvalidScenarioError):
        exhaustive_oracle([1.0, 1.0, 2.0, 3.0], 2, 0.15)
    with pytest.raises(InvalidScenarioError):
        exhaustive_oracle(range(7), 3, 0.15)


@pytest.mark.parametrize("n, size, cutoff", [(6, 3, 0.15), (12, 3, 0.15), (12, 4, 0.2)])
def test_monte_carlo_converges_to_oracle(n, size, cutoff):
    exact = exhaustive_oracle(range(n), size, cutoff)
    mc = simulate_fixed_talents(np.arange(n, dtype=float), size, cutoff, 10_000, master_seed=0)
    for side in ("terminations", "promotions"):
        e = float(exact.side(side).error_rate)
        m = mc.side(side).error_rate
        assert abs(m.mean - e) < 0.01
        assert abs(m.mean - e) <= 3 * m.ci95_half_width / 1.96 + 1e-12
