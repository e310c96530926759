"""Exit criteria, one test per criterion, at master seed 0 with 100 replications.

Each test records a PASS/FAIL line that is printed in the terminal summary.
Reference values are the published means over 100 replications.
"""
from functools import lru_cache

import numpy as np
import pytest

from conftest import ACCEPTANCE_LINES
from forcedrank.classify import apply_forced_ranking, ground_truth, k_true, labels_per_team, score
from forcedrank.cli import main
from forcedrank.harness import (
    bias_curve,
    run_replication,
    run_scenario,
    sweep_cutoff,
    sweep_distribution,
    sweep_team_size,
)
from forcedrank.oracle import exhaustive_oracle, simulate_fixed_talents
from forcedrank.org import BiasedAssignment, Organization, Scenario
from forcedrank.talent import TalentShape

SEED = 0
RANDOM = Scenario()
BIASED = Scenario(policy=BiasedAssignment(0.7))
PP = 0.01


def record(number: int, title: str, checks: dict[str, bool]) -> None:
    failed = [name for name, ok in checks.items() if not ok]
    status = "PASS" if not failed else "FAIL"
    detail = "" if not failed else "  failed: " + "; ".join(failed)
    ACCEPTANCE_LINES.append(f"[{status}] criterion {number:>2}: {title}{detail}")
    assert not failed, failed


def within(value: float, target: float, tol: float) -> bool:
    return abs(value - target) <= tol


def fmt(x: float) -> str:
    return f"{100 * x:.2f}%"


def falling_up_to_ci(errs) -> bool:
    """Each step goes the right way, or the two CIs overlap."""
    return all(b.mean < a.mean or abs(b.mean - a.mean) <= a.ci95_half_width + b.ci95_half_width
               for a, b in zip(errs, errs[1:]))


@lru_cache(maxsize=None)
def baseline(policy: str):
    return run_scenario(RANDOM if policy == "random" else BIASED, SEED)


@lru_cache(maxsize=None)
def sizes(policy: str):
    return sweep_team_size([5, 6, 7, 8, 9], RANDOM if policy == "random" else BIASED, SEED)


@lru_cache(maxsize=None)
def shapes(policy: str):
    return sweep_distribution(list(TalentShape), RANDOM if policy == "random" else BIASED, SEED)


@lru_cache(maxsize=None)
def cutoffs(policy: str):
    return sweep_cutoff([0.10, 0.15, 0.20], RANDOM if policy == "random" else BIASED, SEED)


LEVELS = [round(0.1 * i, 1) for i in range(11)]
BIAS_TABLE = [32.13, 32.83, 33.49, 35.46, 39.58, 43.79, 49.30, 53.71, 60.26, 67.48, 85.12]


@lru_cache(maxsize=None)
def curve():
    return bias_curve(LEVELS, BIASED, SEED)


def test_criterion_01_baseline_random():
    s = baseline("random")
    t, p = s.terminations, s.promotions
    record(1, f"random baseline: term error {fmt(t.error_rate.mean)}, correct {t.correct.mean:.1f}, FN "
              f"{t.false_negative.mean:.1f}; prom error {fmt(p.error_rate.mean)}", {
        "labeled 142": t.labeled == p.labeled == 142,
        "term error 31.3 +- 1.5pp": within(t.error_rate.mean, 0.313, 1.5 * PP),
        "term correct 97 +- 3": within(t.correct.mean, 97, 3),
        "term FN 52 +- 3": within(t.false_negative.mean, 52, 3),
        "prom error 31.6 +- 1.5pp": within(p.error_rate.mean, 0.316, 1.5 * PP),
        "prom correct 96 +- 3": within(p.correct.mean, 96, 3),
        "prom FP 46 +- 3": within(p.false_positive.mean, 46, 3),
        "prom FN 53 +- 3": within(p.false_negative.mean, 53, 3),
    })


def test_criterion_02_baseline_biased():
    t = baseline("biased").terminations
    record(2, f"biased baseline: term error {fmt(t.error_rate.mean)}, correct {t.correct.mean:.1f}, "
              f"FN {t.false_negative.mean:.1f}", {
        "term error 53.7 +- 2pp": within(t.error_rate.mean, 0.537, 2 * PP),
        "term correct 66 +- 3": within(t.correct.mean, 66, 3),
        "term FN 83 +- 4": within(t.false_negative.mean, 83, 4),
    })


def test_criterion_03_team_size_random():
    table = sizes("random")
    errs = [s.terminations.error_rate for _, s in table.rows]
    record(3, "random team sizes 5..9: " + ", ".join(fmt(e.mean) for e in errs), {
        "size 5 = 43.9 +- 2pp": within(table[5].terminations.error_rate.mean, 0.439, 2 * PP),
        "size 9 = 23.0 +- 2pp": within(table[9].terminations.error_rate.mean, 0.230, 2 * PP),
        "decreasing in size": falling_up_to_ci(errs),
    })


def test_criterion_04_team_size_biased():
    table = sizes("biased")
    record(4, f"biased team sizes: 5 -> {fmt(table[5].terminations.error_rate.mean)}, "
              f"9 -> {fmt(table[9].terminations.error_rate.mean)}", {
        "size 5 = 59.8 +- 2pp": within(table[5].terminations.error_rate.mean, 0.598, 2 * PP),
        "size 9 = 48.7 +- 2pp": within(table[9].terminations.error_rate.mean, 0.487, 2 * PP),
    })


def test_criterion_05_distribution_shapes():
    checks = {}
    parts = []
    for policy, target in (("random", 0.315), ("biased", 0.535)):
        table = shapes(policy)
        for side in ("terminations", "promotions"):
            errs = [s.side(side).error_rate.mean for _, s in table.rows]
            checks[f"{policy} {side} spread < 2pp"] = max(errs) - min(errs) < 2 * PP
            checks[f"{policy} {side} ~ {100 * target:.1f}% +- 2pp"] = all(within(e, target, 2 * PP) for e in errs)
        parts.append(policy + " " + "/".join(fmt(s.terminations.error_rate.mean) for _, s in table.rows))
    record(5, "shapes normal/lognormal/uniform: " + "; ".join(parts), checks)


def test_criterion_06_cutoffs():
    r, b = cutoffs("random"), cutoffs("biased")
    e = lambda t, c: t[c].terminations.error_rate.mean  # noqa: E731
    record(6, f"cutoffs random 10/20 -> {fmt(e(r, 0.10))}/{fmt(e(r, 0.20))}, "
              f"biased -> {fmt(e(b, 0.10))}/{fmt(e(b, 0.20))}", {
        "random 10% = 47.5 +- 2pp": within(e(r, 0.10), 0.475, 2 * PP),
        "random 20% = 21.1 +- 2pp": within(e(r, 0.20), 0.211, 2 * PP),
        "biased 10% = 65.0 +- 2pp": within(e(b, 0.10), 0.650, 2 * PP),
        "biased 20% = 44.1 +- 2pp": within(e(b, 0.20), 0.441, 2 * PP),
    })


def test_criterion_07_bias_curve():
    table = curve()
    checks = {}
    for level, ref in zip(LEVELS, BIAS_TABLE):
        tol = 4 if level == 1.0 else 2
        got = 100 * table[level].average_error_rate
        checks[f"sigma {level}: {got:.2f} vs {ref} +- {tol}pp"] = within(got, ref, tol)
    rows = [s for _, s in table.rows]
    steps_ok = all(
        b.average_error_rate >= a.average_error_rate
        or a.average_error_rate - b.average_error_rate
        <= 0.5 * (a.terminations.error_rate.ci95_half_width + a.promotions.error_rate.ci95_half_width
                  + b.terminations.error_rate.ci95_half_width + b.promotions.error_rate.ci95_half_width)
        for a, b in zip(rows, rows[1:])
    )
    checks["nondecreasing in sigma"] = steps_ok
    record(7, "bias curve: " + ", ".join(f"{100 * s.average_error_rate:.2f}" for s in rows), checks)


def test_criterion_08_oracle_equivalence():
    talents = [0.4, -1.3, 2.1, 0.0, -0.2, 1.1]
    exact = exhaustive_oracle(talents, 3, 0.15)
    mc = simulate_fixed_talents(talents, 3, 0.15, 10_000, SEED)
    t = exact.terminations
    record(8, f"oracle N=6: exact error {float(t.error_rate)}, FN {t.false_negative}; "
              f"MC error {fmt(mc.terminations.error_rate.mean)}", {
        "exact error == 1/2": t.error_rate == 0.5,
        "exact FN == 0": t.false_negative == 0,
        "MC within 1pp (terminations)": within(mc.terminations.error_rate.mean, 0.5, PP),
        "MC within 1pp (promotions)": within(mc.promotions.error_rate.mean, float(exact.promotions.error_rate), PP),
    })


def test_criterion_09_exact_invariants():
    checks = {}
    accounting = True
    for sc in (RANDOM, BIASED, Scenario(policy=BiasedAssignment(1.0))):
        kt = k_true(sc.effective_headcount, sc.cutoff)
        for i in range(sc.replications):
            rep = run_replication(sc, SEED, i).report
            for side in (rep.terminations, rep.promotions):
                accounting &= side.correct + side.false_positive == side.labeled
                accounting &= side.correct + side.false_negative == kt
    checks["accounting on every replication"] = accounting

    rng = np.random.default_rng(SEED)
    monotone = negation = True
    for _ in range(50):
        org = Organization(rng.standard_normal(994), rng.permutation(994).reshape(142, 7))
        seed = int(rng.integers(2**32))

        def run(o):
            r = np.random.default_rng(seed)
            gt = ground_truth(o, 0.15, r)
            d = apply_forced_ranking(o, 0.15, r)
            return gt, d, score(d, gt, o.headcount)

        gt, d, rep = run(org)
        gt2, d2, _ = run(Organization(np.exp(3 * org.talents) + 5, org.teams))
        monotone &= gt == gt2 and d == d2
        _, _, neg = run(Organization(-org.talents, org.teams))
        negation &= rep.terminations == neg.promotions and rep.promotions == neg.terminations
    checks["monotone-transform invariance"] = monotone
    checks["negation symmetry"] = negation

    one = Organization(rng.standard_normal(100), [list(range(100))])
    assert labels_per_team(100, 0.15) == k_true(100, 0.15)
    r1 = score(apply_forced_ranking(one, 0.15, rng), ground_truth(one, 0.15, rng))
    checks["single team -> zero error"] = r1.terminations.error_rate == 0 == r1.promotions.error_rate
    checks["k_true 149/100/199"] = [k_true(994, c) for c in (0.15, 0.10, 0.20)] == [149, 100, 199]
    record(9, "exact invariants (accounting, monotone, negation, global frame, k_true)", checks)


@pytest.mark.parametrize("suffix", [".csv", ".json"])
def test_criterion_10_determinism(tmp_path, suffix):
    fmt_flag = suffix[1:]
    commands = {
        "run": ["run", "--policy", "biased", "--reps", "20"],
        "sweep": ["sweep", "--param", "team_size", "--values", "5,7", "--reps", "10"],
        "bias-curve": ["bias-curve", "--levels", "0.0,0.5,1.0", "--reps", "10"],
        "oracle": ["oracle", "--headcount", "9", "--team-size", "3", "--reps", "200"],
    }
    checks = {}
    for name, argv in commands.items():
        outs = []
        for k, workers in enumerate(("1", "1", "2")):
            path = tmp_path / f"{name}{k}{suffix}"
            code = main(argv + ["--seed", "11", "--format", fmt_flag, "--workers", workers, "--out", str(path)])
            outs.append((code, path.read_bytes()))
        checks[f"{name} exit 0"] = all(code == 0 for code, _ in outs)
        checks[f"{name} byte-identical (serial, serial, parallel)"] = len({b for _, b in outs}) == 1
    record(10, f"determinism across all commands ({fmt_flag})", checks)
