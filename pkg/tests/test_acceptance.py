"""Acceptance suite: one test per criterion, one printed line per criterion.

Run with ``pytest tests/test_acceptance.py -v -s`` to see the PASS/FAIL
lines. Randomized criteria use a fixed seed chosen up front (20260810) so
outcomes are reproducible.
"""

import numpy as np
import pytest

from seg_eval import (
    ChangePointList,
    CorruptionSpec,
    ErrorType,
    PenaltyWeights,
    StateSequence,
    ari,
    contingency_matrix,
    covering,
    f1_margin,
    make_ground_truth,
    optimal_state_mapping,
    overlap_cost_matrix,
    sms,
    sweep,
    wari,
)
from .conftest import random_pair
from .test_clustering import brute_force_ari
from .test_mapping import brute_force_best_overlap

SEED = 20260810


def check(name: str, ok: bool, detail: str = ""):
    line = f"[{'PASS' if ok else 'FAIL'}] {name}"
    if detail and not ok:
        line += f" -- {detail}"
    print(line)
    assert ok, line


def seq(labels):
    return StateSequence.from_labels(labels)


def test_wari_collapses_to_ari_at_alpha_zero():
    rng = np.random.default_rng(SEED)
    ok = True
    detail = ""
    for i in range(1000):
        gt, pred = random_pair(rng, 200, 5)
        plain = ari(contingency_matrix(gt, pred)).value
        weighted = wari(gt, pred, 0.0).value
        if weighted != plain:  # bitwise double equality required
            ok, detail = False, f"pair {i}: {weighted!r} != {plain!r}"
            break
    check("wari(alpha=0) equals ari bitwise on 1000 random pairs", ok, detail)


def test_ari_matches_all_pairs_oracle():
    rng = np.random.default_rng(SEED)
    worst = 0.0
    for _ in range(200):
        gt, pred = random_pair(rng, 50, 5)
        got = ari(contingency_matrix(gt, pred)).value
        expected = brute_force_ari(gt, pred)
        worst = max(worst, abs(got - expected))
    check(f"ari matches brute-force pair counting (worst |diff|={worst:.2e})", worst <= 1e-12)


def test_assignment_matches_exhaustive_enumeration():
    rng = np.random.default_rng(SEED)
    ok = True
    detail = ""
    for i in range(300):
        n = int(rng.integers(4, 80))
        k_gt = int(rng.integers(1, 7))
        k_pred = int(rng.integers(1, 7))
        gt = StateSequence.from_labels(rng.integers(0, k_gt, size=n))
        pred = StateSequence.from_labels(rng.integers(0, k_pred, size=n))
        overlap = -overlap_cost_matrix(gt, pred)
        m = optimal_state_mapping(gt, pred)
        achieved = sum(overlap[p, r] for p, r in m.mapping.items() if r not in m.fresh)
        best = brute_force_best_overlap(overlap)
        if achieved != best:
            ok, detail = False, f"pair {i}: achieved {achieved} != optimal {best}"
            break
    check("optimal_state_mapping overlap equals exhaustive optimum on 300 pairs", ok, detail)


def test_sms_with_zero_weights_is_mapped_accuracy():
    rng = np.random.default_rng(SEED)
    zero = PenaltyWeights(0.0, 0.0, 0.0, 0.0)
    ok = True
    detail = ""
    for i in range(500):
        gt, pred = random_pair(rng, 200, 5)
        report = sms(gt, pred, zero)
        expected = 1.0 - report.total_error_length / report.n
        if report.score != expected:
            ok, detail = False, f"pair {i}: {report.score!r} != {expected!r}"
            break
    check("sms(w=0) equals 1 - E/N exactly on 500 random pairs", ok, detail)


def test_sms_bounds_for_unit_weights():
    # The interval is exact in real arithmetic; 1e-12 covers the float
    # rounding of the per-block penalty sum (see decisions ledger).
    rng = np.random.default_rng(SEED)
    ok = True
    detail = ""
    for i in range(500):
        gt, pred = random_pair(rng, 200, 5)
        w = PenaltyWeights(*rng.uniform(0.0, 1.0, size=4))
        report = sms(gt, pred, w)
        e_over_n = report.total_error_length / report.n
        lower = 1.0 - (1.0 + w.max_weight) * e_over_n
        upper = 1.0 - e_over_n
        if not (lower - 1e-12 <= report.score <= upper + 1e-12):
            ok, detail = False, f"pair {i}: {report.score} not in [{lower}, {upper}]"
            break
    check("sms within [1-(1+w_max)E/N, 1-E/N] for weights in [0,1]^4", ok, detail)


def test_sms_weight_lipschitz_bound():
    rng = np.random.default_rng(SEED)
    ok = True
    detail = ""
    for i in range(500):
        gt, pred = random_pair(rng, 200, 5)
        w1 = PenaltyWeights(*rng.uniform(0.0, 1.0, size=4))
        w2 = PenaltyWeights(*rng.uniform(0.0, 1.0, size=4))
        r1 = sms(gt, pred, w1)
        r2 = sms(gt, pred, w2)
        gap = max(
            abs(w1.delay - w2.delay),
            abs(w1.transition - w2.transition),
            abs(w1.isolation - w2.isolation),
            abs(w1.missing - w2.missing),
        )
        bound = gap * r1.total_error_length / r1.n + 1e-12
        if abs(r1.score - r2.score) > bound:
            ok = False
            detail = (
                f"triple {i}: |{r1.score} - {r2.score}| = {abs(r1.score - r2.score):.6g} "
                f"> {bound:.6g} (E={r1.total_error_length}, N={r1.n}, "
                f"w={w1}, w'={w2})"
            )
            break
    check("sms weight stability |dSMS| <= ||dw||_inf * E/N on 500 triples", ok, detail)


def test_delay_length_sweep_strictly_decreases_all_measures():
    gt = make_ground_truth([100, 100])
    grid = [CorruptionSpec(ErrorType.DELAY, length, position=100) for length in range(1, 10)]
    rows = sweep(gt, "length", grid, measures=("ari", "wari", "sms"))
    ok = True
    for measure in ("ari", "wari", "sms"):
        scores = [r.score for r in rows if r.measure == measure]
        ok = ok and all(b < a for a, b in zip(scores, scores[1:]))
    check("delay length sweep 1..9: ari, wari, sms strictly decreasing", ok)


def test_isolation_position_sweep():
    gt = make_ground_truth([67, 66, 67])
    grid = [
        CorruptionSpec(ErrorType.ISOLATION, 2, position=68 + delta)
        for delta in range(0, 30, 3)
    ]
    rows = sweep(gt, "position", grid, measures=("ari", "wari", "sms"))
    ari_scores = [r.score for r in rows if r.measure == "ari"]
    ok = max(ari_scores) - min(ari_scores) < 1e-12
    for measure in ("wari", "sms"):
        scores = [r.score for r in rows if r.measure == measure]
        ok = ok and all(b < a for a, b in zip(scores, scores[1:]))
    check("isolation position sweep: ari constant, wari and sms decreasing", ok)


def test_equal_length_delay_and_transition_tie_ari_but_not_sms():
    gt = make_ground_truth([3, 7, 7, 3, 8, 5, 4], labels=[0, 1, 2, 3, 0, 4, 3])
    grid = [
        CorruptionSpec(ErrorType.DELAY, 8, position=20),
        CorruptionSpec(ErrorType.TRANSITION, 8, position=10, fill_label=4),
    ]
    rows = sweep(gt, "type", grid, measures=("ari", "sms"))
    by = {(r.kind, r.measure): r.score for r in rows}
    ari_gap = abs(by[("delay", "ari")] - by[("transition", "ari")])
    sms_gap = abs(by[("delay", "sms")] - by[("transition", "sms")])
    check(
        f"equal-length delay vs transition: ari gap {ari_gap:.2e} < 1e-12, "
        f"sms gap {sms_gap:.2e} > 1e-6",
        ari_gap < 1e-12 and sms_gap > 1e-6,
    )


def test_margin_f1_and_covering_blind_spots():
    truth = ChangePointList(np.array([100]))
    f1_near = f1_margin(truth, ChangePointList(np.array([102])), margin=10).f1
    f1_far = f1_margin(truth, ChangePointList(np.array([108])), margin=10).f1

    gt = seq([0] * 4 + [1] * 12)
    clean = seq([0] * 4 + [1] * 7 + [0] * 5)
    fragmented = seq([0] * 4 + [1] * 7 + [0, 1, 0, 1, 0])
    ok = f1_near == 1.0 and f1_far == 1.0 and covering(gt, clean) == covering(gt, fragmented)
    check("known blind spots: F1 inside margin and covering tie reproduced", ok)


def _robustness_fixtures():
    bases = [
        make_ground_truth([50, 50, 50, 50]),
        make_ground_truth([40, 30, 50, 40, 40]),
        make_ground_truth([25] * 8),
        make_ground_truth([20, 35, 25, 40, 35, 45]),
    ]
    kinds = [ErrorType.DELAY, ErrorType.ISOLATION, ErrorType.TRANSITION, ErrorType.MISSING]
    lengths = {
        ErrorType.DELAY: (2, 5, 9, 14),
        ErrorType.ISOLATION: (2, 5, 9, 14),
        ErrorType.TRANSITION: (4, 8, 12, 16),
        ErrorType.MISSING: (60, 75, 90, 105),
    }
    fixtures = []
    seed = 0
    while len(fixtures) < 50:
        for base in bases:
            for kind in kinds:
                for length in lengths[kind]:
                    if len(fixtures) >= 50:
                        break
                    seed += 1
                    try:
                        pred = __import__("seg_eval").inject_error(
                            base, CorruptionSpec(kind, length, seed=seed)
                        )
                    except Exception:
                        continue
                    fixtures.append((base, pred))
    return fixtures


def test_sms_robust_to_random_weight_draws():
    rng = np.random.default_rng(SEED)
    fixtures = _robustness_fixtures()
    assert len(fixtures) == 50
    stds = []
    for gt, pred in fixtures:
        scores = [
            sms(gt, pred, PenaltyWeights(*rng.uniform(0.0, 1.0, size=4))).score
            for _ in range(100)
        ]
        stds.append(np.std(scores))
    mean_std = float(np.mean(stds))
    check(
        f"sms std over 100 random weight draws averages {mean_std:.4f} <= 0.10",
        mean_std <= 0.10,
    )


def test_hand_traced_fixture():
    report = sms(seq([0, 0, 0, 1, 1, 1]), seq([0, 0, 0, 0, 1, 1]))
    ok = (
        abs(report.score - 0.816667) <= 1e-5
        and len(report.blocks) == 1
        and report.blocks[0].kind is ErrorType.DELAY
        and report.blocks[0].length == 1
    )
    check("hand-traced fixture scores 0.816667 with one length-1 delay", ok)
