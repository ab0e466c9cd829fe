"""Acceptance suite: one test per criterion, each printing a PASS/FAIL line.

Run with ``pytest tests/test_acceptance.py -v -s`` to see every line.  The
statistical criteria use fixed master seeds; every tolerance is pinned here.
"""

import math

import numpy as np
import pytest

import see_bandits as sb
from see_bandits.harness import FamilySpec, make_instance, run_cell, summarize

from oracles import radius_ref, see_constant_run_ref

MASTER_SEED = 20250809


def _report(name, ok, detail):
    print(f"{name} {'PASS' if ok else 'FAIL'}: {detail}")
    assert ok, f"{name}: {detail}"


def _cell(family, k, delta, algo, trials, seed=MASTER_SEED, preset="default"):
    recs, _ = run_cell(family, k, delta, algo, trials, seed, 10 ** 8,
                       preset=preset)
    return summarize(recs, family, k, delta, algo), recs


def _sep(a, b):
    """Separation of two cell means in combined standard errors."""
    return (b.mean_pulls - a.mean_pulls) / math.hypot(a.se_pulls, b.se_pulls)


def test_a1_delta_pac():
    """SEE is delta-PAC at desk scale: binomial error budget with 4-sigma slack."""
    s, _ = _cell("UniqueQualified", 5, 0.05, "SEE", 400)
    budget = 37  # 400*0.05 + 4*sqrt(400*0.05*0.95), rounded down
    ok = s.error_count <= budget and s.forced_stop_count == 0
    _report("A1", ok, f"errors={s.error_count}/400 (budget {budget}), "
                      f"forced={s.forced_stop_count}")


def test_a2_certainty_invariants():
    """Container, accounting, and budget identities hold on every phase of
    100 mixed-family debug trials (budgets read at their integer crossing)."""
    fams = [("UniqueQualified", 5), ("AllWorse", 6), ("OneQuarter", 8),
            ("HalfGood", 6), ("AllGood", 5), ("Linear", 5)]
    violations = 0
    checked = 0
    for i in range(100):
        fam, k = fams[i % len(fams)]
        delta = 0.1 if i % 2 == 0 else 0.05
        inst = make_instance(FamilySpec(fam, k))
        rec, info = sb.run_see_debug(inst, delta, sb.SeeConfig(),
                                     seed=MASTER_SEED + i)
        violations += info.budget_violations
        checked += len(info.phase_budgets)
        q_size = rec.pulls_ee - sum(rec.per_arm_ee)
        if not 0 <= q_size <= k:
            violations += 1
        if rec.pulls_total != rec.pulls_ee + rec.pulls_et:
            violations += 1
    _report("A2", violations == 0,
            f"violations={violations} over 100 trials, {checked} phase audits")


def test_a3_deterministic_end_to_end():
    """Zero-noise single-arm runs match the independent radius-scan oracle."""
    assert see_constant_run_ref(1.0, 0.0, 0.3) == (0, 13, 15, 1)
    assert see_constant_run_ref(-1.0, 0.0, 0.3) == (None, 15, 0, 3)
    pos = sb.run_see(sb.BanditInstance((1.0,), 0.0, sb.NoiseModel.constant()),
                     0.3, sb.SeeConfig(), seed=1)
    neg = sb.run_see(sb.BanditInstance((-1.0,), 0.0, sb.NoiseModel.constant()),
                     0.3, sb.SeeConfig(), seed=1)
    ok = (pos.verdict == 0 and pos.pulls_total == 28 and pos.pulls_ee == 13
          and pos.pulls_et == 15 and neg.verdict is None and neg.phases == 3)
    _report("A3", ok, f"positive=(arm {pos.verdict}, {pos.pulls_ee}+{pos.pulls_et} pulls), "
                      f"negative=(none at phase {neg.phases})")


def test_a4_radius_against_high_precision():
    """Radius matches a 50-digit reference to 1e-12 relative error on a
    1000-point grid, including the bracket-boundary equality."""
    rs = np.random.RandomState(12345)
    ts = sorted(set(int(t) for t in rs.randint(1, 2 ** 20, size=334)) | {1, 2, 2 ** 20})
    worst = 0.0
    points = 0
    for delta in (0.5, 0.1, 0.001):
        for t in ts:
            ref = float(radius_ref(t, delta))
            worst = max(worst, abs(sb.radius(t, delta) - ref) / ref)
            points += 1
    eq_err = abs(sb.radius(2, 0.5) - sb.radius(4, 0.5)) / sb.radius(2, 0.5)
    ok = worst <= 1e-12 and eq_err <= 1e-12 and points >= 1000
    _report("A4", ok, f"worst rel err={worst:.2e} over {points} points, "
                      f"boundary equality err={eq_err:.2e}")


def test_a5_concentration_bound():
    """Boundary-crossing frequency stays below pi^2 delta / 6 with 3-SE slack."""
    n = 10_000
    count, _ = sb.simulate_concentration_violation(1.0, 0.1, 4096, n,
                                                   seed=MASTER_SEED,
                                                   return_count=True)
    frac = count / n
    se = math.sqrt(max(frac * (1 - frac), 1e-12) / n)
    bound = sb.concentration_bound(0.1)
    ok = frac + 3 * se <= bound
    _report("A5", ok, f"fraction={frac:.4f} (+3se={frac + 3 * se:.4f}) "
                      f"<= bound={bound:.4f}")


def test_a6_hardness_profiles():
    """Hardness sums: exact negative value, 1e-9 relative positives, and the
    BAI identity on 50 random instances."""
    aw = sb.profile(make_instance(FamilySpec("AllWorse", 10)))
    uq = sb.profile(make_instance(FamilySpec("UniqueQualified", 5)))
    ok = aw.h1_neg == 320.0
    ok = ok and uq.h == pytest.approx(88.888888888888886, rel=1e-9)
    ok = ok and uq.h1_pos == pytest.approx(444.44444444444446, rel=1e-9)
    rs = np.random.RandomState(7)
    for _ in range(50):
        k = int(rs.randint(1, 9))
        means = tuple(float(m) for m in rs.uniform(0.0, 1.0, size=k))
        if max(means) == 0.5:
            continue
        p = sb.profile(sb.BanditInstance(means, 0.5, sb.NoiseModel.gaussian_unit()))
        if math.isfinite(p.h1_bai):
            ok = ok and p.h1_bai == pytest.approx(p.h + p.h1, rel=1e-12)
        else:
            ok = ok and p.h1_bai == p.h + p.h1
    _report("A6", ok, f"h1_neg={aw.h1_neg}, h={uq.h:.6f}, "
                      f"h1_pos={uq.h1_pos:.6f}, BAI identity on 50 instances")


def test_a7_lower_bound_consistency():
    """Measured SEE pulls dominate the change-of-measure lower bound."""
    s, _ = _cell("AllWorse", 10, 0.01, "SEE", 100)
    lb = sb.lower_bound_negative(make_instance(FamilySpec("AllWorse", 10)), 0.01)
    ok = s.mean_pulls >= lb
    _report("A7", ok, f"mean={s.mean_pulls:.1f} >= bound={lb:.1f}")


def test_a8_proportion_trend():
    """More qualified arms stop SEE sooner: chain of four families at K=20,
    each adjacent pair separated by two combined standard errors.  Uses the
    figure-replication preset (beta_k = 2^k / 4)."""
    cells = [_cell(f, 20, 0.01, "SEE", 200, preset="paper")[0] for f in
             ("AllGood", "HalfGood", "OneQuarter", "UniqueQualified")]
    seps = [_sep(cells[i], cells[i + 1]) for i in range(3)]
    detail = ", ".join(
        f"{c.family}={c.mean_pulls:.0f}({c.se_pulls:.0f})" for c in cells)
    ok = all(s >= 2.0 for s in seps)
    _report("A8", ok, f"{detail}; separations(SE)="
                      + ", ".join(f"{s:.1f}" for s in seps))


def test_a9_all_worse_benchmark_ordering():
    """SEE beats LUCB_G and HDoC on the negative family at K=50, under the
    figure-replication preset."""
    see, _ = _cell("AllWorse", 50, 0.01, "SEE", 200, preset="paper")
    lucb, _ = _cell("AllWorse", 50, 0.01, "LUCB_G", 200, preset="paper")
    hdoc, _ = _cell("AllWorse", 50, 0.01, "HDoC", 200, preset="paper")
    sep_lucb = _sep(see, lucb)
    sep_hdoc = _sep(see, hdoc)
    ok = sep_lucb >= 2.0 and sep_hdoc >= 2.0
    _report("A9", ok, f"SEE={see.mean_pulls:.0f} LUCB_G={lucb.mean_pulls:.0f} "
                      f"HDoC={hdoc.mean_pulls:.0f}; separations(SE)="
                      f"{sep_lucb:.1f}, {sep_hdoc:.1f}")


def test_a10_k_scaling():
    """Stopping time grows with K: the 40-vs-10 ratio within [2, 8], under
    the figure-replication preset."""
    means = {}
    for k in (10, 20, 40):
        s, _ = _cell("AllGood", k, 0.01, "SEE", 200, preset="paper")
        means[k] = s.mean_pulls
    ratio = means[40] / means[10]
    ok = 2.0 <= ratio <= 8.0
    _report("A10", ok, f"means={{10: {means[10]:.0f}, 20: {means[20]:.0f}, "
                       f"40: {means[40]:.0f}}}, ratio 40/10={ratio:.2f} "
                       f"(required [2, 8])")
