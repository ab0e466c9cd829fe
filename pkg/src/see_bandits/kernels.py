"""Hot inner loops, compiled with numba unless the numpy backend is selected.

The kernel source is shared between the two backends (see ``_backend``), and
every kernel advances its own counter-based random stream, so results are
identical under either backend and under any degree of harness parallelism.

State conventions shared by the SEE kernels:

* ``nee``/``sums`` -- per-arm count and sum of the exploration history.
* ``net``/``sums_et`` -- same for the exploitation history.
* ``q_has``/``q_val`` -- the container: at most one parked sample per arm.
* ``counters`` -- int64[3]: total fresh exploration pulls, total exploitation
  pulls, container size.  Fresh pulls count the parked samples, so
  ``counters[2] + sum(nee) == counters[0]`` at every step.
"""

from __future__ import annotations

import math

import numpy as np

from ._backend import jit
from .rng import U64, next_gaussian, stream_gaussian_array

NOISE_CONSTANT = 0
NOISE_GAUSSIAN = 1

EXPLORE_NOT_COMPLETE = 0
EXPLORE_NONE = 1
EXPLORE_CANDIDATE = 2
EXPLORE_FORCED = 3

EXPLOIT_UNQUALIFIED = 0
EXPLOIT_QUALIFIED = 1
EXPLOIT_FORCED = 3

VERDICT_NONE = -1
VERDICT_FORCED = -2


@jit
def draw_reward(mean, noise_kind, sigma, s0, ctr):
    """One reward draw; constant noise consumes no stream words."""
    if noise_kind == NOISE_CONSTANT:
        return mean, ctr
    z, ctr = next_gaussian(s0, ctr)
    return mean + sigma * z, ctr


@jit
def ceil_log2_plus_kernel(t):
    """max(ceil(log2 t), 1) via bit scanning; exact at powers of two."""
    n = t - 1
    j = 0
    while n > 0:
        n >>= 1
        j += 1
    if j < 1:
        j = 1
    return j


@jit
def radius_kernel(t, delta):
    """Bracketed confidence radius sqrt(2 * 2^j * ln(2 j^2 / delta)) / t."""
    j = ceil_log2_plus_kernel(t)
    return math.sqrt(2.0 * (2.0 ** j) * math.log(2.0 * j * j / delta)) / t


@jit
def anytime_width_kernel(n, delta_arm):
    """Union-bound anytime width for 1-sub-Gaussian noise.

    Valid at every n simultaneously: the per-step failure probability is
    delta_arm / (2 n^2), summing below delta_arm over all n.
    """
    return math.sqrt(2.0 * math.log(4.0 * n * n / delta_arm) / n)


@jit
def explore_kernel(means, noise_kind, sigma, mu0, delta_k, c_widen, budget,
                   nee, sums, q_has, q_val, counters, forced_cap, s0, ctr,
                   debug_level, trace_arm, trace_val, trace_dt, trace_meta):
    """One exploration period; mutates the shared state arrays in place.

    Each iteration pulls the arm with the highest UCB (unvisited arms count
    as infinite, lowest index wins ties), takes the sample from the container
    when one is parked for that arm, then checks in order: forced cap, pull
    budget, all-UCBs-below-threshold, pulled-arm widened LCB above threshold.
    A candidate's last sample is moved from the history into the container so
    the next period starts with that arm's LCB back below the threshold.

    Returns (outcome, candidate_arm, new stream counter, violations), where
    violations counts accounting-identity failures seen under debug_level>=1.
    """
    k = means.shape[0]
    delta_arm = delta_k / k
    violations = 0
    outcome = EXPLORE_NOT_COMPLETE
    cand = -1
    while True:
        best = -1
        best_ucb = -math.inf
        for a in range(k):
            if nee[a] == 0:
                best = a
                break
            u = sums[a] / nee[a] + radius_kernel(nee[a], delta_arm)
            if u > best_ucb:
                best_ucb = u
                best = a
        a_t = best
        if q_has[a_t]:
            x = q_val[a_t]
            q_has[a_t] = False
            counters[2] -= 1
            dt = 0
        else:
            x, ctr = draw_reward(means[a_t], noise_kind, sigma, s0, ctr)
            dt = 1
            counters[0] += 1
        nee[a_t] += 1
        sums[a_t] += x
        t = counters[0]
        if debug_level >= 1:
            held = 0
            for a in range(k):
                held += nee[a]
            if counters[2] + held != t:
                violations += 1
        if debug_level >= 2:
            pos = trace_meta[0]
            if pos < trace_arm.shape[0]:
                trace_arm[pos] = a_t
                trace_val[pos] = x
                trace_dt[pos] = dt
                trace_meta[0] = pos + 1
        if counters[0] + counters[1] >= forced_cap:
            outcome = EXPLORE_FORCED
            break
        if t >= budget:
            outcome = EXPLORE_NOT_COMPLETE
            break
        all_below = True
        for a in range(k):
            if nee[a] == 0:
                all_below = False
                break
            if sums[a] / nee[a] + radius_kernel(nee[a], delta_arm) > mu0:
                all_below = False
                break
        if all_below:
            outcome = EXPLORE_NONE
            break
        if sums[a_t] / nee[a_t] - c_widen * radius_kernel(nee[a_t], delta_arm) > mu0:
            sums[a_t] -= x
            nee[a_t] -= 1
            q_val[a_t] = x
            q_has[a_t] = True
            counters[2] += 1
            outcome = EXPLORE_CANDIDATE
            cand = a_t
            break
    return outcome, cand, ctr, violations


@jit
def exploit_kernel(mean_arm, noise_kind, sigma, mu0, delta_scaled, budget,
                   arm, net, sums_et, counters, forced_cap, s0, ctr):
    """One exploitation period on ``arm``; budget compares the cumulative
    per-arm exploitation count under a strict guard, so the count never
    exceeds ceil(budget).  Returns (outcome, new stream counter)."""
    outcome = EXPLOIT_UNQUALIFIED
    while net[arm] < budget:
        x, ctr = draw_reward(mean_arm, noise_kind, sigma, s0, ctr)
        net[arm] += 1
        sums_et[arm] += x
        counters[1] += 1
        if counters[0] + counters[1] >= forced_cap:
            outcome = EXPLOIT_FORCED
            break
        if sums_et[arm] / net[arm] - radius_kernel(net[arm], delta_scaled) > mu0:
            outcome = EXPLOIT_QUALIFIED
            break
    return outcome, ctr


@jit
def lucb_g_kernel(means, noise_kind, sigma, mu0, delta, forced_cap, s0, ctr,
                  n, sums):
    """LUCB-style 1-identification: pull the highest UCB, answer with the
    pulled arm once its LCB clears the threshold, answer none once every
    UCB is at or below it.  Returns (verdict, total pulls, new counter)."""
    k = means.shape[0]
    delta_arm = delta / k
    verdict = VERDICT_FORCED
    total = 0
    while True:
        best = -1
        best_ucb = -math.inf
        for a in range(k):
            if n[a] == 0:
                best = a
                break
            u = sums[a] / n[a] + anytime_width_kernel(n[a], delta_arm)
            if u > best_ucb:
                best_ucb = u
                best = a
        x, ctr = draw_reward(means[best], noise_kind, sigma, s0, ctr)
        n[best] += 1
        sums[best] += x
        total += 1
        if total >= forced_cap:
            verdict = VERDICT_FORCED
            break
        if sums[best] / n[best] - anytime_width_kernel(n[best], delta_arm) > mu0:
            verdict = best
            break
        all_below = True
        for a in range(k):
            if n[a] == 0:
                all_below = False
                break
            if sums[a] / n[a] + anytime_width_kernel(n[a], delta_arm) > mu0:
                all_below = False
                break
        if all_below:
            verdict = VERDICT_NONE
            break
    return verdict, total, ctr


@jit
def hdoc_kernel(means, noise_kind, sigma, mu0, delta, warmup, use_lil,
                forced_cap, s0, ctr, n, sums):
    """HDoC-style 1-identification, optionally with a uniform warm-up and
    the bracketed LIL radius for the identification bounds (lilHDoC).

    Sampling uses the global-round bonus sqrt(2 ln t / n_a) over the arms
    still active; identification accepts on LCB > mu0 and deactivates arms
    whose UCB falls to or below mu0.  Returns (verdict, total, counter).
    """
    k = means.shape[0]
    delta_arm = delta / k
    active = np.ones(k, np.bool_)
    verdict = VERDICT_FORCED
    total = 0
    capped = False
    for _ in range(warmup):
        for a in range(k):
            x, ctr = draw_reward(means[a], noise_kind, sigma, s0, ctr)
            n[a] += 1
            sums[a] += x
            total += 1
            if total >= forced_cap:
                capped = True
                break
        if capped:
            break
    if not capped:
        done = False
        if warmup > 0:
            for a in range(k):
                if use_lil != 0:
                    w = radius_kernel(n[a], delta_arm)
                else:
                    w = anytime_width_kernel(n[a], delta_arm)
                if sums[a] / n[a] - w > mu0:
                    verdict = a
                    done = True
                    break
            if not done:
                alive = 0
                for a in range(k):
                    if use_lil != 0:
                        w = radius_kernel(n[a], delta_arm)
                    else:
                        w = anytime_width_kernel(n[a], delta_arm)
                    if sums[a] / n[a] + w <= mu0:
                        active[a] = False
                    else:
                        alive += 1
                if alive == 0:
                    verdict = VERDICT_NONE
                    done = True
        while not done:
            t_round = total + 1
            best = -1
            best_idx = -math.inf
            for a in range(k):
                if not active[a]:
                    continue
                if n[a] == 0:
                    best = a
                    break
                v = sums[a] / n[a] + math.sqrt(2.0 * math.log(t_round) / n[a])
                if v > best_idx:
                    best_idx = v
                    best = a
            x, ctr = draw_reward(means[best], noise_kind, sigma, s0, ctr)
            n[best] += 1
            sums[best] += x
            total += 1
            if total >= forced_cap:
                verdict = VERDICT_FORCED
                break
            if use_lil != 0:
                w = radius_kernel(n[best], delta_arm)
            else:
                w = anytime_width_kernel(n[best], delta_arm)
            if sums[best] / n[best] - w > mu0:
                verdict = best
                break
            if sums[best] / n[best] + w <= mu0:
                active[best] = False
                alive = 0
                for a in range(k):
                    if active[a]:
                        alive += 1
                if alive == 0:
                    verdict = VERDICT_NONE
                    break
    return verdict, total, ctr


@jit
def conc_violation_kernel(states, sigma, thresholds, horizon, flags):
    """Count paths whose running sum ever exceeds the bracketed boundary.

    ``states`` holds one derived stream state per path; ``thresholds[t]`` is
    the boundary at time t (index 0 unused).  Fills ``flags`` per path and
    returns the violation count.  Crossing is strict so the degenerate
    sigma=0 boundary (identically zero) is never crossed.
    """
    nviol = 0
    for i in range(states.shape[0]):
        s0 = states[i]
        ctr = U64(0)
        s = 0.0
        hit = False
        for t in range(1, horizon + 1):
            z, ctr = next_gaussian(s0, ctr)
            s += sigma * z
            if abs(s) > thresholds[t]:
                hit = True
                break
        flags[i] = hit
        if hit:
            nviol += 1
    return nviol


def conc_violation_vectorized(states, sigma, thresholds, horizon, flags):
    """Vectorised reference for :func:`conc_violation_kernel`.

    Same streams, same boundary, full-path evaluation instead of early
    exit; flags and count must agree with the kernel exactly.
    """
    nviol = 0
    for i in range(states.shape[0]):
        z = stream_gaussian_array(states[i], 0, horizon)
        path = np.cumsum(sigma * z)
        hit = bool(np.any(np.abs(path) > thresholds[1 : horizon + 1]))
        flags[i] = hit
        nviol += hit
    return nviol
