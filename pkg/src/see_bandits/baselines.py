"""Benchmark 1-identification algorithms: LUCB_G, HDoC, lilHDoC.

The source descriptions of these algorithms leave the confidence widths
unstated, so this module fixes a single convention: identification bounds
use the anytime union-bound width

    W(n, delta') = sqrt(2 * ln(4 n^2 / delta') / n),   delta' = delta / K,

which is delta-PAC for 1-sub-Gaussian rewards (per-step failure probability
delta'/(2 n^2), summable below delta' over all n, union-bounded over arms).
lilHDoC instead uses the bracketed LIL radius for identification, which is
its defining feature.  HDoC samples by the global-round exploration bonus
sqrt(2 ln t / n); LUCB_G samples by its own per-arm-count UCB.

HDoC removes an arm once its identification UCB falls to or below the
threshold; removal conventions vary across sources and this one follows the
description under which a removed qualified arm explains the algorithms'
lack of a finite worst-case expected stopping time.
"""

from __future__ import annotations

import time
from dataclasses import dataclass

import numpy as np

from . import kernels
from .core import BanditInstance, RunRecord, correct_answers
from .rng import PURPOSE_BASELINE, RandomStream


@dataclass(frozen=True)
class BaselineConfig:
    """Baseline tunables: uniform warm-up length (lilHDoC only) and the
    forced-stop cap."""

    algo: str | None = None
    warmup_pulls: int = 200
    forced_cap: int = 10 ** 8

    def __post_init__(self):
        if self.warmup_pulls < 1:
            raise ValueError("warmup_pulls must be >= 1")
        if self.forced_cap < 1:
            raise ValueError("forced_cap must be >= 1")


def anytime_width(n: int, delta_arm: float) -> float:
    """The identification width W(n, delta'); see the module docstring."""
    if n < 1:
        raise ValueError("n must be >= 1")
    if not 0.0 < delta_arm < 1.0:
        raise ValueError("delta_arm must lie in (0, 1)")
    return kernels.anytime_width_kernel(int(n), float(delta_arm))


def _baseline_record(instance, verdict, total, n, seed, started):
    forced = verdict == kernels.VERDICT_FORCED
    answer = None if verdict < 0 else int(verdict)
    correct = (not forced) and (answer in correct_answers(instance))
    return RunRecord(
        verdict=None if forced else answer,
        forced_stop=forced,
        correct=correct,
        pulls_total=int(total),
        pulls_ee=int(total),
        pulls_et=0,
        per_arm_ee=[int(v) for v in n],
        per_arm_et=[0] * instance.k,
        phases=1,
        seed=seed,
        wall_time=time.perf_counter() - started,
    )


def run_lucb_g(instance: BanditInstance, delta: float, cfg: BaselineConfig,
               seed: int) -> RunRecord:
    """LUCB_G: pull the highest-UCB arm; answer it once its LCB clears the
    threshold; answer none once every arm's UCB is at or below it."""
    if not 0.0 < delta < 1.0:
        raise ValueError("delta must lie in (0, 1)")
    started = time.perf_counter()
    stream = RandomStream(seed, 0, PURPOSE_BASELINE)
    n = np.zeros(instance.k, dtype=np.int64)
    sums = np.zeros(instance.k, dtype=np.float64)
    verdict, total, ctr = kernels.lucb_g_kernel(
        instance.means_array(), instance.noise.kind_code, instance.noise.sigma,
        instance.threshold, float(delta), int(cfg.forced_cap),
        stream.state, np.uint64(stream.counter), n, sums)
    stream.advance_to(int(ctr))
    return _baseline_record(instance, verdict, total, n, seed, started)


def _run_hdoc_family(instance, delta, cfg, seed, warmup, use_lil):
    started = time.perf_counter()
    stream = RandomStream(seed, 0, PURPOSE_BASELINE)
    n = np.zeros(instance.k, dtype=np.int64)
    sums = np.zeros(instance.k, dtype=np.float64)
    verdict, total, ctr = kernels.hdoc_kernel(
        instance.means_array(), instance.noise.kind_code, instance.noise.sigma,
        instance.threshold, float(delta), int(warmup), int(use_lil),
        int(cfg.forced_cap), stream.state, np.uint64(stream.counter), n, sums)
    stream.advance_to(int(ctr))
    return _baseline_record(instance, verdict, total, n, seed, started)


def run_hdoc(instance: BanditInstance, delta: float, cfg: BaselineConfig,
             seed: int) -> RunRecord:
    """HDoC: exploration-bonus sampling, anytime identification bounds,
    removal of arms whose UCB drops to the threshold."""
    if not 0.0 < delta < 1.0:
        raise ValueError("delta must lie in (0, 1)")
    return _run_hdoc_family(instance, delta, cfg, seed, warmup=0, use_lil=0)


def run_lil_hdoc(instance: BanditInstance, delta: float, cfg: BaselineConfig,
                 seed: int) -> RunRecord:
    """lilHDoC: uniform warm-up, then HDoC with the bracketed LIL radius for
    identification.  Accept/removal checks run on the warmed-up bounds before
    any further pull."""
    if not 0.0 < delta < 1.0:
        raise ValueError("delta must lie in (0, 1)")
    return _run_hdoc_family(instance, delta, cfg, seed,
                            warmup=cfg.warmup_pulls, use_lil=1)
