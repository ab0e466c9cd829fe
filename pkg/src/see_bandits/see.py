"""The SEE algorithm: phase loop, exploration, exploitation, container.

Each phase k runs an exploration period at tolerance delta_k under a pull
budget T_k^ee; a candidate arm is then exploited at the target tolerance
under a per-arm budget T_k^et.  A candidate's last exploration sample is
parked in a per-arm container and handed back on that arm's next exploration
pull, so per-arm sample indices stay consecutive across phases.  Exploration
histories are shared between phases, as are exploitation histories; the two
never share samples (disjoint random streams).
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass, field
from typing import NamedTuple

import numpy as np

from . import kernels
from .core import BanditInstance, RunRecord, correct_answers
from .rng import (
    PURPOSE_EXPLOITATION,
    PURPOSE_EXPLORATION,
    RandomStream,
)

_SCHEDULE_CHECK_PHASES = 64


@dataclass(frozen=True)
class SeeConfig:
    """Tunables: LCB widening factor C > 1, the three phase schedules
    delta_k = delta_base^k, alpha_k = alpha_base^k,
    beta_k = beta_scale * beta_base^k, the budget coefficient, and the
    forced-stop cap.

    The schedule must satisfy: beta at least doubles each phase, delta_k
    strictly decreases to 0, alpha_k strictly increases, and
    sum_k 1/alpha_k <= 1/4; checked numerically over the first 64 phases.
    """

    c_widen: float = 1.01
    delta_base: float = 1.0 / 3.0
    alpha_base: float = 5.0
    beta_base: float = 2.0
    beta_scale: float = 1.0
    budget_coeff: float = 1000.0
    forced_cap: int = 10 ** 8

    def __post_init__(self):
        if not self.c_widen > 1.0:
            raise ValueError("C must be > 1")
        if not 0.0 < self.delta_base < 1.0:
            raise ValueError("delta_base must lie in (0, 1)")
        if not self.alpha_base > 1.0:
            raise ValueError("alpha_base must be > 1")
        if not (self.beta_base > 1.0 and self.beta_scale > 0.0):
            raise ValueError("beta schedule must be positive and growing")
        if not self.budget_coeff > 0.0:
            raise ValueError("budget_coeff must be positive")
        if self.forced_cap < 1:
            raise ValueError("forced_cap must be >= 1")
        alpha_sum = 0.0
        prev_beta = prev_alpha = None
        prev_delta = 1.0
        for k in range(1, _SCHEDULE_CHECK_PHASES + 1):
            beta_k = self.beta_scale * self.beta_base ** k
            alpha_k = self.alpha_base ** k
            delta_k = self.delta_base ** k
            if prev_beta is not None and beta_k < 2.0 * prev_beta:
                raise ValueError("schedule requires beta_{k+1} >= 2 beta_k")
            if prev_alpha is not None and alpha_k <= prev_alpha:
                raise ValueError("schedule requires alpha_k strictly increasing")
            if delta_k >= prev_delta:
                raise ValueError("schedule requires delta_k strictly decreasing")
            prev_beta, prev_alpha, prev_delta = beta_k, alpha_k, delta_k
            alpha_sum += 1.0 / alpha_k
        # the default base 5 sits exactly at the 1/4 boundary; tolerate the
        # float accumulation error of the partial sum
        if alpha_sum > 0.25 + 1e-9:
            raise ValueError("schedule requires sum_k 1/alpha_k <= 1/4")

    @classmethod
    def paper_preset(cls, forced_cap: int = 10 ** 8) -> "SeeConfig":
        """The experimental setting: beta_k = 2^k / 4, C = 1.01."""
        return cls(beta_scale=0.25, forced_cap=forced_cap)


class PhaseSchedule(NamedTuple):
    delta_k: float
    alpha_k: float
    beta_k: float
    t_ee: float
    t_et: float
    clamped: bool


def schedule(k: int, n_arms: int, delta: float, cfg: SeeConfig) -> PhaseSchedule:
    """Phase-k tolerances and real-valued pull budgets.

    T_k^ee = coeff (C+1)^2 K beta_k ln(4K/delta_k) bounds total exploration
    pulls; T_k^et = coeff beta_k ln(4 alpha_k K / delta) bounds the
    candidate's cumulative exploitation pulls.  Budgets beyond the forced cap
    are clamped (the run force-stops before they could bind).
    """
    if k < 1 or n_arms < 1:
        raise ValueError("phase and arm count must be >= 1")
    if not 0.0 < delta < 1.0:
        raise ValueError("delta must lie in (0, 1)")
    delta_k = cfg.delta_base ** k
    alpha_k = cfg.alpha_base ** k
    beta_k = cfg.beta_scale * cfg.beta_base ** k
    t_ee = (cfg.budget_coeff * (cfg.c_widen + 1.0) ** 2 * n_arms * beta_k
            * math.log(4.0 * n_arms / delta_k))
    t_et = cfg.budget_coeff * beta_k * math.log(4.0 * alpha_k * n_arms / delta)
    cap = float(cfg.forced_cap)
    clamped = False
    if not t_ee <= cap:
        t_ee = cap
        clamped = True
    if not t_et <= cap:
        t_et = cap
        clamped = True
    return PhaseSchedule(delta_k, alpha_k, beta_k, t_ee, t_et, clamped)


@dataclass
class SeeState:
    """Shared per-trial state: exploration/exploitation histories as
    (count, sum) sufficient statistics, the container, pull counters, and
    the phase index."""

    n_arms: int
    nee: np.ndarray = field(init=False)
    sums_ee: np.ndarray = field(init=False)
    net: np.ndarray = field(init=False)
    sums_et: np.ndarray = field(init=False)
    q_has: np.ndarray = field(init=False)
    q_val: np.ndarray = field(init=False)
    counters: np.ndarray = field(init=False)
    phase: int = 0

    def __post_init__(self):
        k = self.n_arms
        self.nee = np.zeros(k, dtype=np.int64)
        self.sums_ee = np.zeros(k, dtype=np.float64)
        self.net = np.zeros(k, dtype=np.int64)
        self.sums_et = np.zeros(k, dtype=np.float64)
        self.q_has = np.zeros(k, dtype=np.bool_)
        self.q_val = np.zeros(k, dtype=np.float64)
        self.counters = np.zeros(3, dtype=np.int64)

    @property
    def tau_ee(self) -> int:
        return int(self.counters[0])

    @property
    def tau_et(self) -> int:
        return int(self.counters[1])

    @property
    def q_size(self) -> int:
        return int(self.counters[2])

    def container(self) -> dict:
        return {a: float(self.q_val[a]) for a in range(self.n_arms) if self.q_has[a]}


@dataclass
class ExplorationOutcome:
    """Result of one exploration period: a candidate arm, a none answer, an
    exhausted budget, or a forced stop; plus fresh pulls consumed."""

    kind: str
    arm: int | None
    pulls: int


_EXPLORE_KINDS = {
    kernels.EXPLORE_NOT_COMPLETE: "not_complete",
    kernels.EXPLORE_NONE: "none",
    kernels.EXPLORE_CANDIDATE: "candidate",
    kernels.EXPLORE_FORCED: "forced",
}

_EMPTY_I8 = np.empty(0, dtype=np.int64)
_EMPTY_F8 = np.empty(0, dtype=np.float64)


def sample_with_container(arm: int, state: SeeState, instance: BanditInstance,
                          stream: RandomStream):
    """The container-aware sampling rule.

    Returns (value, delta_t): a parked sample for ``arm`` is consumed with
    delta_t = 0, otherwise a fresh draw is taken with delta_t = 1 and the
    fresh-pull counter advances.
    """
    if not 0 <= arm < instance.k:
        raise IndexError(f"arm {arm} out of range")
    if state.q_has[arm]:
        x = float(state.q_val[arm])
        state.q_has[arm] = False
        state.counters[2] -= 1
        return x, 0
    from .core import sample as draw
    x = draw(instance, arm, stream)
    state.counters[0] += 1
    return x, 1


def explore(state: SeeState, mu0: float, delta_k: float, c_widen: float,
            budget: float, instance: BanditInstance, stream: RandomStream,
            forced_cap: int = 10 ** 8, debug_level: int = 0,
            trace: "ExplorationTrace | None" = None) -> ExplorationOutcome:
    """Run one exploration period against the shared state."""
    pulls_before = state.tau_ee
    if trace is not None:
        debug_level = max(debug_level, 2)
        t_arm, t_val, t_dt, t_meta = trace.buffers()
    else:
        t_arm, t_val, t_dt = _EMPTY_I8, _EMPTY_F8, _EMPTY_I8
        t_meta = np.zeros(1, dtype=np.int64)
    outcome, cand, ctr, violations = kernels.explore_kernel(
        instance.means_array(), instance.noise.kind_code, instance.noise.sigma,
        float(mu0), float(delta_k), float(c_widen), float(budget),
        state.nee, state.sums_ee, state.q_has, state.q_val, state.counters,
        int(forced_cap), stream.state, np.uint64(stream.counter),
        int(debug_level), t_arm, t_val, t_dt, t_meta)
    stream.advance_to(int(ctr))
    if trace is not None:
        trace.commit(int(t_meta[0]))
    if violations:
        raise AssertionError(
            f"exploration accounting violated {violations} times: "
            "|Q| + |H^ee| != tau_ee")
    kind = _EXPLORE_KINDS[int(outcome)]
    arm = int(cand) if kind == "candidate" else None
    return ExplorationOutcome(kind, arm, state.tau_ee - pulls_before)


def exploit(state: SeeState, arm: int, mu0: float, delta: float,
            alpha_k: float, budget: float, instance: BanditInstance,
            stream: RandomStream, forced_cap: int = 10 ** 8) -> str:
    """Run one exploitation period on ``arm``; returns ``"qualified"``,
    ``"unqualified"``, or ``"forced"``."""
    if not 0 <= arm < instance.k:
        raise IndexError(f"arm {arm} out of range")
    delta_scaled = delta / (instance.k * alpha_k)
    outcome, ctr = kernels.exploit_kernel(
        instance.means[arm], instance.noise.kind_code, instance.noise.sigma,
        float(mu0), float(delta_scaled), float(budget), int(arm),
        state.net, state.sums_et, state.counters, int(forced_cap),
        stream.state, np.uint64(stream.counter))
    stream.advance_to(int(ctr))
    if outcome == kernels.EXPLOIT_QUALIFIED:
        return "qualified"
    if outcome == kernels.EXPLOIT_FORCED:
        return "forced"
    return "unqualified"


class ExplorationTrace:
    """Debug-only event log of exploration deliveries (arm, value, delta_t)."""

    def __init__(self, capacity: int = 1 << 20):
        self.arm = np.full(capacity, -1, dtype=np.int64)
        self.val = np.zeros(capacity, dtype=np.float64)
        self.dt = np.zeros(capacity, dtype=np.int64)
        self._meta = np.zeros(1, dtype=np.int64)
        self.length = 0

    def buffers(self):
        self._meta[0] = self.length
        return self.arm, self.val, self.dt, self._meta

    def commit(self, new_length: int):
        self.length = new_length

    def events(self):
        return [(int(self.arm[i]), float(self.val[i]), int(self.dt[i]))
                for i in range(self.length)]


@dataclass
class SeeDebugInfo:
    """Phase-end budget audit trail collected when running with debug on."""

    budget_violations: int = 0
    phase_budgets: list = field(default_factory=list)
    trace: ExplorationTrace | None = None
    phase_marks: list = field(default_factory=list)


def _finish_record(instance, state, verdict, forced, seed, started, phases):
    elapsed = time.perf_counter() - started
    correct = (not forced) and (verdict in correct_answers(instance))
    return RunRecord(
        verdict=None if forced else verdict,
        forced_stop=forced,
        correct=correct,
        pulls_total=state.tau_ee + state.tau_et,
        pulls_ee=state.tau_ee,
        pulls_et=state.tau_et,
        per_arm_ee=[int(v) for v in state.nee],
        per_arm_et=[int(v) for v in state.net],
        phases=phases,
        seed=seed,
        wall_time=elapsed,
    )


def run_see(instance: BanditInstance, delta: float, cfg: SeeConfig, seed: int,
            debug: bool = False, _debug_info: SeeDebugInfo | None = None) -> RunRecord:
    """One SEE trial.

    Phases run until an exploitation period certifies a candidate
    (verdict: that arm), an exploration period answers none at a phase with
    delta_k < delta/3 (verdict: none), or total pulls reach the forced cap.
    Deterministic in (instance, delta, cfg, seed).
    """
    if not 0.0 < delta < 1.0:
        raise ValueError("delta must lie in (0, 1)")
    started = time.perf_counter()
    k = instance.k
    state = SeeState(k)
    ee_stream = RandomStream(seed, 0, PURPOSE_EXPLORATION)
    et_stream = RandomStream(seed, 0, PURPOSE_EXPLOITATION)
    debug_level = 1 if debug else 0
    trace = _debug_info.trace if _debug_info is not None else None

    sum_t_et_ceil = 0.0
    phase = 0
    while True:
        phase += 1
        state.phase = phase
        sched = schedule(phase, k, delta, cfg)
        sum_t_et_ceil += math.ceil(sched.t_et)
        outcome = explore(state, instance.threshold, sched.delta_k,
                          cfg.c_widen, sched.t_ee, instance, ee_stream,
                          forced_cap=cfg.forced_cap, debug_level=debug_level,
                          trace=trace)
        if _debug_info is not None:
            _debug_info.phase_marks.append(
                (phase, "explore", outcome.kind, state.tau_ee, trace.length if trace else 0))
        if outcome.kind == "forced":
            return _finish_record(instance, state, None, True, seed, started, phase)
        result = None
        if outcome.kind == "candidate":
            result = exploit(state, outcome.arm, instance.threshold, delta,
                             sched.alpha_k, sched.t_et, instance, et_stream,
                             forced_cap=cfg.forced_cap)
            if _debug_info is not None:
                _debug_info.phase_marks.append(
                    (phase, "exploit", result, state.tau_et, 0))
            if result == "forced":
                return _finish_record(instance, state, None, True, seed, started, phase)
        if debug or _debug_info is not None:
            # budgets are real-valued; the loops stop at the first integer
            # crossing, so the certain phase-end bounds carry a ceiling
            ok_ee = state.tau_ee <= math.ceil(sched.t_ee)
            ok_et = state.tau_et <= sum_t_et_ceil
            if _debug_info is not None:
                _debug_info.phase_budgets.append(
                    (phase, state.tau_ee, sched.t_ee, state.tau_et, sum_t_et_ceil))
                if not (ok_ee and ok_et):
                    _debug_info.budget_violations += 1
            elif not (ok_ee and ok_et):
                raise AssertionError(f"phase {phase} budget certainty violated")
        if result == "qualified":
            return _finish_record(instance, state, outcome.arm, False,
                                  seed, started, phase)
        if outcome.kind == "none" and sched.delta_k < delta / 3.0:
            return _finish_record(instance, state, None, False, seed, started, phase)


def run_see_debug(instance: BanditInstance, delta: float, cfg: SeeConfig,
                  seed: int, with_trace: bool = False):
    """Run SEE with invariant checking; returns (record, debug info)."""
    info = SeeDebugInfo(trace=ExplorationTrace() if with_trace else None)
    record = run_see(instance, delta, cfg, seed, debug=True, _debug_info=info)
    return record, info
