"""Experiment orchestration: instance families, trial sweeps, statistics, CSV.

Six instance families with unit-variance Gaussian noise, a threshold of 0.5
and a gap of 0.15 by default.  Sweeps run independent trials per
(family, K, delta, algorithm) cell; every trial's random streams are derived
from (master seed, cell, trial index), so output is a deterministic function
of the sweep spec regardless of worker count or execution order.

Forced-stop trials are excluded from mean/SE pull statistics but reported in
their own count, and they are never counted as correct; ``error_count``
counts completed trials whose verdict is wrong.  Standard errors use the
n-1 sample-variance convention.
"""

from __future__ import annotations

import csv
import hashlib
import math
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .baselines import BaselineConfig, run_hdoc, run_lil_hdoc, run_lucb_g
from .core import BanditInstance, NoiseModel, RunRecord, classify
from .hardness import (
    lower_bound_negative,
    lower_bound_positive_delta,
    lower_bound_positive_free,
    profile,
)
from .rng import mix64, _as_u64, U64
from .see import SeeConfig, run_see

FAMILIES = ("AllWorse", "UniqueQualified", "OneQuarter", "HalfGood",
            "AllGood", "Linear")
ALGOS = ("SEE", "LUCB_G", "HDoC", "lilHDoC")

SUMMARY_FIELDS = ("family", "K", "delta", "algo", "trials", "mean_pulls",
                  "se_pulls", "error_count", "forced_stop_count")
TRIAL_FIELDS = ("family", "K", "delta", "algo", "trial", "seed", "verdict",
                "correct", "pulls_total", "pulls_ee", "pulls_et", "phases",
                "forced_stop")


@dataclass(frozen=True)
class FamilySpec:
    """One instance family at a given arm count."""

    family: str
    k: int
    mu0: float = 0.5
    gap: float = 0.15

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise ValueError(f"unknown family {self.family!r}; "
                             f"choose from {', '.join(FAMILIES)}")
        if self.k < 1:
            raise ValueError("K must be >= 1")
        if self.family == "Linear" and self.k < 2:
            raise ValueError("Linear requires K >= 2")


def make_instance(spec: FamilySpec) -> BanditInstance:
    """The exact mean vector of the family, with unit Gaussian noise.

    AllWorse pins every mean at 0.25; the qualified families place
    mu0 + gap on the first ceil-free block of arms and mu0 on the rest;
    Linear spaces means evenly across [mu0 - gap, mu0 + gap] (an odd K puts
    one arm exactly at mu0, which is legal while the best arm clears it).
    """
    k, mu0, gap = spec.k, spec.mu0, spec.gap
    if spec.family == "AllWorse":
        means = [0.25] * k
    elif spec.family == "UniqueQualified":
        means = [mu0 + gap] + [mu0] * (k - 1)
    elif spec.family == "OneQuarter":
        good = k // 4
        means = [mu0 + gap] * good + [mu0] * (k - good)
    elif spec.family == "HalfGood":
        good = k // 2
        means = [mu0 + gap] * good + [mu0] * (k - good)
    elif spec.family == "AllGood":
        means = [mu0 + gap] * k
    else:  # Linear
        # factored so the endpoints land exactly on mu0 -/+ gap
        means = [mu0 + gap * (2.0 * i / (k - 1) - 1.0) for i in range(k)]
    return BanditInstance(tuple(means), mu0, NoiseModel.gaussian_unit(),
                          label=f"{spec.family}-K{k}")


def qualified_fraction(spec: FamilySpec) -> float:
    """Fraction of arms strictly above the threshold; orders families on the
    proportion axis."""
    inst = make_instance(spec)
    return sum(1 for m in inst.means if m > inst.threshold) / spec.k


def derive_trial_seed(master_seed: int, cell_key: str, trial: int) -> int:
    """Per-trial 64-bit seed from (master seed, cell identity, trial index).

    The cell identity is hashed with sha256 so the value is stable across
    platforms and process boundaries.
    """
    digest = hashlib.sha256(cell_key.encode("utf-8")).digest()
    cell64 = int.from_bytes(digest[:8], "big")
    with np.errstate(over="ignore"):
        s = mix64(_as_u64(master_seed) ^ _as_u64(cell64))
        s = mix64(s + _as_u64(trial) * U64(0x9E3779B97F4A7C15))
    return int(s)


@dataclass(frozen=True)
class SweepSpec:
    """A grid of (family, K, delta, algo) cells with a trial budget."""

    families: tuple
    ks: tuple
    deltas: tuple
    algos: tuple
    trials: int
    master_seed: int
    forced_cap: int = 10 ** 8
    preset: str = "default"
    mu0: float = 0.5
    gap: float = 0.15

    def __post_init__(self):
        if self.trials < 1:
            raise ValueError("trials must be >= 1")
        for d in self.deltas:
            if not 0.0 < d < 1.0:
                raise ValueError("all deltas must lie in (0, 1)")
        for a in self.algos:
            if a not in ALGOS:
                raise ValueError(f"unknown algo {a!r}; choose from {', '.join(ALGOS)}")
        if self.preset not in ("default", "paper"):
            raise ValueError("preset must be 'default' or 'paper'")

    def cells(self):
        for family in self.families:
            for k in self.ks:
                for delta in self.deltas:
                    for algo in self.algos:
                        yield family, k, delta, algo


def see_config_for(preset: str, forced_cap: int) -> SeeConfig:
    if preset == "paper":
        return SeeConfig.paper_preset(forced_cap=forced_cap)
    return SeeConfig(forced_cap=forced_cap)


def run_trial(instance: BanditInstance, algo: str, delta: float, seed: int,
              see_cfg: SeeConfig, base_cfg: BaselineConfig) -> RunRecord:
    """One trial of one algorithm; dispatch point for the sweep."""
    if algo == "SEE":
        return run_see(instance, delta, see_cfg, seed)
    if algo == "LUCB_G":
        return run_lucb_g(instance, delta, base_cfg, seed)
    if algo == "HDoC":
        return run_hdoc(instance, delta, base_cfg, seed)
    if algo == "lilHDoC":
        return run_lil_hdoc(instance, delta, base_cfg, seed)
    raise ValueError(f"unknown algo {algo!r}")


@dataclass
class SummaryRow:
    """Per-cell statistics; mean/SE cover completed trials only."""

    family: str
    k: int
    delta: float
    algo: str
    trials: int
    mean_pulls: float
    se_pulls: float
    error_count: int
    forced_stop_count: int
    degenerate_se: bool = field(default=False, compare=False)

    def csv_values(self):
        return (self.family, str(self.k), repr(self.delta), self.algo,
                str(self.trials), repr(self.mean_pulls), repr(self.se_pulls),
                str(self.error_count), str(self.forced_stop_count))


def summarize(records: list, family: str = "", k: int = 0, delta: float = 0.0,
              algo: str = "") -> SummaryRow:
    """Mean and standard error of total pulls, plus error/forced counts.

    SE = sample standard deviation (n-1 denominator) / sqrt(n); a single
    completed trial reports SE 0 with the degenerate flag set.
    """
    if not records:
        raise ValueError("summarize needs at least one record")
    completed = [r for r in records if not r.forced_stop]
    forced = len(records) - len(completed)
    errors = sum(1 for r in completed if not r.correct)
    degenerate = False
    if not completed:
        mean = math.nan
        se = math.nan
        degenerate = True
    else:
        pulls = [r.pulls_total for r in completed]
        n = len(pulls)
        mean = sum(pulls) / n
        if n == 1:
            se = 0.0
            degenerate = True
        else:
            var = sum((p - mean) ** 2 for p in pulls) / (n - 1)
            se = math.sqrt(var / n)
    return SummaryRow(family, k, delta, algo, len(records), mean, se,
                      errors, forced, degenerate)


def run_cell(family: str, k: int, delta: float, algo: str, trials: int,
             master_seed: int, forced_cap: int, preset: str = "default",
             mu0: float = 0.5, gap: float = 0.15, workers: int = 1):
    """All trials of one cell; returns (records, seeds) in trial order."""
    spec = FamilySpec(family, k, mu0, gap)
    instance = make_instance(spec)
    see_cfg = see_config_for(preset, forced_cap)
    base_cfg = BaselineConfig(algo=algo, forced_cap=forced_cap)
    cell_key = f"{family},{k},{delta!r},{algo}"
    seeds = [derive_trial_seed(master_seed, cell_key, t) for t in range(trials)]

    def one(seed):
        return run_trial(instance, algo, delta, seed, see_cfg, base_cfg)

    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            records = list(pool.map(one, seeds))
    else:
        records = [one(s) for s in seeds]
    return records, seeds


def run_sweep(spec: SweepSpec, out_path=None, per_trial_path=None,
              workers: int = 1):
    """Run every cell of the sweep; returns summary rows and optionally
    writes the summary and per-trial CSVs.

    A cell whose trials raise is aborted and reported as a zero-trial
    diagnostic row (nan statistics) with the failure on stderr; the rest of
    the sweep continues.
    """
    summary_rows = []
    trial_rows = []
    for family, k, delta, algo in spec.cells():
        try:
            records, seeds = run_cell(family, k, delta, algo, spec.trials,
                                      spec.master_seed, spec.forced_cap,
                                      spec.preset, spec.mu0, spec.gap, workers)
        except Exception as err:  # pragma: no cover - defensive path
            print(f"sweep cell ({family}, K={k}, delta={delta}, {algo}) "
                  f"aborted: {err}", file=sys.stderr)
            summary_rows.append(SummaryRow(family, k, delta, algo, 0,
                                           math.nan, math.nan, 0, 0,
                                           degenerate_se=True))
            continue
        summary_rows.append(summarize(records, family, k, delta, algo))
        if per_trial_path is not None:
            for t, (rec, seed) in enumerate(zip(records, seeds)):
                trial_rows.append((family, str(k), repr(delta), algo, str(t),
                                   str(seed), rec.verdict_token(),
                                   str(int(rec.correct)), str(rec.pulls_total),
                                   str(rec.pulls_ee), str(rec.pulls_et),
                                   str(rec.phases), str(int(rec.forced_stop))))
    if out_path is not None:
        write_summary_csv(out_path, summary_rows)
    if per_trial_path is not None:
        _write_rows(per_trial_path, TRIAL_FIELDS, trial_rows)
    return summary_rows


def _write_rows(path, header, rows):
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(header)
        writer.writerows(rows)


def write_summary_csv(path, rows):
    _write_rows(path, SUMMARY_FIELDS, [r.csv_values() for r in rows])


def hardness_csv_row(spec: FamilySpec):
    """Header and row for the hardness CLI output."""
    prof = profile(make_instance(spec))
    header = ("family", "K", "h", "h1", "h0", "h1_neg", "h1_low", "h1_pos",
              "h1_bai")
    vals = prof.as_dict()
    row = (spec.family, str(spec.k)) + tuple(repr(vals[c]) for c in header[2:])
    return header, row


def bounds_csv_row(spec: FamilySpec, delta: float):
    """Header and row for the lower-bound CLI output.

    Inapplicable bounds (wrong instance sign) are left empty.
    """
    inst = make_instance(spec)
    sign = classify(inst)
    lb_neg = lb_pos = lb_free = ""
    free_ok = ""
    if sign == "negative":
        lb_neg = repr(lower_bound_negative(inst, delta))
    else:
        lb_pos = repr(lower_bound_positive_delta(inst, delta))
        free = lower_bound_positive_free(inst)
        lb_free = repr(free.value)
        free_ok = str(int(free.hypothesis_met))
    header = ("family", "K", "delta", "classification", "lb_negative",
              "lb_positive_delta", "lb_positive_free", "free_hypothesis_met")
    row = (spec.family, str(spec.k), repr(delta), sign, lb_neg, lb_pos,
           lb_free, free_ok)
    return header, row


def parse_sweep_file(path) -> SweepSpec:
    """Parse the flat key=value sweep spec format.

    Keys: families, Ks, deltas, algos (comma-separated lists), trials, seed,
    cap, preset, mu0, gap.  Blank lines and #-comments are ignored.
    """
    values = {}
    with open(path) as fh:
        for lineno, raw in enumerate(fh, 1):
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            if "=" not in line:
                raise ValueError(f"{path}:{lineno}: expected key=value")
            key, _, val = line.partition("=")
            values[key.strip()] = val.strip()
    try:
        families = tuple(s.strip() for s in values["families"].split(","))
        ks = tuple(int(s) for s in values["Ks"].split(","))
        deltas = tuple(float(s) for s in values["deltas"].split(","))
        algos = tuple(s.strip() for s in values["algos"].split(","))
        trials = int(values["trials"])
        seed = int(values["seed"])
    except KeyError as missing:
        raise ValueError(f"sweep spec missing required key {missing}") from None
    return SweepSpec(
        families=families, ks=ks, deltas=deltas, algos=algos, trials=trials,
        master_seed=seed,
        forced_cap=int(values.get("cap", 10 ** 8)),
        preset=values.get("preset", "default"),
        mu0=float(values.get("mu0", 0.5)),
        gap=float(values.get("gap", 0.15)),
    )
