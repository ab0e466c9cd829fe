"""Benchmark the jitted kernels against the pure-Python/numpy fallback.

The backend is fixed at import time by ``SEE_BANDITS_BACKEND``, so the other
backend is timed in a subprocess running this same module.
"""

from __future__ import annotations

import json
import os
import subprocess
import sys
import time

from ._backend import BACKEND_NAME
from .confidence import simulate_concentration_violation
from .harness import FamilySpec, make_instance, see_config_for
from .see import run_see


def _workload(trials: int, paths: int):
    """A fixed mixed workload: SEE trials plus the concentration simulator."""
    instance = make_instance(FamilySpec("UniqueQualified", 5))
    cfg = see_config_for("default", 10 ** 8)
    # warm-up excludes jit compilation / cache loading from the timings
    run_see(instance, 0.1, cfg, seed=1)
    simulate_concentration_violation(1.0, 0.1, 64, 8, seed=1)
    t0 = time.perf_counter()
    pulls = 0
    for t in range(trials):
        pulls += run_see(instance, 0.1, cfg, seed=1000 + t).pulls_total
    see_s = time.perf_counter() - t0
    t0 = time.perf_counter()
    frac = simulate_concentration_violation(1.0, 0.1, 1024, paths, seed=7)
    conc_s = time.perf_counter() - t0
    return {"backend": BACKEND_NAME, "see_trials": trials, "see_pulls": pulls,
            "see_seconds": see_s, "conc_paths": paths,
            "conc_fraction": frac, "conc_seconds": conc_s}


def _other_backend_result(trials: int, paths: int):
    env = dict(os.environ)
    env["SEE_BANDITS_BACKEND"] = "numpy" if BACKEND_NAME == "numba" else "numba"
    out = subprocess.run(
        [sys.executable, "-m", "see_bandits.bench", str(trials), str(paths)],
        env=env, capture_output=True, text=True, check=True)
    return json.loads(out.stdout.strip().splitlines()[-1])


def run_benchmark(trials: int = 20, paths: int = 2000, compare: bool = True,
                  out=sys.stdout):
    """Time both backends on the same seeded workload and print a table."""
    mine = _workload(trials, paths)
    results = [mine]
    if compare:
        results.append(_other_backend_result(trials, paths))
    print(f"{'backend':>8} {'see_trials':>10} {'see_s':>10} "
          f"{'conc_paths':>10} {'conc_s':>10}", file=out)
    for r in results:
        print(f"{r['backend']:>8} {r['see_trials']:>10} "
              f"{r['see_seconds']:>10.3f} {r['conc_paths']:>10} "
              f"{r['conc_seconds']:>10.3f}", file=out)
    if compare:
        a, b = results
        if a["see_pulls"] != b["see_pulls"] or a["conc_fraction"] != b["conc_fraction"]:
            print("warning: backends disagreed on workload results", file=out)
        else:
            print("backends agree on all workload outputs", file=out)
    return results


if __name__ == "__main__":
    n_trials = int(sys.argv[1]) if len(sys.argv) > 1 else 20
    n_paths = int(sys.argv[2]) if len(sys.argv) > 2 else 2000
    print(json.dumps(_workload(n_trials, n_paths)))
