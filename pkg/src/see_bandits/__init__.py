"""Fixed-confidence 1-identification for multi-armed bandits.

Decide whether any arm's mean reward reaches a known threshold: the SEE
algorithm with its phase schedules and sample container, the LUCB_G / HDoC /
lilHDoC benchmarks, hardness and lower-bound calculators, and a reproducible
Monte-Carlo experiment harness with a CLI.
"""

from ._backend import BACKEND_NAME, NUMBA_ENABLED
from .baselines import BaselineConfig, run_hdoc, run_lil_hdoc, run_lucb_g
from .confidence import (
    ceil_log2_plus,
    concentration_bound,
    radius,
    simulate_concentration_violation,
)
from .core import (
    BanditInstance,
    NoiseModel,
    RunRecord,
    classify,
    correct_answers,
    sample,
)
from .hardness import (
    HardnessProfile,
    kl_bernoulli,
    lower_bound_negative,
    lower_bound_positive_delta,
    lower_bound_positive_free,
    lower_bound_suboptimal_pulls,
    profile,
)
from .harness import (
    FamilySpec,
    SummaryRow,
    SweepSpec,
    make_instance,
    run_sweep,
    summarize,
)
from .rng import RandomStream
from .see import (
    ExplorationOutcome,
    PhaseSchedule,
    SeeConfig,
    SeeState,
    explore,
    exploit,
    run_see,
    run_see_debug,
    sample_with_container,
    schedule,
)

__version__ = "0.1.0"

__all__ = [
    "BACKEND_NAME", "NUMBA_ENABLED", "BanditInstance", "NoiseModel",
    "RunRecord", "classify", "correct_answers", "sample", "RandomStream",
    "ceil_log2_plus", "radius", "concentration_bound",
    "simulate_concentration_violation", "SeeConfig", "SeeState",
    "PhaseSchedule", "ExplorationOutcome", "schedule", "explore", "exploit",
    "sample_with_container", "run_see", "run_see_debug", "BaselineConfig",
    "run_lucb_g", "run_hdoc", "run_lil_hdoc", "HardnessProfile", "profile",
    "kl_bernoulli", "lower_bound_negative", "lower_bound_positive_delta",
    "lower_bound_positive_free", "lower_bound_suboptimal_pulls",
    "FamilySpec", "SweepSpec", "SummaryRow", "make_instance", "run_sweep",
    "summarize",
]
