"""The bracketed LIL-style confidence radius and its concentration validator.

The radius at sample count t is

    U(t, delta) = sqrt(2 * 2^j * ln(2 j^2 / delta)) / t,   j = max(ceil(log2 t), 1)

with natural logarithms throughout.  The bracket exponent j is computed with
integer bit operations so budgets and stop times never shift across a power
of two due to floating-point log error.  The validator estimates, by Monte
Carlo, the probability that a zero-mean sub-Gaussian partial-sum path ever
crosses this boundary; the union bound caps that probability at
pi^2 * delta / 6.
"""

from __future__ import annotations

import math

import numpy as np

from ._backend import NUMBA_ENABLED
from . import kernels
from .rng import PURPOSE_CONCENTRATION, derive_state, _as_u64

CONCENTRATION_BOUND_FACTOR = math.pi ** 2 / 6.0


def ceil_log2_plus(t: int) -> int:
    """max(ceil(log2 t), 1) for integer t >= 1, computed exactly."""
    t = int(t)
    if t < 1:
        raise ValueError("t must be >= 1")
    return max((t - 1).bit_length(), 1)


def radius(t: int, delta: float) -> float:
    """The confidence radius U(t, delta); strictly positive.

    Decreasing in t (with equality allowed at bracket boundaries for
    delta <= 1/2) and strictly decreasing in delta for fixed t.
    """
    t = int(t)
    if t < 1:
        raise ValueError("t must be >= 1")
    if not 0.0 < delta < 1.0:
        raise ValueError("delta must lie in (0, 1)")
    return kernels.radius_kernel(t, delta)


def crossing_boundary(sigma: float, delta: float, horizon: int) -> np.ndarray:
    """Boundary b[t] = sqrt(2 sigma^2 2^j ln(2 j^2 / delta)) for t = 1..horizon.

    Index 0 is unused.  Equals ``t * sigma * radius(t, delta)`` when sigma=1.
    """
    b = np.zeros(horizon + 1, dtype=np.float64)
    for t in range(1, horizon + 1):
        j = ceil_log2_plus(t)
        b[t] = math.sqrt(2.0 * sigma * sigma * (2.0 ** j) * math.log(2.0 * j * j / delta))
    return b


def concentration_bound(delta: float) -> float:
    """The union-bound crossing probability pi^2 * delta / 6."""
    return CONCENTRATION_BOUND_FACTOR * delta


def simulate_concentration_violation(
    sigma: float,
    delta: float,
    horizon: int,
    sequences: int,
    seed: int,
    return_count: bool = False,
):
    """Fraction of simulated paths that ever cross the bracketed boundary.

    Draws ``sequences`` i.i.d. zero-mean Gaussian(sigma^2) paths of length
    ``horizon`` from per-sequence derived streams and checks the boundary at
    every step.  With delta <- delta_k / K schedules this also exercises the
    phase-index concentration events driving SEE's analysis.
    """
    if not 0.0 < delta < 1.0:
        raise ValueError("delta must lie in (0, 1)")
    if horizon < 2:
        raise ValueError("horizon must be >= 2")
    if sequences < 1:
        raise ValueError("sequences must be >= 1")
    if sigma < 0.0:
        raise ValueError("sigma must be >= 0")

    thresholds = crossing_boundary(sigma, delta, horizon)
    states = np.empty(sequences, dtype=np.uint64)
    for i in range(sequences):
        states[i] = derive_state(_as_u64(seed), _as_u64(i), _as_u64(PURPOSE_CONCENTRATION))
    flags = np.zeros(sequences, dtype=np.bool_)
    if NUMBA_ENABLED:
        count = kernels.conc_violation_kernel(states, float(sigma), thresholds,
                                              int(horizon), flags)
    else:
        count = kernels.conc_violation_vectorized(states, float(sigma), thresholds,
                                                  int(horizon), flags)
    if return_count:
        return int(count), flags
    return count / sequences
