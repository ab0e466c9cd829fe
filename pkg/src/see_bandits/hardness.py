"""Problem-hardness quantities and closed-form lower-bound evaluators.

The seven inverse-squared-gap sums are defined over means sorted in
descending order (mu_1 >= ... >= mu_K); callers may pass unsorted instances
since hardness is an oracle-side annotation.  Zero gaps yield +inf
componentwise rather than being clamped: an infinite H0, for example, is the
honest value when some qualified arm sits exactly at the threshold.

The lower bounds return the explicit constants from their change-of-measure
proofs, not tight values; the suboptimal-arm bound additionally holds only
for sufficiently small top gaps and small delta, so it is reported as a
regime-conditional annotation without enforcing that regime.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple

from .core import BanditInstance, classify

# Constants from the suboptimal-arm change-of-measure proof.
M2_SUBOPTIMAL = 1536
M1_SUBOPTIMAL = 8 * M2_SUBOPTIMAL


def _inv_sq(gap: float) -> float:
    """2 / gap^2, +inf at a zero (or squared-to-zero subnormal) gap."""
    g2 = gap * gap
    if g2 == 0.0:
        return math.inf
    return 2.0 / g2


@dataclass(frozen=True)
class HardnessProfile:
    """The seven hardness sums for one instance (extended reals)."""

    h: float
    h1: float
    h0: float
    h1_neg: float
    h1_low: float
    h1_pos: float
    h1_bai: float

    def as_dict(self) -> dict:
        return {
            "h": self.h, "h1": self.h1, "h0": self.h0, "h1_neg": self.h1_neg,
            "h1_low": self.h1_low, "h1_pos": self.h1_pos, "h1_bai": self.h1_bai,
        }


def profile(instance: BanditInstance) -> HardnessProfile:
    """Evaluate all seven hardness quantities exactly."""
    mu0 = instance.threshold
    mu = sorted(instance.means, reverse=True)
    k = len(mu)
    gap0 = [abs(m - mu0) for m in mu]
    gap1 = [abs(mu[0] - m) for m in mu]

    h = _inv_sq(gap0[0])
    h1 = sum(_inv_sq(gap1[a]) for a in range(1, k))
    h0 = sum(_inv_sq(gap0[a]) for a in range(k) if mu[a] >= mu0)
    h1_neg = sum(_inv_sq(gap0[a]) for a in range(k))
    h1_low = sum(_inv_sq(gap1[a]) for a in range(k) if mu[a] < mu0)
    h1_pos = sum(_inv_sq(max(gap0[a], gap1[a])) for a in range(k))
    h1_bai = h + h1
    return HardnessProfile(h, h1, h0, h1_neg, h1_low, h1_pos, h1_bai)


def kl_bernoulli(delta: float) -> float:
    """kl(delta, 1-delta): symmetric under delta <-> 1-delta, zero at 1/2."""
    if not 0.0 < delta < 1.0:
        raise ValueError("delta must lie in (0, 1)")
    return (delta * math.log(delta / (1.0 - delta))
            + (1.0 - delta) * math.log((1.0 - delta) / delta))


def lower_bound_negative(instance: BanditInstance, delta: float) -> float:
    """Expected-pulls lower bound kl(delta,1-delta) * H_1^neg for any
    delta-PAC algorithm on a negative instance."""
    if classify(instance) != "negative":
        raise ValueError("negative-instance bound requires a negative instance")
    return kl_bernoulli(delta) * profile(instance).h1_neg


def lower_bound_positive_delta(instance: BanditInstance, delta: float) -> float:
    """Expected-pulls lower bound 2 kl(delta,1-delta) / gap(0,1)^2 on a
    positive instance (the delta-dependent part)."""
    if classify(instance) != "positive":
        raise ValueError("positive-instance bound requires a positive instance")
    mu = sorted(instance.means, reverse=True)
    gap = mu[0] - instance.threshold
    return 2.0 * kl_bernoulli(delta) / (gap * gap)


class FreeBound(NamedTuple):
    value: float
    hypothesis_met: bool


def lower_bound_positive_free(instance: BanditInstance) -> FreeBound:
    """Permutation-worst-case delta-independent bound
    max(0, (1/64) (-1/gap(1,2)^2 + sum_{a>=3} 1/gap(1,a)^2)).

    Requires a unique qualified arm (mu_1 > mu_0 >= mu_2); otherwise returns
    0 with ``hypothesis_met=False``.  Annotation only.
    """
    mu = sorted(instance.means, reverse=True)
    mu0 = instance.threshold
    hypothesis = len(mu) >= 1 and mu[0] > mu0 and (len(mu) == 1 or mu0 >= mu[1])
    if not hypothesis or len(mu) < 2:
        return FreeBound(0.0, hypothesis)
    total = -1.0 / (mu[0] - mu[1]) ** 2 if mu[0] != mu[1] else -math.inf
    for a in range(2, len(mu)):
        gap = mu[0] - mu[a]
        total += math.inf if gap == 0.0 else 1.0 / (gap * gap)
    return FreeBound(max(0.0, total / 64.0), True)


def lower_bound_suboptimal_pulls(instance: BanditInstance, arm: int) -> float:
    """Regime-conditional per-arm bound ln(1/gap(0,1)^2) / (M1 gap(1,a)^2)
    on the expected pulls of an unqualified arm.

    The underlying result holds only for sufficiently small top gaps and
    delta < 1/e^8; validity of that regime is not enforced here.
    """
    if not 0 <= arm < instance.k:
        raise IndexError(f"arm {arm} out of range")
    if classify(instance) != "positive":
        raise ValueError("suboptimal-arm bound requires a positive instance")
    mu0 = instance.threshold
    means = instance.means
    best = max(range(instance.k), key=lambda a: means[a])
    qualified = [a for a in range(instance.k) if means[a] >= mu0]
    if qualified != [best]:
        raise ValueError("bound requires a unique qualified arm")
    if arm == best:
        raise ValueError("bound applies to unqualified arms only")
    gap01 = means[best] - mu0
    gap1a = means[best] - means[arm]
    if gap1a == 0.0:
        return math.inf
    return math.log(1.0 / (gap01 * gap01)) / (M1_SUBOPTIMAL * gap1a * gap1a)
