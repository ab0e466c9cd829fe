"""Ground-truth bandit instances, reward sampling, and run outcome records.

Arms are indexed from 0.  A verdict is either an arm index (``int``), the
no-qualified-arm answer (``None``), or a forced stop, recorded separately on
:class:`RunRecord` because a capped run carries no answer.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .rng import RandomStream

NOISE_CONSTANT = 0
NOISE_GAUSSIAN = 1


@dataclass(frozen=True)
class NoiseModel:
    """Per-instance reward noise; every variant is 1-sub-Gaussian.

    ``kind`` is ``"constant"`` (zero noise) or ``"gaussian"`` with
    ``0 < sigma <= 1``.
    """

    kind: str = "gaussian"
    sigma: float = 1.0

    def __post_init__(self):
        if self.kind not in ("constant", "gaussian"):
            raise ValueError(f"unknown noise kind {self.kind!r}")
        if self.kind == "constant":
            object.__setattr__(self, "sigma", 0.0)
        else:
            if not (0.0 < self.sigma <= 1.0):
                raise ValueError("gaussian noise requires 0 < sigma <= 1")

    @classmethod
    def gaussian_unit(cls) -> "NoiseModel":
        return cls("gaussian", 1.0)

    @classmethod
    def gaussian_scaled(cls, sigma: float) -> "NoiseModel":
        return cls("gaussian", sigma)

    @classmethod
    def constant(cls) -> "NoiseModel":
        return cls("constant", 0.0)

    @property
    def kind_code(self) -> int:
        return NOISE_CONSTANT if self.kind == "constant" else NOISE_GAUSSIAN


@dataclass(frozen=True)
class BanditInstance:
    """An instance: true per-arm means, the known threshold, and noise.

    The best mean must differ from the threshold; equality lies outside the
    model and is rejected at construction so it cannot surface later as a
    silent non-terminating run.
    """

    means: tuple
    threshold: float
    noise: NoiseModel = field(default_factory=NoiseModel.gaussian_unit)
    label: str = ""

    def __post_init__(self):
        means = tuple(float(m) for m in self.means)
        object.__setattr__(self, "means", means)
        if len(means) == 0:
            raise ValueError("instance needs at least one arm")
        if not all(math.isfinite(m) for m in means):
            raise ValueError("arm means must be finite")
        if not math.isfinite(self.threshold):
            raise ValueError("threshold must be finite")
        if max(means) == self.threshold:
            raise ValueError(
                "max(means) == threshold lies outside the model; "
                "the instance must be strictly positive or strictly negative"
            )

    @property
    def k(self) -> int:
        return len(self.means)

    def means_array(self) -> np.ndarray:
        return np.asarray(self.means, dtype=np.float64)


def classify(instance: BanditInstance) -> str:
    """``"positive"`` iff some mean exceeds the threshold, else ``"negative"``."""
    return "positive" if max(instance.means) > instance.threshold else "negative"


def correct_answers(instance: BanditInstance) -> set:
    """The set of acceptable verdicts for ``instance``.

    Positive instances accept any arm whose mean is at or above the
    threshold; negative instances accept only ``None``.
    """
    if classify(instance) == "positive":
        return {a for a, m in enumerate(instance.means) if m >= instance.threshold}
    return {None}


def sample(instance: BanditInstance, arm: int, stream: RandomStream) -> float:
    """One reward draw from the given arm, advancing ``stream``."""
    if not 0 <= arm < instance.k:
        raise IndexError(f"arm {arm} out of range for K={instance.k}")
    mean = instance.means[arm]
    if instance.noise.kind_code == NOISE_CONSTANT:
        return mean
    return mean + instance.noise.sigma * stream.next_gaussian()


@dataclass
class RunRecord:
    """Outcome of one trial of any algorithm in this package.

    ``verdict`` is an arm index or ``None``; when ``forced_stop`` is set the
    run was cut off at the pull cap and ``verdict`` is meaningless.  For SEE,
    ``pulls_ee``/``pulls_et`` split total pulls into exploration and
    exploitation; baselines put everything in ``pulls_ee``.  ``per_arm_ee``
    counts only samples currently in the exploration history, so
    ``pulls_ee - sum(per_arm_ee)`` equals the container size at termination.
    """

    verdict: int | None
    forced_stop: bool
    correct: bool
    pulls_total: int
    pulls_ee: int
    pulls_et: int
    per_arm_ee: list
    per_arm_et: list
    phases: int
    seed: int
    wall_time: float = field(compare=False)

    def verdict_token(self) -> str:
        if self.forced_stop:
            return "forced"
        if self.verdict is None:
            return "none"
        return str(self.verdict)
