"""Deterministic counter-based random streams.

Every stochastic component of this package draws from a splitmix64 stream
addressed by ``(seed, stream index, purpose)``.  The n-th raw word of a stream
is ``mix64(s0 + n * GOLDEN)`` where ``s0`` is the derived stream state, so a
stream is a pure function of its address: identical addresses give identical
draw sequences regardless of thread scheduling, trial execution order, or
backend (jitted vs pure Python), and the whole sequence can also be produced
vectorised for array workloads.

Gaussians use Box-Muller with a fixed parity: every gaussian consumes exactly
two uniforms and returns the cosine branch.  No state is cached between
draws, which keeps the uniform-to-gaussian mapping position-independent.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from ._backend import jit

U64 = np.uint64
_MASK = U64(0xFFFFFFFFFFFFFFFF)
_GOLDEN = U64(0x9E3779B97F4A7C15)
_MIX1 = U64(0xBF58476D1CE4E5B9)
_MIX2 = U64(0x94D049BB133111EB)
_SALT_INDEX = U64(0xD6E8FEB86659FD93)
_SALT_PURPOSE = U64(0xA5A3564887F4B3C5)

_INV_2_53 = 2.0 ** -53
_TWO_PI = 2.0 * math.pi

# Purpose tags for stream derivation.  SEE's exploitation samples are
# independent of exploration because the two purposes address disjoint
# streams; baselines use a third tag.
PURPOSE_EXPLORATION = 1
PURPOSE_EXPLOITATION = 2
PURPOSE_BASELINE = 3
PURPOSE_CONCENTRATION = 4


@jit
def mix64(z):
    """splitmix64 finalizer: a 64-bit bijective mix."""
    # entry cast: numba promotes mixed int64/uint64 arithmetic to float64,
    # so every argument is pinned to uint64 before any arithmetic
    z = U64(z)
    z = (z ^ (z >> U64(30))) * _MIX1
    z = (z ^ (z >> U64(27))) * _MIX2
    return z ^ (z >> U64(31))


@jit
def derive_state(seed, index, purpose):
    """Derive the initial state of stream ``(seed, index, purpose)``."""
    s = mix64(U64(seed) + _GOLDEN)
    s = mix64(s ^ (U64(index) + _SALT_INDEX))
    s = mix64(s ^ (U64(purpose) + _SALT_PURPOSE))
    return s


@jit
def next_u64(s0, ctr):
    """Word ``ctr + 1`` of the stream; returns (word, new counter)."""
    ctr = U64(ctr) + U64(1)
    return mix64(U64(s0) + ctr * _GOLDEN), ctr


@jit
def next_uniform(s0, ctr):
    """Uniform double in (0, 1]; returns (value, new counter)."""
    x, ctr = next_u64(s0, ctr)
    return float((x >> U64(11)) + U64(1)) * _INV_2_53, ctr


@jit
def next_gaussian(s0, ctr):
    """Standard normal via Box-Muller; consumes exactly two uniforms."""
    u1, ctr = next_uniform(s0, ctr)
    u2, ctr = next_uniform(s0, ctr)
    return math.sqrt(-2.0 * math.log(u1)) * math.cos(_TWO_PI * u2), ctr


def stream_u64_array(s0, start_ctr, n):
    """Words ``start_ctr+1 .. start_ctr+n`` of a stream, vectorised.

    Bit-identical to ``n`` successive :func:`next_u64` calls.
    """
    idx = np.arange(int(start_ctr) + 1, int(start_ctr) + int(n) + 1, dtype=np.uint64)
    z = U64(s0) + idx * _GOLDEN
    z = (z ^ (z >> U64(30))) * _MIX1
    z = (z ^ (z >> U64(27))) * _MIX2
    return z ^ (z >> U64(31))


def stream_uniform_array(s0, start_ctr, n):
    x = stream_u64_array(s0, start_ctr, n)
    return ((x >> U64(11)) + U64(1)).astype(np.float64) * _INV_2_53


def stream_gaussian_array(s0, start_ctr, n):
    """``n`` standard normals, consuming ``2n`` stream words.

    The uniforms match the scalar path bit-for-bit; numpy's vectorised
    log/cos may round differently from libm in the last ulp, so the
    gaussians agree with :func:`next_gaussian` to 1 ulp rather than exactly.
    """
    u = stream_uniform_array(s0, start_ctr, 2 * int(n))
    return np.sqrt(-2.0 * np.log(u[0::2])) * np.cos(_TWO_PI * u[1::2])


def _as_u64(value):
    return U64(int(value) & 0xFFFFFFFFFFFFFFFF)


@dataclass
class RandomStream:
    """A deterministic stream addressed by (seed, trial index, purpose).

    Identical addresses yield identical draw sequences; the counter is the
    only mutable state.
    """

    seed: int
    index: int = 0
    purpose: int = PURPOSE_BASELINE
    _state: np.uint64 = field(init=False, repr=False)
    _counter: np.uint64 = field(init=False, repr=False)

    def __post_init__(self):
        # jitted functions hand uint64 results back as Python ints; keep the
        # state a numpy scalar so kernel argument typing stays uint64
        self._state = _as_u64(derive_state(
            _as_u64(self.seed), _as_u64(self.index), _as_u64(self.purpose)
        ))
        self._counter = U64(0)

    @property
    def state(self) -> np.uint64:
        return self._state

    @property
    def counter(self) -> int:
        return int(self._counter)

    def next_u64(self) -> int:
        with np.errstate(over="ignore"):
            x, ctr = next_u64(self._state, self._counter)
        self._counter = _as_u64(ctr)
        return int(x)

    def next_uniform(self) -> float:
        with np.errstate(over="ignore"):
            u, ctr = next_uniform(self._state, self._counter)
        self._counter = _as_u64(ctr)
        return u

    def next_gaussian(self) -> float:
        with np.errstate(over="ignore"):
            z, ctr = next_gaussian(self._state, self._counter)
        self._counter = _as_u64(ctr)
        return z

    def advance_to(self, counter: int) -> None:
        """Used by kernel wrappers to sync the counter after a bulk call."""
        self._counter = _as_u64(counter)
