"""Backend selection: numba-jitted kernels by default, pure numpy/Python otherwise.

Set ``SEE_BANDITS_BACKEND=numpy`` (or ``python`` / ``0`` / ``off``) to disable
JIT compilation and run the same kernel source as plain Python.  The fallback
is bit-identical to the jitted path; it exists for debugging, for platforms
without numba, and for the ``bench`` subcommand that compares the two.
"""

from __future__ import annotations

import functools
import os

import numpy as np

_env = os.environ.get("SEE_BANDITS_BACKEND", "numba").strip().lower()
NUMBA_ENABLED = _env not in {"numpy", "python", "none", "0", "off", "false"}

if NUMBA_ENABLED:
    try:
        from numba import njit as _njit
    except ImportError:  # pragma: no cover - numba is a hard dependency
        NUMBA_ENABLED = False

BACKEND_NAME = "numba" if NUMBA_ENABLED else "numpy"


def jit(func):
    """Compile ``func`` with numba, or wrap it for the pure-Python path.

    The kernels do wrapping uint64 arithmetic; numpy emits RuntimeWarnings for
    scalar integer overflow, so the fallback wrapper silences exactly that.
    Results are unaffected (uint64 wraps identically under both backends).
    """
    if NUMBA_ENABLED:
        return _njit(cache=True, nogil=True)(func)

    @functools.wraps(func)
    def wrapper(*args, **kwargs):
        with np.errstate(over="ignore"):
            return func(*args, **kwargs)

    wrapper.py_func = func
    return wrapper


def py_func(jitted):
    """Return the undecorated Python function behind a kernel."""
    return jitted.py_func
