"""Runtime switches read from the environment.

``SBM_LAB_DISABLE_NUMBA=1`` forces the pure-numpy kernels even when numba is
importable. ``SBM_LAB_THREADS`` caps the worker count used by the sweep.
"""
import os


def _truthy(value):
    return value is not None and value.strip().lower() not in ("", "0", "false", "no")


def numba_disabled():
    return _truthy(os.environ.get("SBM_LAB_DISABLE_NUMBA"))


def max_threads():
    raw = os.environ.get("SBM_LAB_THREADS")
    if raw is None or not raw.strip():
        return os.cpu_count() or 1
    try:
        value = int(raw)
    except ValueError:
        raise ValueError(f"SBM_LAB_THREADS must be a positive integer, got {raw!r}")
    if value < 1:
        raise ValueError(f"SBM_LAB_THREADS must be a positive integer, got {raw!r}")
    return value
