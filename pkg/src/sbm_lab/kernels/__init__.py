"""Hot loops, compiled with numba when available.

The active backend is picked once at import: numba unless it is missing or
``SBM_LAB_DISABLE_NUMBA`` is set. Both implementations stay importable as
``kernels.numpy_backend`` / ``kernels.numba_backend`` for cross-checks and the
benchmark.
"""
from .._config import numba_disabled
from . import _numpy as numpy_backend

try:
    from . import _numba as numba_backend
except ImportError:  # pragma: no cover - numba is a hard dependency in CI
    numba_backend = None

if numba_backend is not None and not numba_disabled():
    BACKEND = "numba"
    _active = numba_backend
else:
    BACKEND = "numpy"
    _active = numpy_backend

log_multiset_array = _active.log_multiset_array
entropy_sum = _active.entropy_sum
block_matrix = _active.block_matrix
floyd_subset = _active.floyd_subset
stars_to_counts = _active.stars_to_counts
block_counts_batch = _active.block_counts_batch
hill_climb = _active.hill_climb

__all__ = [
    "BACKEND",
    "numpy_backend",
    "numba_backend",
    "log_multiset_array",
    "entropy_sum",
    "block_matrix",
    "floyd_subset",
    "stars_to_counts",
    "block_counts_batch",
    "hill_climb",
]
