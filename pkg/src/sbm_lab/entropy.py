"""Microcanonical entropy, likelihood and pairwise partition comparison.

All values are in nats. The entropy of a block model is the log of the
number of multigraphs it can generate, which is a sum over ordered block
pairs of log multiset coefficients.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import kernels
from .graph import MultiGraph, Partition, SbmModel, build_block_matrix, is_member

DEFAULT_TOLERANCE = 1e-9


def log_multiset(positions, edges):
    """ln C(positions + edges - 1, edges) via log-gamma.

    Accepts scalars or arrays; ``edges`` may be real (gamma continuation).
    """
    pos = np.asarray(positions, dtype=np.float64)
    m = np.asarray(edges, dtype=np.float64)
    if (pos < 0).any() or (m < 0).any():
        raise ValueError("positions and edges must be non-negative")
    if ((pos == 0) & (m > 0)).any():
        raise ValueError("cannot place edges on zero positions")
    out = kernels.log_multiset_array(pos, m)
    if out.ndim == 0:
        return float(out)
    return out


def log_multiset_exact(positions: int, edges: int) -> float:
    """Big-integer reference; slow, for tests and spot checks."""
    if edges == 0:
        return 0.0
    return math.log(math.comb(positions + edges - 1, edges))


def model_entropy(model: SbmModel) -> float:
    return kernels.entropy_sum(model.sizes, model.M)


def partition_entropy(graph: MultiGraph, partition: Partition) -> float:
    return kernels.entropy_sum(partition.sizes, build_block_matrix(graph, partition))


def log_likelihood(graph: MultiGraph, model: SbmModel, partition: Partition) -> float:
    """ln P[G | C, M] under the flat distribution; ``-inf`` outside the ensemble."""
    if not is_member(graph, model, partition):
        return -math.inf
    return -model_entropy(model)


@dataclass(frozen=True)
class ComparisonResult:
    winner: str  # "first", "second" or "tie"
    delta: float  # S_first - S_second
    tolerance: float


def classify(delta: float, tolerance: float = DEFAULT_TOLERANCE) -> str:
    if abs(delta) <= tolerance:
        return "tie"
    return "first" if delta < 0 else "second"


def compare_partitions(graph: MultiGraph, first: Partition, second: Partition,
                       tolerance: float = DEFAULT_TOLERANCE) -> ComparisonResult:
    """Pick the lower-entropy partition; differences within ``tolerance`` tie."""
    if tolerance < 0:
        raise ValueError("tolerance must be non-negative")
    delta = partition_entropy(graph, first) - partition_entropy(graph, second)
    return ComparisonResult(classify(delta, tolerance), delta, tolerance)
