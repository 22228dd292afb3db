"""Sampling multigraphs from the microcanonical ensemble.

``sample_uniform`` draws every member of the ensemble with equal probability:
each block pair's edges form a stars-and-bars arrangement, a uniform
``M``-subset of ``positions + M - 1`` slots picked with Floyd's algorithm.
``sample_iid`` drops each edge on an independent uniform node pair instead,
which is multinomial rather than flat over the ensemble.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import kernels
from .graph import MultiGraph, Partition, SbmModel

_MASK64 = (1 << 64) - 1
_GOLDEN = 0x9E3779B97F4A7C15


def splitmix64(x: int) -> int:
    x = (x + _GOLDEN) & _MASK64
    x = ((x ^ (x >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
    x = ((x ^ (x >> 27)) * 0x94D049BB133111EB) & _MASK64
    return x ^ (x >> 31)


def derive_seed(master: int, index: int) -> int:
    """Per-task 64-bit seed.

    ``splitmix64(master + index * 0x9E3779B97F4A7C15 mod 2**64)``. The
    finaliser is a bijection, so distinct indices below 2**64 never collide.
    """
    if master < 0 or index < 0:
        raise ValueError("seeds and indices are unsigned")
    return splitmix64((master + index * _GOLDEN) & _MASK64)


def derive_seeds(master: int, indices) -> np.ndarray:
    """Vectorised :func:`derive_seed` returning ``uint64``."""
    idx = np.asarray(indices, dtype=np.uint64)
    with np.errstate(over="ignore"):
        x = np.uint64(master & _MASK64) + idx * np.uint64(_GOLDEN) + np.uint64(_GOLDEN)
        x = (x ^ (x >> np.uint64(30))) * np.uint64(0xBF58476D1CE4E5B9)
        x = (x ^ (x >> np.uint64(27))) * np.uint64(0x94D049BB133111EB)
        return x ^ (x >> np.uint64(31))


@dataclass(frozen=True)
class SeedSpec:
    master_seed: int
    task_index: int = 0

    @property
    def seed(self) -> int:
        return derive_seed(self.master_seed, self.task_index)

    def rng(self) -> np.random.Generator:
        return np.random.Generator(np.random.PCG64(self.seed))


def _as_rng(seed) -> np.random.Generator:
    if isinstance(seed, SeedSpec):
        return seed.rng()
    if isinstance(seed, np.random.Generator):
        return seed
    return SeedSpec(int(seed)).rng()


def floyd_draws(rng: np.random.Generator, n_slots: int, m: int, size=None) -> np.ndarray:
    """Random integers feeding Floyd's subset selection: entry t is uniform on [0, n_slots - m + t]."""
    highs = np.arange(n_slots - m + 1, n_slots + 1, dtype=np.int64)
    shape = (m,) if size is None else (size, m)
    return rng.integers(0, highs, size=shape, dtype=np.int64)


def uniform_block_counts(rng: np.random.Generator, positions: int, m: int) -> np.ndarray:
    """Multiplicities over ``positions`` slots, uniform over all multisets of size ``m``."""
    if m == 0:
        return np.zeros(positions, dtype=np.int64)
    stars = kernels.floyd_subset(positions + m - 1, floyd_draws(rng, positions + m - 1, m))
    return kernels.stars_to_counts(stars, positions)


def uniform_block_counts_batch(rng: np.random.Generator, positions: int, m: int,
                               n_draws: int, chunk: int = 100_000) -> np.ndarray:
    """``n_draws`` independent rows of :func:`uniform_block_counts`."""
    if m == 0:
        return np.zeros((n_draws, positions), dtype=np.int64)
    out = np.empty((n_draws, positions), dtype=np.int64)
    for start in range(0, n_draws, chunk):
        stop = min(start + chunk, n_draws)
        draws = floyd_draws(rng, positions + m - 1, m, size=stop - start)
        out[start:stop] = kernels.block_counts_batch(positions, draws)
    return out


def iid_block_counts(rng: np.random.Generator, positions: int, m: int) -> np.ndarray:
    if m == 0:
        return np.zeros(positions, dtype=np.int64)
    return np.bincount(rng.integers(0, positions, size=m), minlength=positions)


def _sample(model: SbmModel, seed, partition, block_sampler) -> MultiGraph:
    partition = model.partition() if partition is None else partition
    if not np.array_equal(partition.sizes, model.sizes):
        raise ValueError("partition block sizes do not match the model")
    rng = _as_rng(seed)
    members = [partition.members(b) for b in range(model.p)]
    W = np.zeros((model.n, model.n), dtype=np.int64)
    for a in range(model.p):
        for b in range(model.p):
            m = int(model.M[a, b])
            if m == 0:
                continue
            sa, sb = members[a].shape[0], members[b].shape[0]
            counts = block_sampler(rng, sa * sb, m).reshape(sa, sb)
            W[np.ix_(members[a], members[b])] = counts
    return MultiGraph(W)


def sample_uniform(model: SbmModel, seed, partition: Partition | None = None) -> MultiGraph:
    """Uniform draw from the ensemble of ``model``.

    ``partition`` defaults to contiguous blocks of ``model.sizes``. ``seed`` is
    a :class:`SeedSpec`, an integer master seed, or a numpy Generator.
    """
    return _sample(model, seed, partition, uniform_block_counts)


def sample_iid(model: SbmModel, seed, partition: Partition | None = None) -> MultiGraph:
    """Each edge lands on an independent uniform node pair of its block pair."""
    return _sample(model, seed, partition, iid_block_counts)


SAMPLERS = {"uniform": sample_uniform, "iid": sample_iid}
